#include "orbitframes/spectral_constructors.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace orbitframes {

namespace {

inline constexpr double kMaxRieszCondition = 1e6;

void check_coefficients(const ZeroSequence<double>& zeros, const std::vector<Complex>& coeffs) {
  if (zeros.empty()) throw InputError("at least one zero is required");
  if (coeffs.size() != zeros.size()) throw InputError("need exactly one coefficient per zero");
}

std::pair<double, double> comparability_constants(const ZeroSequence<double>& zeros, const VectorXcd& c) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    const double ratio = std::norm(c(static_cast<Eigen::Index>(j))) / (1.0 - std::norm(zeros[j]));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

VectorXcd to_vector(const std::vector<Complex>& v) {
  return Eigen::Map<const VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

MatrixXcd diagonal_of(const ZeroSequence<double>& zeros) {
  return to_vector(zeros.values()).asDiagonal();
}

std::pair<double, double> gram_extremes(const MatrixXcd& columns) {
  const VectorXd ev = hermitian_eigenvalues(columns.adjoint() * columns);
  return {ev(0), ev(ev.size() - 1)};
}

void require_certifiable(const NormalOrbitSpec& spec) {
  if (!spec.Delta || spec.delta <= 0.0) {
    throw CertificateError("zeros are not uniformly separated (delta = 0)");
  }
  if (!(spec.alpha > 0.0)) throw CertificateError("alpha = 0: some coefficient vanishes");
}

}  // namespace

NormalOrbitSpec make_normal_orbit_spec(ZeroSequence<double> zeros, std::vector<Complex> coeffs,
                                       std::optional<double> coefficient_tail) {
  check_coefficients(zeros, coeffs);
  if (coefficient_tail && !(*coefficient_tail >= 0.0)) throw InputError("coefficient tail must be non-negative");
  NormalOrbitSpec spec;
  const auto [alpha, beta] = comparability_constants(zeros, to_vector(coeffs));
  spec.alpha = alpha;
  spec.beta = beta;
  spec.delta = carleson_delta(zeros);
  if (spec.delta > 0.0) spec.Delta = delta_capacity(spec.delta);
  spec.zeros = std::move(zeros);
  spec.coeffs = std::move(coeffs);
  spec.coefficient_tail = coefficient_tail;
  return spec;
}

OrbitSpec build_normal_pair(const NormalOrbitSpec& spec, int n_max) {
  check_coefficients(spec.zeros, spec.coeffs);
  require_certifiable(spec);
  if (n_max < 0) throw InputError("n_max must be non-negative");
  return {diagonal_of(spec.zeros), to_vector(spec.coeffs), IndexSet::Natural, n_max};
}

BoundInterval certificate_bounds(const NormalOrbitSpec& spec) {
  require_certifiable(spec);
  return {spec.alpha / *spec.Delta, spec.beta * *spec.Delta};
}

RieszConstruction build_riesz_pair(const NormalOrbitSpec& spec, const MatrixXcd& W, int n_max) {
  const OrbitSpec normal = build_normal_pair(spec, n_max);
  const Eigen::Index J = normal.T.rows();
  if (W.rows() != J || W.cols() != J) throw InputError("W must be a J x J matrix");
  const double cond = condition_number(W);
  if (!(cond <= kMaxRieszCondition)) {
    throw NumericalError("W is too ill-conditioned for a Riesz construction (condition number " +
                         std::to_string(cond) + ")");
  }
  const Eigen::PartialPivLU<MatrixXcd> lu(W);
  const MatrixXcd W_inv = lu.inverse();

  RieszConstruction out;
  out.orbit = {W * normal.T * W_inv, W * normal.f0, IndexSet::Natural, n_max};
  out.g = W_inv.adjoint();
  out.g_dual = W;
  std::tie(out.riesz_lower, out.riesz_upper) = gram_extremes(out.g);
  const BoundInterval base = certificate_bounds(spec);
  out.certificate = {base.lower / out.riesz_upper, base.upper / out.riesz_lower};
  return out;
}

Complex excluded_tau(const ZeroSequence<double>& zeros, const std::vector<Complex>& coeffs, int k, int l) {
  check_coefficients(zeros, coeffs);
  const auto ck = coeffs.at(static_cast<std::size_t>(k));
  if (ck == Complex(0.0)) throw CertificateError("coefficient c_k vanishes");
  return (zeros[static_cast<std::size_t>(k)] - zeros[static_cast<std::size_t>(l)]) *
         coeffs.at(static_cast<std::size_t>(l)) / ck;
}

PerturbedConstruction perturb_tau(const ZeroSequence<double>& zeros, const std::vector<Complex>& coeffs, int k, int l,
                                  Complex tau, int n_max) {
  check_coefficients(zeros, coeffs);
  const int J = static_cast<int>(zeros.size());
  if (k < 0 || l < 0 || k >= J || l >= J) throw InputError("perturbation indices out of range");
  if (k == l) throw InputError("perturbation needs k != l");
  if (n_max < 0) throw InputError("n_max must be non-negative");

  const Complex d = zeros[static_cast<std::size_t>(k)] - zeros[static_cast<std::size_t>(l)];
  if (d == Complex(0.0)) throw CertificateError("l_k == l_l: duplicate zeros, the perturbation has no Riesz pair");
  const double delta = carleson_delta(zeros);
  if (delta <= 0.0) throw CertificateError("zeros are not uniformly separated (delta = 0)");

  const Complex forbidden = excluded_tau(zeros, coeffs, k, l);
  if (std::abs(tau - forbidden) <= 1e-12 * std::max(1.0, std::abs(forbidden))) {
    throw CertificateError("tau equals the excluded value (l_k - l_l) c_l / c_k; <f0, g_l> would vanish");
  }

  PerturbedConstruction out;
  MatrixXcd T = diagonal_of(zeros);
  T(l, k) += tau;
  out.orbit = {T, to_vector(coeffs), IndexSet::Natural, n_max};

  out.g = MatrixXcd::Identity(J, J);
  out.h = MatrixXcd::Identity(J, J);
  out.g.col(l).setZero();
  out.g(l, l) = 1.0;
  out.g(k, l) = -std::conj(tau) / std::conj(d);
  out.g.col(k).setZero();
  out.g(k, k) = 1.0 / std::conj(d);
  out.h.col(k).setZero();
  out.h(l, k) = tau;
  out.h(k, k) = d;

  // <g_j, h_k> = h_k^* g_j.
  const MatrixXcd cross = out.h.adjoint() * out.g;
  out.biorthogonality_residual = (cross - MatrixXcd::Identity(J, J)).cwiseAbs().maxCoeff();
  MatrixXcd diag_form = MatrixXcd::Zero(J, J);
  for (int j = 0; j < J; ++j) diag_form += zeros[static_cast<std::size_t>(j)] * out.h.col(j) * out.g.col(j).adjoint();
  out.diagonalization_residual = spectral_norm(T - diag_form);

  std::tie(out.riesz_lower, out.riesz_upper) = gram_extremes(out.g);
  const VectorXcd against_g = out.g.adjoint() * out.orbit.f0;
  std::tie(out.alpha, out.beta) = comparability_constants(zeros, against_g);
  if (!(out.alpha > 0.0)) throw CertificateError("some <f0, g_j> vanishes");
  const double Delta = delta_capacity(delta);
  out.certificate = {out.alpha / (Delta * out.riesz_upper), out.beta * Delta / out.riesz_lower};
  return out;
}

}  // namespace orbitframes
