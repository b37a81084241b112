#include "orbitframes/model_space.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitframes {

namespace {

struct BasisBuild {
  std::vector<CoeffVecd> basis;
  double gram_residual = 0.0;
  // Largest norm of the last quarter of any basis vector's coefficients.
  double tail = 0.0;
};

BasisBuild takenaka_malmquist(const ZeroSequence<double>& zeros, int n_trunc) {
  BasisBuild out;
  CoeffVecd::Storage partial = CoeffVecd::Storage::Zero(n_trunc + 1);
  partial(0) = 1.0;
  for (const auto& lambda : zeros) {
    CoeffVecd::Storage e = partial;
    detail::divide_by_kernel_denominator<double>(e, lambda);
    e *= std::sqrt(1.0 - std::norm(lambda));
    const Eigen::Index q = (n_trunc + 1) / 4;
    out.tail = std::max(out.tail, e.tail(q).norm());
    out.basis.emplace_back(0, std::move(e));
    detail::apply_blaschke_factor<double>(partial, lambda);
  }
  const std::size_t d = out.basis.size();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      const Complex g = inner_product(out.basis[j], out.basis[k]);
      const double dev = std::abs(g - (j == k ? Complex(1.0) : Complex(0.0)));
      out.gram_residual = std::max(out.gram_residual, dev);
    }
  }
  return out;
}

}  // namespace

VectorXcd ModelSpace::coordinates(const CoeffVecd& f) const {
  VectorXcd c(dim());
  for (int k = 0; k < dim(); ++k) c(k) = inner_product(f, basis_[static_cast<std::size_t>(k)]);
  return c;
}

CoeffVecd ModelSpace::synthesize(const VectorXcd& coords) const {
  if (coords.size() != dim()) throw InputError("coordinate vector has wrong dimension");
  CoeffVecd::Storage acc = CoeffVecd::Storage::Zero(trunc_ + 1);
  for (int k = 0; k < dim(); ++k) acc += coords(k) * basis_[static_cast<std::size_t>(k)].coeffs();
  return CoeffVecd(0, std::move(acc));
}

int default_truncation(int degree) { return std::max(8 * degree, 64); }

ModelSpace build_model_space(const BlaschkeProduct<double>& h, int n_trunc, const ModelSpaceOptions& options) {
  const int d = h.degree();
  if (d < 1) throw InputError("model space needs a Blaschke product of degree >= 1 (constant h gives {0})");
  if (n_trunc < default_truncation(d)) {
    throw InputError("truncation must be at least max(8*degree, 64) = " + std::to_string(default_truncation(d)));
  }
  if (n_trunc > options.max_trunc) {
    throw InputError("requested truncation " + std::to_string(n_trunc) + " exceeds the cap " +
                     std::to_string(options.max_trunc));
  }

  BasisBuild built = takenaka_malmquist(h.zeros, n_trunc);
  while ((built.gram_residual >= options.gram_target || built.tail >= options.gram_target) && n_trunc < options.max_trunc) {
    n_trunc = std::min(2 * n_trunc, options.max_trunc);
    built = takenaka_malmquist(h.zeros, n_trunc);
  }
  if (built.gram_residual > options.gram_limit) {
    throw NumericalError("model-space basis is ill-conditioned at truncation " + std::to_string(n_trunc) +
                         " (Gram residual " + std::to_string(built.gram_residual) + "); zeros too close to the circle");
  }

  ModelSpace ms;
  ms.h_ = BlaschkeProduct<double>(h.zeros);
  ms.h_taylor_ = taylor_coeffs(ms.h_, n_trunc);
  ms.basis_ = std::move(built.basis);
  ms.trunc_ = n_trunc;
  ms.gram_residual_ = built.gram_residual;

  ms.shift_ = MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const CoeffVecd ze = shift(ms.basis_[static_cast<std::size_t>(j)], 1);
    for (int k = 0; k < d; ++k) ms.shift_(k, j) = inner_product(ze, ms.basis_[static_cast<std::size_t>(k)]);
  }
  ms.phi_ = ms.coordinates(CoeffVecd::one());
  return ms;
}

ModelSpace build_model_space(const BlaschkeProduct<double>& h) {
  return build_model_space(h, default_truncation(h.degree()));
}

CoeffVecd project_model(const ModelSpace& ms, const CoeffVecd& f) {
  if (f.empty()) return CoeffVecd::zeros(0, ms.trunc());
  if (f.lo() < 0 && f.window(f.lo(), -1).norm() > 0.0) {
    throw InputError("project_model expects f in L^2_+ (no negative-index coefficients)");
  }
  const CoeffVecd minus = project_minus(multiply(f, conj_reflect(ms.h_taylor())));
  return multiply(ms.h_taylor(), minus).window(0, ms.trunc());
}

VectorXcd projected_monomial(const ModelSpace& ms, int m) {
  if (m < 0 || m > ms.trunc() - ms.dim()) {
    throw InputError("monomial degree " + std::to_string(m) + " outside the window [0, " +
                     std::to_string(ms.trunc() - ms.dim()) + "]");
  }
  CoeffVecd::Storage poly(m + 1);
  for (int n = 0; n <= m; ++n) poly(n) = std::conj(ms.h_taylor()[m - n]);
  const CoeffVecd correction = multiply(CoeffVecd(0, std::move(poly)), ms.h_taylor());
  return ms.coordinates(CoeffVecd::monomial(m) - correction);
}

std::vector<VectorXcd> orbit(const ModelSpace& ms, int n_max) {
  if (n_max < 0) throw InputError("n_max must be non-negative");
  std::vector<VectorXcd> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  VectorXcd v = ms.phi();
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(v);
    v = ms.shift_matrix() * v;
  }
  return out;
}

std::vector<double> decay_profile(const ModelSpace& ms, const VectorXcd& f, int n_max) {
  if (f.size() != ms.dim()) throw InputError("vector has wrong dimension");
  if (n_max < 0) throw InputError("n_max must be non-negative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  VectorXcd v = f;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(v.norm());
    v = ms.shift_matrix() * v;
  }
  return out;
}

std::vector<double> decay_profile_tail_sum(const ModelSpace& ms, const VectorXcd& f, int n_max) {
  if (n_max < 0) throw InputError("n_max must be non-negative");
  const CoeffVecd fh = multiply(ms.synthesize(f), conj_reflect(ms.h_taylor()));
  // Negative coefficients a_k = <f conj(h), z^{-k}>, k = 1..trunc; suffix sums of |a_k|^2.
  const int kmax = ms.trunc();
  std::vector<double> suffix(static_cast<std::size_t>(kmax) + 2, 0.0);
  for (int k = kmax; k >= 1; --k) suffix[static_cast<std::size_t>(k)] = suffix[static_cast<std::size_t>(k) + 1] + std::norm(fh[-k]);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double tail = n + 1 <= kmax ? suffix[static_cast<std::size_t>(n) + 1] : 0.0;
    out.push_back(std::sqrt(tail));
  }
  return out;
}

double minimal_polynomial_check(const ModelSpace& ms) {
  const int d = ms.dim();
  MatrixXcd p = MatrixXcd::Identity(d, d);
  for (const auto& lambda : ms.h().zeros) {
    p = p * (ms.shift_matrix() - lambda * MatrixXcd::Identity(d, d));
  }
  return spectral_norm(p);
}

}  // namespace orbitframes
