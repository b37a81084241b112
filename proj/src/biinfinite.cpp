#include "orbitframes/biinfinite.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orbitframes {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Tolerance (in turns) for grid points sitting on an arc endpoint.
constexpr double kEndpointSlack = 1e-12;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

ArcSet::ArcSet(std::vector<std::pair<double, double>> arcs) {
  std::vector<std::pair<double, double>> pieces;
  for (const auto& [start, end] : arcs) {
    if (!std::isfinite(start) || !std::isfinite(end)) throw InputError("arc endpoints must be finite");
    double length = end >= start ? end - start : end - start + kTwoPi;
    if (length >= kTwoPi) {
      pieces = {{0.0, kTwoPi}};
      break;
    }
    if (length <= 0.0) continue;
    const double s = wrap_angle(start);
    if (s + length > kTwoPi) {
      pieces.emplace_back(s, kTwoPi);
      pieces.emplace_back(0.0, s + length - kTwoPi);
    } else {
      pieces.emplace_back(s, s + length);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  for (const auto& p : pieces) {
    if (!arcs_.empty() && p.first <= arcs_.back().second) {
      arcs_.back().second = std::max(arcs_.back().second, p.second);
    } else {
      arcs_.push_back(p);
    }
  }
  if (arcs_.empty()) throw InputError("arc set has zero measure");
}

ArcSet ArcSet::full_circle() { return ArcSet({{0.0, kTwoPi}}); }

double ArcSet::measure() const {
  double total = 0.0;
  for (const auto& [s, e] : arcs_) total += e - s;
  return std::min(1.0, total / kTwoPi);
}

bool ArcSet::contains(double angle) const {
  const double t = wrap_angle(angle) / kTwoPi;
  for (const auto& [s, e] : arcs_) {
    if (t >= s / kTwoPi - kEndpointSlack && t < e / kTwoPi - kEndpointSlack) return true;
  }
  return false;
}

int GridModel::mask_count() const { return static_cast<int>(std::count(mask.begin(), mask.end(), true)); }

std::vector<int> GridModel::masked_indices() const {
  std::vector<int> idx;
  for (int m = 0; m < M; ++m) {
    if (mask[static_cast<std::size_t>(m)]) idx.push_back(m);
  }
  return idx;
}

GridModel build_grid(const ArcSet& sigma, int M) {
  if (M < 2) throw InputError("grid size must be at least 2");
  GridModel g;
  g.M = M;
  g.weight = 1.0 / M;
  g.points.reserve(static_cast<std::size_t>(M));
  g.mask.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    const double angle = kTwoPi * m / M;
    g.points.push_back(std::polar(1.0, angle));
    g.mask.push_back(sigma.contains(angle));
  }
  return g;
}

OrbitSpec build_multiplication_pair(const ArcSet& sigma, int M, int n_max) {
  const GridModel g = build_grid(sigma, M);
  const std::vector<int> idx = g.masked_indices();
  if (idx.empty()) throw InputError("arc set contains no point of the " + std::to_string(M) + "-point grid");
  const auto D = static_cast<Eigen::Index>(idx.size());
  VectorXcd diag(D);
  for (Eigen::Index i = 0; i < D; ++i) diag(i) = g.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
  OrbitSpec spec;
  spec.T = diag.asDiagonal();
  spec.f0 = VectorXcd::Constant(D, Complex(std::sqrt(g.weight)));
  spec.index_set = IndexSet::Integer;
  spec.n_max = n_max;
  return spec;
}

double parseval_defect(const ArcSet& sigma, int M, int n_max, OrbitWindow window) {
  if (n_max < 0) throw InputError("n_max must be non-negative");
  const OrbitSpec spec = build_multiplication_pair(sigma, M, n_max);
  const MatrixXcd U = window == OrbitWindow::OnePeriod ? orbit_columns(spec.T, spec.f0, 0, M - 1)
                                                       : orbit_columns(spec.T, spec.f0, -n_max, n_max);
  const double scale = static_cast<double>(M) / static_cast<double>(U.cols());
  const VectorXd ev = hermitian_eigenvalues(scale * (U * U.adjoint()));
  return (ev.array() - 1.0).abs().maxCoeff();
}

FrameReport one_period_bounds(const OperatorPair& pair, int M) {
  if (M < 1) throw InputError("period must be positive");
  FrameReport r = frame_bounds_of_columns(orbit_columns(pair.T, pair.f0, 0, M - 1));
  r.n_max = M - 1;
  return r;
}

TranslateProfile translates_phi(const TranslateSamples& samples, double rel_threshold) {
  const int G = samples.per_unit;
  const int P = samples.period_count;
  if (G < 1 || P < 1) throw InputError("translate grid needs per_unit >= 1 and period_count >= 1");
  if (samples.values.size() != static_cast<std::size_t>(2 * P * G)) {
    throw InputError("expected " + std::to_string(2 * P * G) + " samples of |fhat|^2");
  }
  for (double v : samples.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("samples of |fhat|^2 must be finite and non-negative");
  }

  TranslateProfile out;
  out.omega.resize(static_cast<std::size_t>(G));
  out.phi.assign(static_cast<std::size_t>(G), 0.0);
  for (int j = 0; j < G; ++j) {
    out.omega[static_cast<std::size_t>(j)] = static_cast<double>(j) / G;
    double sum = 0.0;
    for (int n = 0; n < 2 * P; ++n) sum += samples.values[static_cast<std::size_t>(n * G + j)];
    out.phi[static_cast<std::size_t>(j)] = sum;
  }
  const double peak = *std::max_element(out.phi.begin(), out.phi.end());
  if (!(peak > 0.0)) throw InputError("periodization Phi vanishes identically");

  out.threshold = rel_threshold * peak;
  out.in_sigma.resize(static_cast<std::size_t>(G));
  out.ess_inf = peak;
  out.ess_sup = 0.0;
  int count = 0;
  for (int j = 0; j < G; ++j) {
    const double v = out.phi[static_cast<std::size_t>(j)];
    const bool in = v > out.threshold;
    out.in_sigma[static_cast<std::size_t>(j)] = in;
    if (in) {
      ++count;
      out.ess_inf = std::min(out.ess_inf, v);
      out.ess_sup = std::max(out.ess_sup, v);
    }
  }
  out.sigma_measure = static_cast<double>(count) / G;
  return out;
}

OrbitSpec commutant_multiplier(const ArcSet& sigma, int M, const std::vector<Complex>& psi, int n_max, double floor,
                               bool force) {
  OrbitSpec spec = build_multiplication_pair(sigma, M, n_max);
  if (psi.size() != static_cast<std::size_t>(spec.f0.size())) {
    throw InputError("psi must be sampled on the " + std::to_string(spec.f0.size()) + " masked grid points");
  }
  const GridModel g = build_grid(sigma, M);
  const std::vector<int> idx = g.masked_indices();
  std::size_t worst = 0;
  for (std::size_t i = 1; i < psi.size(); ++i) {
    if (std::abs(psi[i]) < std::abs(psi[worst])) worst = i;
  }
  if (!force && !(std::abs(psi[worst]) > floor)) {
    throw VanishingMultiplierError("multiplier vanishes at grid point " + std::to_string(idx[worst]) +
                                       " (|psi| = " + std::to_string(std::abs(psi[worst])) + ")",
                                   idx[worst]);
  }
  for (Eigen::Index i = 0; i < spec.f0.size(); ++i) spec.f0(i) *= psi[static_cast<std::size_t>(i)];
  return spec;
}

}  // namespace orbitframes
