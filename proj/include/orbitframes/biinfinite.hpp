#pragma once

// Grid realization of the multiplication pair (M_sigma, 1_sigma) on a finite
// union of arcs, and the periodization diagnostic for integer translates.
//
// L^2(sigma) is discretized on the M-th roots of unity with equal weights 1/M.
// On the full grid the one-period orbit is exactly the discrete Fourier system.

#include "orbitframes/orbit_frames.hpp"

#include <utility>
#include <vector>

namespace orbitframes {

/// Disjoint arcs [start, end) of the circle, in radians, sorted and merged.
/// Arcs with start > end wrap through angle 0.
class ArcSet {
 public:
  explicit ArcSet(std::vector<std::pair<double, double>> arcs);

  static ArcSet full_circle();

  const std::vector<std::pair<double, double>>& arcs() const { return arcs_; }
  /// Normalized arc length in (0, 1].
  double measure() const;
  bool contains(double angle) const;

 private:
  std::vector<std::pair<double, double>> arcs_;
};

struct GridModel {
  int M = 0;
  std::vector<Complex> points;
  std::vector<bool> mask;
  double weight = 0.0;

  int mask_count() const;
  /// Grid indices m with mask[m] set, ascending.
  std::vector<int> masked_indices() const;
  double measure() const { return weight * mask_count(); }
};

GridModel build_grid(const ArcSet& sigma, int M);

/// T = diag of the masked roots of unity, f0 = (1/sqrt(M)) * ones, as a
/// Z-indexed orbit truncated at n_max.
OrbitSpec build_multiplication_pair(const ArcSet& sigma, int M, int n_max);

enum class OrbitWindow {
  /// n = -n_max .. n_max
  Symmetric,
  /// n = 0 .. M-1
  OnePeriod,
};

/// ||S - I||_2 on the masked space, with S the orbit frame operator scaled by
/// M / (number of orbit terms), i.e. averaged per period of the grid orbit.
double parseval_defect(const ArcSet& sigma, int M, int n_max, OrbitWindow window = OrbitWindow::Symmetric);

/// Frame bounds of the one-period grid orbit of an arbitrary pair.
FrameReport one_period_bounds(const OperatorPair& pair, int M);

struct TranslateSamples {
  /// Samples of |fhat|^2 at omega = -period_count + i / per_unit,
  /// i = 0 .. 2 * period_count * per_unit - 1.
  std::vector<double> values;
  int per_unit = 0;
  int period_count = 0;
};

struct TranslateProfile {
  /// Phi at omega = j / per_unit, j = 0 .. per_unit - 1.
  std::vector<double> omega;
  std::vector<double> phi;
  /// Membership of each grid point in the estimated sigma.
  std::vector<bool> in_sigma;
  double threshold = 0.0;
  double sigma_measure = 0.0;
  double ess_inf = 0.0;
  double ess_sup = 0.0;
};

/// Phi(omega) = sum_n |fhat(omega + n)|^2 on [0, 1), sigma = {Phi > threshold}
/// with threshold = rel_threshold * max Phi.
TranslateProfile translates_phi(const TranslateSamples& samples, double rel_threshold = 1e-6);

/// Samples of g on the uniform grid described by per_unit / period_count.
template <typename Fn>
TranslateSamples sample_translates(Fn&& g, int per_unit, int period_count) {
  TranslateSamples s;
  s.per_unit = per_unit;
  s.period_count = period_count;
  const int n = 2 * period_count * per_unit;
  s.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.values.push_back(g(-period_count + static_cast<double>(i) / per_unit));
  }
  return s;
}

/// f0' = psi * 1_sigma for psi sampled on the masked grid points. Rejects psi
/// with min |psi| <= floor unless force is set.
OrbitSpec commutant_multiplier(const ArcSet& sigma, int M, const std::vector<Complex>& psi, int n_max,
                               double floor = 1e-8, bool force = false);

}  // namespace orbitframes
