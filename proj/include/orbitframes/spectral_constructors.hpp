#pragma once

// Orbit frames from normal operators, operators similar to normal ones, and
// a rank-one non-normal perturbation, each with a certified bound interval.

#include "orbitframes/blaschke.hpp"
#include "orbitframes/orbit_frames.hpp"

#include <optional>
#include <vector>

namespace orbitframes {

/// Diagonal data: T = sum_j l_j <., e_j> e_j, c_j = <f0, e_j>.
struct NormalOrbitSpec {
  ZeroSequence<double> zeros;
  std::vector<Complex> coeffs;
  /// inf_j |c_j|^2 / (1 - |l_j|^2)
  double alpha = 0.0;
  /// sup_j |c_j|^2 / (1 - |l_j|^2)
  double beta = 0.0;
  double delta = 0.0;
  /// Empty when delta == 0.
  std::optional<double> Delta;
  /// Optional closed-form value of sum_{j > J} |c_j|^2 for an infinite
  /// sequence this finite block truncates; empty means a finite model.
  std::optional<double> coefficient_tail;
};

/// Fills alpha, beta, delta and Delta from zeros and coefficients.
NormalOrbitSpec make_normal_orbit_spec(ZeroSequence<double> zeros, std::vector<Complex> coeffs,
                                       std::optional<double> coefficient_tail = std::nullopt);

/// (diag(l_j), (c_j)) as an N-indexed orbit truncated at n_max.
OrbitSpec build_normal_pair(const NormalOrbitSpec& spec, int n_max);

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double lo, double hi, double rel_slack = 0.0) const {
    return lo >= lower * (1.0 - rel_slack) && hi <= upper * (1.0 + rel_slack);
  }
};

/// (alpha / Delta, beta * Delta).
BoundInterval certificate_bounds(const NormalOrbitSpec& spec);

struct RieszConstruction {
  OrbitSpec orbit;
  /// Columns g_j = (W^{-1})^* e_j.
  MatrixXcd g;
  /// Columns g'_j = W e_j (the biorthogonal dual).
  MatrixXcd g_dual;
  /// Riesz bounds of (g_j): extreme eigenvalues of the Gram matrix G^* G.
  double riesz_lower = 0.0;
  double riesz_upper = 0.0;
  /// alpha Delta^{-1} B^{-1}, beta Delta A^{-1}.
  BoundInterval certificate;
};

/// T = W diag(l) W^{-1}, f0 = W c, so that <f0, g_j> = c_j.
RieszConstruction build_riesz_pair(const NormalOrbitSpec& spec, const MatrixXcd& W, int n_max);

struct PerturbedConstruction {
  OrbitSpec orbit;
  /// Riesz basis (g_j) and its dual (h_j) diagonalizing T_tau.
  MatrixXcd g;
  MatrixXcd h;
  /// max |<g_j, h_k> - delta_jk|
  double biorthogonality_residual = 0.0;
  /// ||T_tau - sum_j l_j h_j g_j^*||_2
  double diagonalization_residual = 0.0;
  double riesz_lower = 0.0;
  double riesz_upper = 0.0;
  /// alpha and beta measured against (g_j).
  double alpha = 0.0;
  double beta = 0.0;
  BoundInterval certificate;
};

/// The excluded perturbation value (l_k - l_l) c_l / c_k.
Complex excluded_tau(const ZeroSequence<double>& zeros, const std::vector<Complex>& coeffs, int k, int l);

/// T_tau = diag(l) + tau e_l e_k^*, f0 = (c_j), with the explicit Riesz pair
/// g_l = e_l - conj(tau / d) e_k, g_k = e_k / conj(d), h_l = e_l,
/// h_k = tau e_l + d e_k, d = l_k - l_l.
PerturbedConstruction perturb_tau(const ZeroSequence<double>& zeros, const std::vector<Complex>& coeffs, int k,
                                  int l, Complex tau, int n_max);

}  // namespace orbitframes
