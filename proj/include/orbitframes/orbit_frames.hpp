#pragma once

// Frame analysis of truncated operator orbits (T^n f0).
//
// Orbits over N are truncated to n = 0..n_max, orbits over Z symmetrically to
// n = -n_max..n_max. Columns of a synthesis matrix are always in increasing n.

#include "orbitframes/linalg.hpp"

#include <optional>
#include <vector>

namespace orbitframes {

enum class IndexSet { Natural, Integer };

struct OrbitSpec {
  MatrixXcd T;
  VectorXcd f0;
  IndexSet index_set = IndexSet::Natural;
  int n_max = 0;
};

struct OperatorPair {
  MatrixXcd T;
  VectorXcd f0;
};

struct FrameReport {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double parseval_defect = 0.0;
  int n_max = 0;
  /// Upper bound on the frame-operator mass of the discarded orbit terms;
  /// empty when it cannot be bounded (spectral radius >= 1, or Z orbits).
  std::optional<double> tail_estimate;
};

inline constexpr double kMaxColumnNorm = 1e12;
inline constexpr double kMaxIntegerOrbitCondition = 1e12;
inline constexpr double kMaxSimilarityCondition = 1e10;

/// Checks shapes, n_max >= 0 and, for Z orbits, invertibility of T.
void validate(const OrbitSpec& spec);

int first_index(const OrbitSpec& spec);
int last_index(const OrbitSpec& spec);

/// Columns T^n f0 for n = first..last (negative n through T^{-1}).
MatrixXcd orbit_columns(const MatrixXcd& T, const VectorXcd& f0, int first, int last);

/// Synthesis matrix U of the truncated orbit.
MatrixXcd synthesis_matrix(const OrbitSpec& spec);

/// Extreme eigenvalues of S = U U^* and ||S - I||_2 for arbitrary columns.
FrameReport frame_bounds_of_columns(const MatrixXcd& columns);

FrameReport frame_bounds(const OrbitSpec& spec);

/// Shift-invariance residual of the synthesis kernel.
///
/// The right shift R maps coefficient sequences on the leading L-1 columns
/// to sequences on all L columns. The kernel of the leading block is computed
/// with a singular-value cut tol * sigma_max, each kernel vector is scaled so
/// that its pivot coordinate is 1 (the usual normalization of a linear
/// dependency), and the residual is ||U R K||_2. It vanishes iff the
/// truncated kernel is R-invariant.
double kernel_shift_invariance(const MatrixXcd& columns, double tol = 1e-10);

struct ClosureOptions {
  double rank_tol = 1e-10;
  double invariance_tol = 1e-8;
};

/// U R U^dagger for the truncated frame, where U^dagger is the pseudo-inverse
/// of the leading L-1 columns. Throws NotBoundedlyGeneratedError when the
/// kernel is not shift invariant and NumericalError when the leading columns
/// do not span the space.
MatrixXcd generator_closure(const MatrixXcd& columns, const ClosureOptions& options = {});

/// (V T V^{-1}, V f0).
OperatorPair similarity_transport(const OperatorPair& pair, const MatrixXcd& V);

/// V f0 for invertible V commuting with T (relative commutator below tol).
VectorXcd commutant_transport(const OperatorPair& pair, const MatrixXcd& V, double tol = 1e-10);

/// ||W^* W - I||_2 with W = S^{-1/2} T S^{1/2}, S the frame operator of the
/// truncated Z orbit. When the orbit is periodic (T^p f0 = f0 with p no longer
/// than the truncation window) S is taken over exactly one period, which is the
/// limit n_max -> infinity of the normalized truncated operators.
double unitarity_defect(const OrbitSpec& spec);

/// Period of a Z orbit within the truncation window, if any.
std::optional<int> orbit_period(const OrbitSpec& spec, double rel_tol = 1e-10);

struct LowerNormCheck {
  double min_ratio = 0.0;
  /// sqrt(A / B) from the measured frame bounds.
  double bound = 0.0;
  bool holds = false;
};

/// min over n in [n_first, n_last] of ||T^n f|| / ||f|| and ||(T^*)^n f|| / ||f||,
/// compared against sqrt(A / B).
LowerNormCheck lower_norm_check(const OrbitSpec& spec, const VectorXcd& f, int n_first, int n_last,
                                double tol = 1e-12);

}  // namespace orbitframes
