#include "orbitframes/orbit_frames.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace orbitframes {

namespace {

MatrixXcd inverse_checked(const MatrixXcd& T, double max_cond, const char* what) {
  const double cond = condition_number(T);
  if (!(cond <= max_cond)) {
    throw NumericalError(std::string(what) + " is not safely invertible (condition number " + std::to_string(cond) +
                         ")");
  }
  return T.partialPivLu().inverse();
}

void require_square(const MatrixXcd& T, const char* name) {
  if (T.rows() != T.cols() || T.rows() == 0) throw InputError(std::string(name) + " must be a non-empty square matrix");
}

}  // namespace

void validate(const OrbitSpec& spec) {
  require_square(spec.T, "T");
  if (spec.f0.size() != spec.T.rows()) throw InputError("f0 dimension does not match T");
  if (spec.n_max < 0) throw InputError("n_max must be non-negative");
  if (spec.index_set == IndexSet::Integer) {
    const double cond = condition_number(spec.T);
    if (!(cond <= kMaxIntegerOrbitCondition)) {
      throw InputError("Z-indexed orbit requires invertible T (condition number " + std::to_string(cond) + ")");
    }
  }
}

int first_index(const OrbitSpec& spec) { return spec.index_set == IndexSet::Integer ? -spec.n_max : 0; }
int last_index(const OrbitSpec& spec) { return spec.n_max; }

MatrixXcd orbit_columns(const MatrixXcd& T, const VectorXcd& f0, int first, int last) {
  if (last < first) return MatrixXcd(f0.size(), 0);
  MatrixXcd U(f0.size(), last - first + 1);
  auto put = [&](int n, const VectorXcd& v) {
    const double norm = v.norm();
    if (!(norm <= kMaxColumnNorm)) {
      throw NumericalError("orbit column n = " + std::to_string(n) + " has norm " + std::to_string(norm) +
                           " (spectral radius too large for this truncation)");
    }
    U.col(n - first) = v;
  };
  VectorXcd v = f0;
  for (int n = 0; n <= last; ++n) {
    if (n >= first) put(n, v);
    if (n < last) v = T * v;
  }
  if (first < 0) {
    const MatrixXcd inv = inverse_checked(T, kMaxIntegerOrbitCondition, "T");
    v = f0;
    for (int n = -1; n >= first; --n) {
      v = inv * v;
      if (n <= last) put(n, v);
    }
  }
  return U;
}

MatrixXcd synthesis_matrix(const OrbitSpec& spec) {
  validate(spec);
  return orbit_columns(spec.T, spec.f0, first_index(spec), last_index(spec));
}

FrameReport frame_bounds_of_columns(const MatrixXcd& columns) {
  const MatrixXcd S = columns * columns.adjoint();
  const VectorXd ev = hermitian_eigenvalues(S);
  FrameReport r;
  r.lower_bound = std::max(0.0, ev(0));
  r.upper_bound = std::max(r.lower_bound, ev(ev.size() - 1));
  r.parseval_defect = (ev.array() - 1.0).abs().maxCoeff();
  return r;
}

FrameReport frame_bounds(const OrbitSpec& spec) {
  const MatrixXcd U = synthesis_matrix(spec);
  FrameReport r = frame_bounds_of_columns(U);
  r.n_max = spec.n_max;
  if (spec.index_set != IndexSet::Natural || spectral_radius(spec.T) >= 1.0) return r;

  // Find p with ||T^p|| < 1; then ||T^{n + jp} f0|| <= ||T^p||^j ||T^n f0||.
  MatrixXcd power = spec.T;
  int p = 1;
  double q = spectral_norm(power);
  while (q >= 1.0 && p < 4096) {
    power = power * power;
    p *= 2;
    q = spectral_norm(power);
  }
  if (q >= 1.0) return r;
  double head = 0.0;
  VectorXcd v = U.col(U.cols() - 1);
  for (int k = 0; k < p; ++k) {
    v = spec.T * v;
    head += v.squaredNorm();
  }
  r.tail_estimate = head / (1.0 - q * q);
  return r;
}

double kernel_shift_invariance(const MatrixXcd& columns, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw InputError("kernel tolerance must lie in (0, 1)");
  const Eigen::Index L = columns.cols();
  if (L < 2) return 0.0;
  const MatrixXcd K = kernel_basis(columns.leftCols(L - 1), tol);
  const Eigen::Index m = K.cols();
  if (m == 0) return 0.0;

  // Unit-pivot scaling: the pivot rows of K (chosen by column-pivoted QR of
  // K^*, which does not depend on the kernel basis) become the identity.
  Eigen::ColPivHouseholderQR<MatrixXcd> qr(K.adjoint());
  const auto& perm = qr.colsPermutation().indices();
  MatrixXcd pivot_block(m, m);
  for (Eigen::Index i = 0; i < m; ++i) pivot_block.row(i) = K.row(perm(i));
  const MatrixXcd scaled = K * pivot_block.partialPivLu().inverse();

  return spectral_norm(columns.rightCols(L - 1) * scaled);
}

MatrixXcd generator_closure(const MatrixXcd& columns, const ClosureOptions& options) {
  const Eigen::Index L = columns.cols();
  if (L < 2) throw InputError("generator_closure needs at least two frame elements");
  const double residual = kernel_shift_invariance(columns, options.rank_tol);
  if (residual >= options.invariance_tol) {
    throw NotBoundedlyGeneratedError(
        "synthesis kernel is not shift invariant (residual " + std::to_string(residual) + "); no bounded generator",
        residual);
  }
  const auto lead = columns.leftCols(L - 1);
  const MatrixXcd S = lead * lead.adjoint();
  const VectorXd ev = hermitian_eigenvalues(S);
  if (!(ev(0) > options.rank_tol * ev(ev.size() - 1))) {
    throw NumericalError("frame not captured at this truncation (leading columns do not span the space)");
  }
  // X = U_1 U_0^* S_0^{-1}; S_0 is Hermitian so X^* = S_0^{-1} (U_1 U_0^*)^*.
  const MatrixXcd Y = columns.rightCols(L - 1) * lead.adjoint();
  return S.ldlt().solve(Y.adjoint()).adjoint();
}

OperatorPair similarity_transport(const OperatorPair& pair, const MatrixXcd& V) {
  require_square(pair.T, "T");
  require_square(V, "V");
  if (V.rows() != pair.T.rows() || pair.f0.size() != pair.T.rows()) throw InputError("dimension mismatch");
  const MatrixXcd inv = inverse_checked(V, kMaxSimilarityCondition, "V");
  return {V * pair.T * inv, V * pair.f0};
}

VectorXcd commutant_transport(const OperatorPair& pair, const MatrixXcd& V, double tol) {
  require_square(pair.T, "T");
  require_square(V, "V");
  if (V.rows() != pair.T.rows() || pair.f0.size() != pair.T.rows()) throw InputError("dimension mismatch");
  const double cond = condition_number(V);
  if (!(cond <= kMaxSimilarityCondition)) {
    throw NumericalError("V is not safely invertible (condition number " + std::to_string(cond) + ")");
  }
  const double comm = spectral_norm(V * pair.T - pair.T * V);
  if (comm > tol * spectral_norm(pair.T) * spectral_norm(V)) {
    throw CommutatorError("V does not commute with T (||VT - TV|| = " + std::to_string(comm) + ")", comm);
  }
  return V * pair.f0;
}

std::optional<int> orbit_period(const OrbitSpec& spec, double rel_tol) {
  validate(spec);
  const int window = 2 * spec.n_max + 1;
  const double scale = spec.f0.norm();
  if (scale == 0.0) return std::nullopt;
  VectorXcd v = spec.f0;
  for (int p = 1; p <= window; ++p) {
    v = spec.T * v;
    if ((v - spec.f0).norm() <= rel_tol * scale) return p;
  }
  return std::nullopt;
}

double unitarity_defect(const OrbitSpec& spec) {
  if (spec.index_set != IndexSet::Integer) throw InputError("unitarity_defect is defined for Z-indexed orbits");
  validate(spec);
  const std::optional<int> period = orbit_period(spec);
  const MatrixXcd U = period ? orbit_columns(spec.T, spec.f0, 0, *period - 1) : synthesis_matrix(spec);
  const MatrixXcd S = U * U.adjoint();
  const VectorXd ev = hermitian_eigenvalues(S);
  const double lower = ev(0);
  const double upper = ev(ev.size() - 1);
  if (!(lower > 1e-13 * upper)) {
    throw NumericalError("frame operator is singular (lower frame bound " + std::to_string(lower) +
                         "); the Z orbit is not a frame");
  }
  const double floor = lower / 100.0;
  const MatrixXcd W = hermitian_power(S, -0.5, floor) * spec.T * hermitian_power(S, 0.5, floor);
  const Eigen::Index d = W.rows();
  return spectral_norm(W.adjoint() * W - MatrixXcd::Identity(d, d));
}

LowerNormCheck lower_norm_check(const OrbitSpec& spec, const VectorXcd& f, int n_first, int n_last, double tol) {
  if (spec.index_set != IndexSet::Integer) throw InputError("lower_norm_check is defined for Z-indexed orbits");
  if (f.size() != spec.T.rows()) throw InputError("vector has wrong dimension");
  if (n_last < n_first) throw InputError("empty power range");
  const double fn = f.norm();
  if (fn == 0.0) throw InputError("lower_norm_check needs a non-zero vector");

  const FrameReport fr = frame_bounds(spec);
  LowerNormCheck out;
  out.bound = fr.upper_bound > 0.0 ? std::sqrt(fr.lower_bound / fr.upper_bound) : 0.0;
  out.min_ratio = std::numeric_limits<double>::infinity();
  const MatrixXcd Tadj = spec.T.adjoint();
  const MatrixXcd forward = orbit_columns(spec.T, f, n_first, n_last);
  const MatrixXcd backward = orbit_columns(Tadj, f, n_first, n_last);
  for (Eigen::Index i = 0; i < forward.cols(); ++i) {
    out.min_ratio = std::min({out.min_ratio, forward.col(i).norm() / fn, backward.col(i).norm() / fn});
  }
  out.holds = out.min_ratio >= out.bound - tol;
  return out;
}

}  // namespace orbitframes
