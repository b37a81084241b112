#pragma once

// Finite Blaschke products, pseudo-hyperbolic separation and the frame-bound
// capacity constant built from it.

#include "orbitframes/coeff_space.hpp"
#include "orbitframes/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace orbitframes {

inline constexpr double kDiskMargin = 1e-10;
inline constexpr double kPoleTolerance = 1e-12;

/// Finite list of points in the open unit disk, |lambda| <= 1 - kDiskMargin.
/// Repeated points are allowed here; separation is measured separately.
template <typename Real = double>
class ZeroSequence {
 public:
  using Scalar = std::complex<Real>;

  ZeroSequence() = default;

  explicit ZeroSequence(std::vector<Scalar> zeros) : zeros_(std::move(zeros)) {
    for (std::size_t j = 0; j < zeros_.size(); ++j) {
      const Real r = std::abs(zeros_[j]);
      if (!std::isfinite(r) || r >= Real(1) - Real(kDiskMargin)) {
        throw InputError("zero " + std::to_string(j) + " is not strictly inside the unit disk (|lambda| = " +
                         std::to_string(static_cast<double>(r)) + ")");
      }
    }
  }

  ZeroSequence(std::initializer_list<Scalar> zeros) : ZeroSequence(std::vector<Scalar>(zeros)) {}

  std::size_t size() const { return zeros_.size(); }
  bool empty() const { return zeros_.empty(); }
  const Scalar& operator[](std::size_t j) const { return zeros_[j]; }
  auto begin() const { return zeros_.begin(); }
  auto end() const { return zeros_.end(); }
  const std::vector<Scalar>& values() const { return zeros_; }

  Real max_modulus() const {
    Real m = 0;
    for (const auto& z : zeros_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  std::vector<Scalar> zeros_;
};

/// c * prod_j (z - lambda_j) / (1 - conj(lambda_j) z), |c| = 1.
template <typename Real = double>
struct BlaschkeProduct {
  ZeroSequence<Real> zeros;
  std::complex<Real> constant{1};

  BlaschkeProduct() = default;
  explicit BlaschkeProduct(ZeroSequence<Real> z, std::complex<Real> c = std::complex<Real>(1))
      : zeros(std::move(z)), constant(c) {
    if (std::abs(std::abs(constant) - Real(1)) > Real(1e-12)) {
      throw InputError("Blaschke constant must be unimodular");
    }
  }

  int degree() const { return static_cast<int>(zeros.size()); }
};

/// The inner function h = 0 (the Riesz-basis case). It has no finite model.
struct ZeroFunction {};

/// |(a - b) / (1 - conj(a) b)|.
template <typename Real>
Real pseudo_hyperbolic(std::complex<Real> a, std::complex<Real> b) {
  return std::abs(a - b) / std::abs(Real(1) - std::conj(a) * b);
}

/// delta = min_j prod_{k != j} pseudo_hyperbolic(lambda_j, lambda_k).
/// A single zero gives 1; coincident zeros give exactly 0.
template <typename Real>
Real carleson_delta(const ZeroSequence<Real>& zeros) {
  if (zeros.empty()) throw InputError("carleson_delta needs at least one zero");
  Real delta = Real(1);
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    Real prod = Real(1);
    for (std::size_t k = 0; k < zeros.size(); ++k) {
      if (k == j) continue;
      if (zeros[j] == zeros[k]) return Real(0);
      prod *= pseudo_hyperbolic(zeros[j], zeros[k]);
    }
    delta = std::min(delta, prod);
  }
  return delta;
}

/// Delta = (2 / delta^4) (1 - 2 log delta); >= 2, decreasing in delta.
template <typename Real>
Real delta_capacity(Real delta) {
  if (!(delta <= Real(1))) throw InputError("separation constant must lie in (0, 1]");
  if (!(delta > Real(0))) {
    throw CertificateError("zero sequence is not uniformly separated (delta = 0); no frame-bound certificate");
  }
  const Real d2 = delta * delta;
  return Real(2) / (d2 * d2) * (Real(1) - Real(2) * std::log(delta));
}

template <typename Real>
std::complex<Real> evaluate(const BlaschkeProduct<Real>& b, std::complex<Real> z) {
  std::complex<Real> value = b.constant;
  for (const auto& lambda : b.zeros) {
    const std::complex<Real> denom = Real(1) - std::conj(lambda) * z;
    if (std::abs(denom) < Real(kPoleTolerance)) {
      throw PoleProximityError("evaluation point is within pole tolerance of 1/conj(lambda)");
    }
    value *= (z - lambda) / denom;
  }
  return value;
}

namespace detail {

/// In-place Taylor window update x -> x / (1 - conj(a) z) on [0, N].
template <typename Real>
void divide_by_kernel_denominator(typename CoeffVec<Real>::Storage& x, std::complex<Real> a) {
  const std::complex<Real> ca = std::conj(a);
  for (Eigen::Index n = 1; n < x.size(); ++n) x(n) += ca * x(n - 1);
}

/// In-place Taylor window update x -> x (z - a) / (1 - conj(a) z) on [0, N].
template <typename Real>
void apply_blaschke_factor(typename CoeffVec<Real>::Storage& x, std::complex<Real> a) {
  for (Eigen::Index n = x.size() - 1; n >= 1; --n) x(n) = x(n - 1) - a * x(n);
  if (x.size() > 0) x(0) = -a * x(0);
  divide_by_kernel_denominator<Real>(x, a);
}

}  // namespace detail

/// Taylor coefficients of b at 0 on [0, N], built factor by factor from the
/// geometric expansions of 1 / (1 - conj(lambda) z).
template <typename Real>
CoeffVec<Real> taylor_coeffs(const BlaschkeProduct<Real>& b, int n_max) {
  if (n_max < b.degree()) throw InputError("taylor_coeffs requires N >= degree");
  typename CoeffVec<Real>::Storage x = CoeffVec<Real>::Storage::Zero(n_max + 1);
  x(0) = b.constant;
  for (const auto& lambda : b.zeros) detail::apply_blaschke_factor<Real>(x, lambda);
  return CoeffVec<Real>(0, std::move(x));
}

/// Energy of the discarded Taylor tail, 1 - sum_{n<=N} |c_n|^2 (h has unit
/// L^2 norm). Clamped at zero.
template <typename Real>
Real taylor_tail_energy(const CoeffVec<Real>& taylor) {
  return std::max(Real(0), Real(1) - taylor.norm_squared());
}

}  // namespace orbitframes
