#pragma once

// Finite Fourier-coefficient windows for functions on the unit circle.
//
// A CoeffVec stores c_n for n = lo .. lo+size-1 densely; coefficients outside
// the window are zero. The inner product is the one of L^2(T) with normalized
// arc length, so (z^n) is orthonormal and Parseval holds exactly.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>

namespace orbitframes {

template <typename Real = double>
class CoeffVec {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CoeffVec() = default;

  CoeffVec(int lo, Storage coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {}

  static CoeffVec monomial(int n, Scalar value = Scalar(1)) {
    Storage c(1);
    c(0) = value;
    return CoeffVec(n, std::move(c));
  }

  static CoeffVec one() { return monomial(0); }

  /// All-zero window [lo, hi].
  static CoeffVec zeros(int lo, int hi) {
    return CoeffVec(lo, Storage::Zero(std::max(0, hi - lo + 1)));
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.size() == 0; }

  const Storage& coeffs() const { return coeffs_; }
  Storage& coeffs() { return coeffs_; }

  /// Coefficient of z^n; zero outside the stored window.
  Scalar operator[](int n) const {
    if (n < lo_ || n > hi()) return Scalar(0);
    return coeffs_(n - lo_);
  }

  /// Coefficients on [lo, hi], zero-extended or clipped as needed.
  CoeffVec window(int lo, int hi) const {
    CoeffVec out = zeros(lo, hi);
    const int a = std::max(lo, lo_);
    const int b = std::min(hi, this->hi());
    if (a <= b) out.coeffs_.segment(a - lo, b - a + 1) = coeffs_.segment(a - lo_, b - a + 1);
    return out;
  }

  /// Drops leading/trailing coefficients with modulus <= tol.
  CoeffVec trimmed(Real tol = Real(0)) const {
    Eigen::Index first = 0;
    Eigen::Index last = coeffs_.size() - 1;
    while (first <= last && std::abs(coeffs_(first)) <= tol) ++first;
    while (last >= first && std::abs(coeffs_(last)) <= tol) --last;
    if (first > last) return CoeffVec();
    return CoeffVec(lo_ + static_cast<int>(first), coeffs_.segment(first, last - first + 1));
  }

  Real norm_squared() const { return coeffs_.squaredNorm(); }
  Real norm() const { return coeffs_.norm(); }

 private:
  int lo_ = 0;
  Storage coeffs_;
};

using CoeffVecd = CoeffVec<double>;

/// <a, b> = sum_n a_n conj(b_n) over the overlapping indices.
template <typename Real>
std::complex<Real> inner_product(const CoeffVec<Real>& a, const CoeffVec<Real>& b) {
  const int lo = std::max(a.lo(), b.lo());
  const int hi = std::min(a.hi(), b.hi());
  if (lo > hi) return std::complex<Real>(0);
  const Eigen::Index n = hi - lo + 1;
  // Eigen's dot conjugates the first argument.
  return b.coeffs().segment(lo - b.lo(), n).dot(a.coeffs().segment(lo - a.lo(), n));
}

/// Keeps indices n >= 0.
template <typename Real>
CoeffVec<Real> project_plus(const CoeffVec<Real>& a) {
  if (a.empty() || a.hi() < 0) return CoeffVec<Real>();
  return a.window(std::max(0, a.lo()), a.hi());
}

/// Keeps indices n <= -1.
template <typename Real>
CoeffVec<Real> project_minus(const CoeffVec<Real>& a) {
  if (a.empty() || a.lo() > -1) return CoeffVec<Real>();
  return a.window(a.lo(), std::min(-1, a.hi()));
}

/// Pointwise product on T, i.e. coefficient convolution. The output window
/// is [a.lo + b.lo, a.hi + b.hi].
template <typename Real>
CoeffVec<Real> multiply(const CoeffVec<Real>& a, const CoeffVec<Real>& b) {
  if (a.empty() || b.empty()) return CoeffVec<Real>();
  auto out = CoeffVec<Real>::zeros(a.lo() + b.lo(), a.hi() + b.hi());
  auto& c = out.coeffs();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) == std::complex<Real>(0)) continue;
    c.segment(i, y.size()) += x(i) * y;
  }
  return out;
}

/// The function z -> conj(a(z)) on T: c_n -> conj(c_{-n}).
template <typename Real>
CoeffVec<Real> conj_reflect(const CoeffVec<Real>& a) {
  if (a.empty()) return CoeffVec<Real>();
  return CoeffVec<Real>(-a.hi(), a.coeffs().reverse().conjugate());
}

/// Multiplication by z^k (index shift).
template <typename Real>
CoeffVec<Real> shift(const CoeffVec<Real>& a, int k) {
  return CoeffVec<Real>(a.lo() + k, a.coeffs());
}

template <typename Real>
CoeffVec<Real> operator+(const CoeffVec<Real>& a, const CoeffVec<Real>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  CoeffVec<Real> out = a.window(lo, hi);
  out.coeffs().segment(b.lo() - lo, b.size()) += b.coeffs();
  return out;
}

template <typename Real>
CoeffVec<Real> operator*(std::complex<Real> s, const CoeffVec<Real>& a) {
  return CoeffVec<Real>(a.lo(), s * a.coeffs());
}

template <typename Real>
CoeffVec<Real> operator-(const CoeffVec<Real>& a, const CoeffVec<Real>& b) {
  return a + std::complex<Real>(-1) * b;
}

/// Index-wise comparison with an absolute tolerance.
template <typename Real>
bool approx_equal(const CoeffVec<Real>& a, const CoeffVec<Real>& b, Real tol = Real(1e-12)) {
  const CoeffVec<Real> d = a - b;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d.coeffs()(i)) > tol) return false;
  }
  return true;
}

}  // namespace orbitframes
