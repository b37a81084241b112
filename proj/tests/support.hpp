#pragma once

// Random generators and independent reference computations for the tests.
// Nothing here calls into the routines it is used to check.

#include "orbitframes/blaschke.hpp"
#include "orbitframes/linalg.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace orbitframes::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline VectorXcd random_vector(Rng& rng, Eigen::Index d) {
  VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = random_complex(rng);
  return v;
}

inline MatrixXcd random_matrix(Rng& rng, Eigen::Index d) {
  MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = random_complex(rng);
  return m;
}

inline MatrixXcd random_unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<MatrixXcd> qr(random_matrix(rng, d));
  return qr.householderQ() * MatrixXcd::Identity(d, d);
}

/// Q1 diag(s) Q2 with singular values spread geometrically over [1, cond].
inline MatrixXcd random_with_condition(Rng& rng, Eigen::Index d, double cond) {
  VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i) s(i) = d == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / (d - 1));
  return random_unitary(rng, d) * s.cast<Complex>().asDiagonal() * random_unitary(rng, d);
}

/// Point in the disk with modulus uniform in [0, rmax].
inline Complex random_disk_point(Rng& rng, double rmax) {
  std::uniform_real_distribution<double> r(0.0, rmax);
  std::uniform_real_distribution<double> t(0.0, 2.0 * std::numbers::pi);
  return std::polar(r(rng), t(rng));
}

inline ZeroSequence<double> random_zeros(Rng& rng, int degree, double rmax) {
  std::vector<Complex> z;
  for (int j = 0; j < degree; ++j) z.push_back(random_disk_point(rng, rmax));
  return ZeroSequence<double>(z);
}

/// Sparse representation used by the brute-force oracles.
using SparseCoeffs = std::map<int, Complex>;

inline Complex oracle_inner_product(const SparseCoeffs& a, const SparseCoeffs& b) {
  Complex s = 0.0;
  for (const auto& [n, an] : a) {
    auto it = b.find(n);
    if (it != b.end()) s += an * std::conj(it->second);
  }
  return s;
}

/// delta through the identity 1 - rho^2 = (1-|a|^2)(1-|b|^2) / |1 - conj(a) b|^2,
/// in long double.
inline long double oracle_carleson_delta(const std::vector<Complex>& zeros) {
  long double best = 1.0L;
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    long double prod = 1.0L;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
      if (k == j) continue;
      const std::complex<long double> a(zeros[j].real(), zeros[j].imag());
      const std::complex<long double> b(zeros[k].real(), zeros[k].imag());
      const long double one_minus = (1.0L - std::norm(a)) * (1.0L - std::norm(b)) / std::norm(1.0L - std::conj(a) * b);
      prod *= std::sqrt(1.0L - one_minus);
    }
    best = std::min(best, prod);
  }
  return best;
}

/// Compressed shift in the Takenaka-Malmquist basis from its closed form:
/// diagonal l_k, and for k > j the entry
/// sqrt(1-|l_j|^2) sqrt(1-|l_k|^2) prod_{j<m<k} (-conj(l_m)).
inline MatrixXcd oracle_tm_shift(const std::vector<Complex>& zeros) {
  const auto d = static_cast<Eigen::Index>(zeros.size());
  MatrixXcd a = MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    a(k, k) = zeros[static_cast<std::size_t>(k)];
    for (Eigen::Index j = 0; j < k; ++j) {
      Complex p = std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(j)])) *
                  std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(k)]));
      for (Eigen::Index m = j + 1; m < k; ++m) p *= -std::conj(zeros[static_cast<std::size_t>(m)]);
      a(k, j) = p;
    }
  }
  return a;
}

/// Frame operator of the diagonal orbit (diag(l) ^n c)_{n=0..N} from the
/// geometric-series closed form of each entry.
inline MatrixXcd oracle_diagonal_frame_operator(const std::vector<Complex>& zeros, const std::vector<Complex>& c,
                                                int n_max) {
  const auto d = static_cast<Eigen::Index>(zeros.size());
  MatrixXcd s(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Complex q = zeros[static_cast<std::size_t>(a)] * std::conj(zeros[static_cast<std::size_t>(b)]);
      const Complex sum = (1.0 - std::pow(q, n_max + 1)) / (1.0 - q);
      s(a, b) = c[static_cast<std::size_t>(a)] * std::conj(c[static_cast<std::size_t>(b)]) * sum;
    }
  }
  return s;
}

}  // namespace orbitframes::testing
