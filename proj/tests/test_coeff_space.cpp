#include <doctest.h>

#include "orbitframes/blaschke.hpp"
#include "orbitframes/coeff_space.hpp"
#include "support.hpp"

using namespace orbitframes;
using namespace orbitframes::testing;

namespace {

const Complex I1(0.0, 1.0);

CoeffVecd from(int lo, std::initializer_list<Complex> c) {
  CoeffVecd::Storage s(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (const auto& x : c) s(i++) = x;
  return CoeffVecd(lo, s);
}

CoeffVecd random_coeffs(Rng& rng, int lo, int hi) {
  CoeffVecd::Storage s(hi - lo + 1);
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = random_complex(rng);
  return CoeffVecd(lo, s);
}

SparseCoeffs sparse(const CoeffVecd& a) {
  SparseCoeffs m;
  for (int n = a.lo(); n <= a.hi(); ++n) m[n] = a[n];
  return m;
}

}  // namespace

TEST_CASE("inner product of monomials") {
  const auto z = CoeffVecd::monomial(1);
  CHECK(inner_product(z, z) == Complex(1.0));
  CHECK(inner_product(CoeffVecd::one(), z) == Complex(0.0));
}

TEST_CASE("inner product matches the direct-sum oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CoeffVecd a = random_coeffs(rng, -3, 5);
    const CoeffVecd b = random_coeffs(rng, -1, 7);
    CHECK(std::abs(inner_product(a, b) - oracle_inner_product(sparse(a), sparse(b))) < 1e-14);
  }
}

TEST_CASE("Parseval for the stored window") {
  Rng rng(3);
  const CoeffVecd a = random_coeffs(rng, -4, 9);
  double direct = 0.0;
  for (int n = a.lo(); n <= a.hi(); ++n) direct += std::norm(a[n]);
  CHECK(std::abs(inner_product(a, a)) == doctest::Approx(direct).epsilon(1e-15));
  CHECK(inner_product(a, a).imag() == 0.0);
}

TEST_CASE("plus/minus projections split indices") {
  const CoeffVecd a = from(-1, {1.0, 1.0, 1.0});
  CHECK(approx_equal(project_plus(a), from(0, {1.0, 1.0})));
  CHECK(approx_equal(project_minus(a), from(-1, {1.0})));

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const CoeffVecd b = random_coeffs(rng, -6, 6);
    const CoeffVecd p = project_plus(b);
    const CoeffVecd m = project_minus(b);
    CHECK(approx_equal(p + m, b, 0.0));
    CHECK(approx_equal(project_plus(p), p, 0.0));
    CHECK(approx_equal(project_minus(m), m, 0.0));
    CHECK(project_plus(m).norm() == 0.0);
    CHECK(project_minus(p).norm() == 0.0);
  }
  CHECK(project_minus(CoeffVecd::one()).empty());
  CHECK(project_plus(CoeffVecd::monomial(-2)).empty());
}

TEST_CASE("multiply is convolution") {
  const auto z = CoeffVecd::monomial(1);
  const CoeffVecd z2 = multiply(z, z);
  CHECK(z2.lo() == 2);
  CHECK(z2.hi() == 2);
  CHECK(z2[2] == Complex(1.0));

  Rng rng(8);
  const CoeffVecd a = random_coeffs(rng, -2, 4);
  const CoeffVecd b = random_coeffs(rng, 0, 3);
  const CoeffVecd c = random_coeffs(rng, -5, -1);
  CHECK(approx_equal(multiply(CoeffVecd::one(), a), a, 0.0));
  const CoeffVecd ab = multiply(a, b);
  CHECK(ab.lo() == a.lo() + b.lo());
  CHECK(ab.hi() == a.hi() + b.hi());
  CHECK(approx_equal(ab, multiply(b, a), 1e-13));
  CHECK(approx_equal(multiply(ab, c), multiply(a, multiply(b, c)), 1e-12));
  // Multiplication by z is an isometry.
  CHECK(std::abs(inner_product(multiply(z, a), multiply(z, c)) - inner_product(a, c)) < 1e-14);
}

TEST_CASE("single factor times its reflection is 1 on the circle") {
  // h(z) = (z - a) / (1 - a z), truncated at degree 60; |h| = 1 on T.
  const double a = 0.5;
  const BlaschkeProduct<double> h(ZeroSequence<double>{Complex(a)});
  const CoeffVecd taylor = taylor_coeffs(h, 60);
  const CoeffVecd prod = multiply(taylor, conj_reflect(taylor));
  CHECK(std::abs(prod[0] - 1.0) < 1e-12);
  double worst = 0.0;
  for (int n = prod.lo(); n <= prod.hi(); ++n) {
    if (n != 0) worst = std::max(worst, std::abs(prod[n]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("conj_reflect") {
  CHECK(approx_equal(conj_reflect(CoeffVecd::monomial(1)), CoeffVecd::monomial(-1), 0.0));
  CHECK(approx_equal(conj_reflect(from(0, {1.0, I1})), from(-1, {-I1, 1.0}), 0.0));
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const CoeffVecd a = random_coeffs(rng, -3, 8);
    CHECK(approx_equal(conj_reflect(conj_reflect(a)), a, 0.0));
  }
}

TEST_CASE("window and trim") {
  const CoeffVecd a = from(-2, {0.0, 1.0, 2.0, 0.0});
  const CoeffVecd t = a.trimmed();
  CHECK(t.lo() == -1);
  CHECK(t.hi() == 0);
  CHECK(approx_equal(t, a, 0.0));
  const CoeffVecd w = a.window(0, 5);
  CHECK(w.size() == 6);
  CHECK(w[0] == Complex(2.0));
  CHECK(w[-1] == Complex(0.0));
  CHECK(CoeffVecd::zeros(0, 3).trimmed().empty());
}

TEST_CASE("approx_equal uses an absolute tolerance") {
  const CoeffVecd a = from(0, {1.0, 2.0});
  const CoeffVecd b = from(0, {1.0, 2.0 + 1e-13});
  CHECK(approx_equal(a, b));
  CHECK_FALSE(approx_equal(a, b, 1e-14));
  CHECK(approx_equal(a, from(0, {1.0, 2.0, 0.0})));
}
