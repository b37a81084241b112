#include <doctest.h>

#include "orbitframes/blaschke.hpp"
#include "support.hpp"

#include <algorithm>

using namespace orbitframes;
using namespace orbitframes::testing;

TEST_CASE("zero sequences must lie strictly inside the disk") {
  CHECK_THROWS_AS(ZeroSequence<double>{Complex(1.0)}, InputError);
  CHECK_THROWS_AS(ZeroSequence<double>{Complex(0.0, 1.0 - 1e-11)}, InputError);
  CHECK_NOTHROW(ZeroSequence<double>{Complex(0.99999)});
  CHECK_THROWS_AS(carleson_delta(ZeroSequence<double>{}), InputError);
}

TEST_CASE("carleson_delta reference values") {
  CHECK(carleson_delta(ZeroSequence<double>{Complex(0.5)}) == 1.0);

  const Complex a(0.3, -0.4);
  const ZeroSequence<double> pair{Complex(0.0), a};
  // Both products equal the pseudo-hyperbolic distance |a|.
  CHECK(carleson_delta(pair) == doctest::Approx(std::abs(a)).epsilon(1e-15));

  std::vector<Complex> exp_seq;
  for (int j = 0; j < 5; ++j) exp_seq.emplace_back(1.0 - std::ldexp(1.0, -j - 1));
  const double delta = carleson_delta(ZeroSequence<double>(exp_seq));
  CHECK(std::abs(delta - static_cast<double>(oracle_carleson_delta(exp_seq))) < 1e-14);
  // mpmath, 40 digits.
  CHECK(delta == doctest::Approx(0.05189013884666058579).epsilon(1e-13));
}

TEST_CASE("carleson_delta is exactly zero for repeated zeros") {
  CHECK(carleson_delta(ZeroSequence<double>{Complex(0.2), Complex(0.5), Complex(0.2)}) == 0.0);
}

TEST_CASE("carleson_delta invariants") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Complex> z;
    for (int j = 0; j < 5; ++j) z.push_back(random_disk_point(rng, 0.95));
    const double d = carleson_delta(ZeroSequence<double>(z));
    CHECK(std::abs(d - static_cast<double>(oracle_carleson_delta(z))) < 1e-12);

    std::vector<Complex> shuffled = z;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(carleson_delta(ZeroSequence<double>(shuffled)) == doctest::Approx(d).epsilon(1e-13));

    std::vector<Complex> more = z;
    more.push_back(random_disk_point(rng, 0.95));
    CHECK(carleson_delta(ZeroSequence<double>(more)) <= d * (1.0 + 1e-14));
  }
}

TEST_CASE("delta_capacity") {
  CHECK(delta_capacity(1.0) == 2.0);
  CHECK(delta_capacity(std::exp(-0.5)) == doctest::Approx(29.55622439572260090892).epsilon(1e-14));
  CHECK(delta_capacity(0.5) == doctest::Approx(32.0 * (1.0 + 2.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(delta_capacity(0.5) == doctest::Approx(76.36141955583649980270).epsilon(1e-14));
  CHECK_THROWS_AS(delta_capacity(0.0), CertificateError);
  CHECK_THROWS_AS(delta_capacity(-0.1), CertificateError);
  CHECK_THROWS_AS(delta_capacity(1.5), InputError);

  double prev = delta_capacity(1e-3);
  for (double d = 2e-3; d <= 1.0; d += 1e-3) {
    const double cur = delta_capacity(d);
    CHECK(cur < prev);
    CHECK(cur >= 2.0);
    prev = cur;
  }
}

TEST_CASE("evaluate") {
  const BlaschkeProduct<double> z(ZeroSequence<double>{Complex(0.0)});
  CHECK(evaluate(z, Complex(0.3)) == Complex(0.3));
  const BlaschkeProduct<double> half(ZeroSequence<double>{Complex(0.5)});
  CHECK(std::abs(evaluate(half, Complex(1.0)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(evaluate(half, Complex(2.0)), PoleProximityError);

  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const BlaschkeProduct<double> b(random_zeros(rng, 5, 0.9), std::polar(1.0, 0.7));
    for (int i = 0; i < 256; ++i) {
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * i / 256.0);
      CHECK(std::abs(std::abs(evaluate(b, w)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("taylor coefficients") {
  const BlaschkeProduct<double> z(ZeroSequence<double>{Complex(0.0)});
  const CoeffVecd t = taylor_coeffs(z, 3);
  CHECK(t.lo() == 0);
  CHECK(t.size() == 4);
  CHECK(t[0] == Complex(0.0));
  CHECK(t[1] == Complex(1.0));
  CHECK(t[2] == Complex(0.0));
  CHECK(t[3] == Complex(0.0));
  CHECK_THROWS_AS(taylor_coeffs(BlaschkeProduct<double>(ZeroSequence<double>{Complex(0.1), Complex(0.2)}), 1),
                  InputError);
}

TEST_CASE("single-factor expansion matches the geometric series") {
  const Complex a(0.4, 0.3);
  const CoeffVecd t = taylor_coeffs(BlaschkeProduct<double>(ZeroSequence<double>{a}), 40);
  CHECK(std::abs(t[0] + a) < 1e-15);
  for (int n = 1; n <= 40; ++n) {
    const Complex expected = (1.0 - std::norm(a)) * std::pow(std::conj(a), n - 1);
    CHECK(std::abs(t[n] - expected) < 1e-15);
  }
}

TEST_CASE("truncated series agrees with pointwise evaluation inside the disk") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const BlaschkeProduct<double> b(random_zeros(rng, 3, 0.9));
    const int N = 60;
    const CoeffVecd t = taylor_coeffs(b, N);
    for (int i = 0; i < 32; ++i) {
      const Complex w = std::polar(0.5, 2.0 * std::numbers::pi * i / 32.0);
      Complex series = 0.0;
      Complex power = 1.0;
      for (int n = 0; n <= N; ++n) {
        series += t[n] * power;
        power *= w;
      }
      CHECK(std::abs(series - evaluate(b, w)) < std::pow(0.95, N));
    }
    // ||h||_{L^2} = 1: the partial energy is below 1 and the tail is tiny.
    CHECK(t.norm_squared() <= 1.0 + 1e-14);
    CHECK(taylor_tail_energy(t) < 1e-4);
    CHECK(taylor_tail_energy(taylor_coeffs(b, 400)) < 1e-14);
  }
}
