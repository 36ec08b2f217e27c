#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles/oracle_values.hpp"
#include "sl2c/errors.hpp"
#include "sl2c/exponents.hpp"

using namespace sl2c;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an sl2c::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("balanced exponent snaps integer differences") {
  const BalancedExponent a({1.5, 0.2}, {0.5 + 1e-11, 0.2});
  CHECK(a.n() == 1);
  CHECK(std::abs(a.hol() - cplx(1.5, 0.2)) < 1e-11);
  CHECK(kind_of([] { BalancedExponent({0.5, 0.0}, {0.0, 0.0}); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { BalancedExponent({1.0, 0.0}, {0.0, 1e-6}); }) == ErrorKind::DomainError);
}

TEST_CASE("arithmetic keeps n exact") {
  const BalancedExponent a = BalancedExponent::from_center({0.3, 0.1}, 3);
  const BalancedExponent b = BalancedExponent::from_center({-0.7, 0.4}, -5);
  CHECK((a + b).n() == -2);
  CHECK((a - b).n() == 8);
  CHECK((-a).n() == -3);
  CHECK((1.0 - a).n() == -3);
  CHECK((a + b).half().n() == -1);
  CHECK(kind_of([&] { a.half(); }) == ErrorKind::DomainError);
  CHECK(a.swapped().hol() == a.anti());
}

TEST_CASE("spin label exponent") {
  const SpinLabel s{3, -0.25};
  const BalancedExponent e = s.exponent();
  CHECK(e.n() == 3);
  CHECK(e.hol() == cplx(1.5, -0.25));
  CHECK(e.anti() == cplx(-1.5, -0.25));
  CHECK(s.negated().exponent().hol() == -e.hol());
}

TEST_CASE("log_gamma") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(0.5) - 0.5723649429247001) < 1e-14);
  CHECK(kind_of([] { log_gamma(0.0); }) == ErrorKind::PoleAtArgument);
  CHECK(kind_of([] { log_gamma(-3.0); }) == ErrorKind::PoleAtArgument);
  for (const auto& c : oracle::kLogGamma) {
    CAPTURE(c.w);
    CHECK(std::abs(log_gamma(c.w) - c.value) < 1e-12 * std::max(1.0, std::abs(c.value)));
  }
}

TEST_CASE("log_gamma recurrence and conjugation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x(-6.0, 6.0);
  for (int k = 0; k < 500; ++k) {
    const cplx w{x(rng), x(rng)};
    if (std::abs(w.imag()) < 0.05) continue;
    const cplx lhs = log_gamma(w + 1.0);
    const cplx rhs = log_gamma(w) + std::log(w);
    // Equal modulo 2 pi i off the cut; exactly equal in the real part.
    const cplx diff = lhs - rhs;
    CHECK(std::abs(diff.real()) < 1e-12 * std::max(1.0, std::abs(lhs)));
    const double turns = diff.imag() / (2.0 * kPi);
    CHECK(std::abs(turns - std::round(turns)) < 1e-12 * std::max(1.0, std::abs(lhs)));
    CHECK(std::abs(log_gamma(std::conj(w)) - std::conj(log_gamma(w))) <
          1e-12 * std::max(1.0, std::abs(log_gamma(w))));
  }
}

TEST_CASE("a_func examples") {
  CHECK(std::abs(a_func(BalancedExponent(0.5, 0.5)) - 1.0) < 1e-14);
  CHECK(std::abs(a_func(BalancedExponent(1.5, 0.5)) - 2.0) < 1e-14);
  CHECK(kind_of([] { a_func(BalancedExponent(1.0, 1.0)); }) == ErrorKind::PoleAtArgument);
  CHECK(a_func(BalancedExponent(0.0, 0.0)) == 0.0);
  // Both Gammas singular: the limit -(-1)^(j+k) k!/j! at hol = -k, 1 - anti = -j.
  CHECK(a_func(BalancedExponent(0.0, 1.0)) == cplx(-1.0));
  CHECK(std::abs(a_func(BalancedExponent(-2.0, 2.0)) - cplx(2.0)) < 1e-14);
  for (const auto& c : oracle::kAFunc) {
    CAPTURE(c.hol);
    CHECK(rel(a_func(BalancedExponent(c.hol, c.anti)), c.value) < 1e-12);
  }
}

TEST_CASE("a_prod") {
  const BalancedExponent h(0.5, 0.5), q(0.75, 0.75);
  CHECK(std::abs(a_prod({h, h}) - 1.0) < 1e-14);
  CHECK(a_prod({BalancedExponent(1.5, 0.5), BalancedExponent(0.0, 0.0)}) == 0.0);
  CHECK(rel(a_prod({q, q, h}), oracle::kAProdQuarter) < 1e-13);
  try {
    a_prod({h, BalancedExponent(2.0, 2.0)});
    FAIL("expected PoleAtArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtArgument);
    CHECK(std::string(e.what()).find("factor 1") != std::string::npos);
  }
}

TEST_CASE("bar_reflect") {
  const BalancedExponent fixed = bar_reflect(BalancedExponent(0.5, 0.5));
  CHECK(fixed.hol() == cplx(0.5));
  CHECK(fixed.anti() == cplx(0.5));
  const BalancedExponent r = bar_reflect(BalancedExponent(1.5, 0.5));
  CHECK(r.hol() == cplx(0.5));
  CHECK(r.anti() == cplx(-0.5));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-4.0, 4.0);
  std::uniform_int_distribution<int> n(-4, 4);
  for (int k = 0; k < 200; ++k) {
    const BalancedExponent a = BalancedExponent::from_center({x(rng), x(rng)}, n(rng));
    const BalancedExponent b = bar_reflect(bar_reflect(a));
    CHECK(b.n() == a.n());
    CHECK(std::abs(b.center() - a.center()) < 1e-15);
  }
}

TEST_CASE("bracket_pow") {
  const BalancedExponent any({0.3, 0.8}, {-1.7, 0.8});
  CHECK(std::abs(bracket_pow(PointPair::at(1.0), any) - 1.0) < 1e-15);
  CHECK(std::abs(bracket_pow(PointPair::at(-1.0), BalancedExponent(1.5, 0.5)) + 1.0) < 1e-15);
  CHECK(std::abs(bracket_pow(PointPair::independent({0, 2}, {0, -2}), BalancedExponent(1.0, 0.0)) -
                 cplx(0, 2)) < 1e-15);
  CHECK(std::abs(bracket_pow(PointPair::at({0, 2}), BalancedExponent(1.0, 0.0)) - cplx(0, 2)) < 1e-15);
  CHECK(kind_of([] { bracket_pow(PointPair::at(0.0), BalancedExponent(-0.5, -0.5)); }) ==
        ErrorKind::DomainError);
  CHECK(bracket_pow(PointPair::at(0.0), BalancedExponent(0.5, 0.5)) == 0.0);

  const BalancedExponent alpha({0.7, 0.3}, {-0.3, 0.3});
  const PointPair z = PointPair::at({1.3, 0.4}), w = PointPair::at({0.0, -0.2});
  CHECK(rel(bracket_pow(z - w, alpha), sign_pow(alpha.n()) * bracket_pow(w - z, alpha)) < 1e-12);
}

TEST_CASE("bracket_pow flip identity on random inputs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(-3.0, 3.0);
  std::uniform_int_distribution<int> n(-5, 5);
  for (int k = 0; k < 1000; ++k) {
    const BalancedExponent a = BalancedExponent::from_center({x(rng), x(rng)}, n(rng));
    const PointPair p = PointPair::at({x(rng), x(rng)});
    CHECK(rel(bracket_pow(p, a), sign_pow(a.n()) * bracket_pow(-p, a)) < 1e-12);
  }
}

TEST_CASE("bracket_pow is continuous onto the conjugate slice") {
  const BalancedExponent a({0.4, 0.3}, {-1.6, 0.3});
  const cplx z{-0.8, 0.6};
  const cplx on = bracket_pow(PointPair::at(z), a);
  const cplx off = bracket_pow(PointPair::independent(z, std::conj(z) + 1e-9), a);
  CHECK(rel(off, on) < 1e-8);
}

TEST_CASE("phase_pow") {
  CHECK(phase_pow(2, PhaseBase::MinusOne) == cplx(1.0));
  CHECK(phase_pow(3, PhaseBase::MinusOne) == cplx(-1.0));
  CHECK(phase_pow(1, PhaseBase::I) == cplx(0.0, 1.0));
  CHECK(phase_pow(-1, PhaseBase::I) == cplx(0.0, -1.0));
  CHECK(phase_pow(6, PhaseBase::I) == cplx(-1.0));
  CHECK(sign_pow(-3) == -1.0);
}
