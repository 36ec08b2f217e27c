#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles/oracle_values.hpp"
#include "sl2c/errors.hpp"
#include "sl2c/kernels.hpp"

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

const SpinLabel kA1{0, 0.3}, kA2{0, 0.7}, kA3{0, 1.1};
const PointPair kP1 = PointPair::at(0.0), kP2 = PointPair::at(1.0), kP3 = PointPair::at({0.0, 2.0});

}  // namespace

TEST_CASE("cg_exponents") {
  const CgExponentTriple e = cg_exponents({0, 1.0}, {0, 2.0}, {0, 3.0});
  CHECK(std::abs(e.e12.hol() - cplx(0.5, 3.0)) < 1e-15);
  CHECK(std::abs(e.e12.anti() - cplx(0.5, 3.0)) < 1e-15);
  CHECK(e.e12.n() == 0);
  const CgExponentTriple f = cg_exponents({1, 0.0}, {1, 0.0}, {0, 0.0});
  CHECK(f.e12.hol() == cplx(1.0));
  CHECK(f.e12.anti() == cplx(0.0));
  CHECK(f.e12.n() == 1);
  CHECK(kind_of([] { cg_exponents({1, 0.2}, {0, 0.1}, {0, 0.4}); }) == ErrorKind::ParityViolation);
}

TEST_CASE("w_kernel value and errors") {
  const cplx w = w_kernel({0, 1.0}, {0, 2.0}, {0, 3.0}, kP1, kP2, kP3);
  CHECK(rel(w, oracle::kWKernel) < 1e-12);
  CHECK(kind_of([] { w_kernel(kA1, kA2, kA3, kP1, kP1, kP3); }) == ErrorKind::CoincidentPoints);
  CHECK(kind_of([] { w_kernel({1, 0.3}, kA2, kA3, kP1, kP2, kP3); }) == ErrorKind::ParityViolation);
}

TEST_CASE("w_kernel translation and conjugation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(-2.0, 2.0), s(-2.0, 2.0);
  std::uniform_int_distribution<int> m(-3, 3);
  int done = 0;
  while (done < 300) {
    const SpinLabel a1{m(rng), s(rng)}, a2{m(rng), s(rng)}, a3{m(rng), s(rng)};
    if ((a1.m + a2.m + a3.m) % 2 != 0) continue;
    const cplx z1{x(rng), x(rng)}, z2{x(rng), x(rng)}, z3{x(rng), x(rng)}, t{x(rng), x(rng)};
    const cplx w = w_kernel(a1, a2, a3, PointPair::at(z1), PointPair::at(z2), PointPair::at(z3));
    const cplx moved = w_kernel(a1, a2, a3, PointPair::at(z1 + t), PointPair::at(z2 + t),
                                PointPair::at(z3 + t));
    CHECK(rel(moved, w) < 1e-12);
    const cplx flipped = w_kernel(a1.negated(), a2.negated(), a3.negated(), PointPair::at(z1),
                                  PointPair::at(z2), PointPair::at(z3));
    CHECK(rel(std::conj(w), flipped) < 1e-12);
    ++done;
  }
}

TEST_CASE("w asymptotics") {
  const double r3 = w_asymptotic_residual(kA1, kA2, kA3, 1e3);
  const double r4 = w_asymptotic_residual(kA1, kA2, kA3, 1e4);
  CHECK(r3 / r4 == doctest::Approx(10.0).epsilon(0.3));
  const SpinLabel z{0, 0.0};
  CHECK(w_asymptotic_residual(z, z, z, 1e4) < w_asymptotic_residual(z, z, z, 1e2));
  CHECK(w_asymptotic_residual(z, z, z, 1e6) < 1e-5);
  CHECK(kind_of([] { w_asymptotic_residual({1, 0.0}, kA2, kA3, 10.0); }) ==
        ErrorKind::ParityViolation);
}

TEST_CASE("coefficients against the gamma oracle") {
  for (const auto& c : oracle::kCoefficients) {
    const SpinLabel a1{c.m[0], c.sigma[0]}, a2{c.m[1], c.sigma[1]}, a3{c.m[2], c.sigma[2]};
    CHECK(rel(coefficient_A(a1, a2, a3), c.A) < 1e-12);
    CHECK(rel(coefficient_B(a1, a2, a3), c.B) < 1e-12);
  }
}

TEST_CASE("coefficient poles") {
  // abar3 = 0 puts a(1 + a3) = Gamma(-abar3) / Gamma(1 + a3) on a pole.
  CHECK(kind_of([] { coefficient_A({0, 0.3}, {0, 0.7}, {0, 0.0}); }) == ErrorKind::PoleAtArgument);
  CHECK(kind_of([] { coefficient_B({0, 0.3}, {0, 0.7}, {0, 0.0}); }) == ErrorKind::PoleAtArgument);
  CHECK(kind_of([] { coefficient_A({1, 0.3}, kA2, kA3); }) == ErrorKind::ParityViolation);
}

TEST_CASE("weight_rho") {
  const double expected = 1.0 / (4.0 * kPi * kPi * kPi * kPi);
  CHECK(weight_rho({0, 1.0}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(weight_rho({2, 0.0}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(weight_rho({0, 0.0}) == 0.0);
}

TEST_CASE("completeness residual") {
  CHECK(std::abs(completeness_residual(kA1, kA2, kA3)) < 1e-12);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> s(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    CHECK(std::abs(completeness_residual({2, s(rng)}, {0, s(rng)}, {0, s(rng)})) < 1e-12);
  }
  CHECK(kind_of([] { completeness_residual({1, 0.2}, {0, 0.4}, {0, 0.5}); }) ==
        ErrorKind::ParityViolation);
}

TEST_CASE("generator_apply") {
  const BalancedExponent alpha({0.7, 0.2}, {-0.3, 0.2});
  const PointFunction power = [&](const PointPair& q) { return bracket_pow(q, alpha); };
  const PointPair p = PointPair::at({0.8, -0.5});
  const cplx exact = -alpha.hol() * std::pow(p.z(), alpha.hol() - 1.0) * std::pow(p.zbar(), alpha.anti());
  const GeneratorComponent e21{GeneratorIndex::E21, false, BalancedExponent(0.5, 0.5)};
  const double err1 = std::abs(generator_apply(e21, power, p, 1e-3) - exact);
  const double err2 = std::abs(generator_apply(e21, power, p, 5e-4) - exact);
  CHECK(err1 / std::abs(exact) < 1e-5);
  CHECK(err1 / err2 == doctest::Approx(4.0).epsilon(0.2));

  for (bool barred : {false, true}) {
    const GeneratorComponent e11{GeneratorIndex::E11, barred, alpha};
    const GeneratorComponent e22{GeneratorIndex::E22, barred, alpha};
    CHECK(generator_apply(e11, power, p, 1e-4) + generator_apply(e22, power, p, 1e-4) == 0.0);
  }

  const PointFunction holomorphic = [](const PointPair& q) { return q.z() * q.z() * q.z(); };
  const GeneratorComponent bar21{GeneratorIndex::E21, true, alpha};
  CHECK(std::abs(generator_apply(bar21, holomorphic, p, 1e-4)) == 0.0);

  CHECK(kind_of([&] { generator_apply(e21, power, p, 1e-2); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { generator_apply(e21, power, p, 1e-7); }) == ErrorKind::InvalidArgument);
  const PointFunction singular = [](const PointPair& q) { return 1.0 / q.z(); };
  CHECK(kind_of([&] { generator_apply(e21, singular, PointPair::at(1e-4), 1e-4); }) ==
        ErrorKind::DomainError);
}

TEST_CASE("covariance residual") {
  const double w = std::abs(w_kernel(kA1, kA2, kA3, kP1, kP2, kP3));
  const cplx r1 = covariance_residual(kA1, kA2, kA3, kP1, kP2, kP3, GeneratorIndex::E12, false, 1e-4);
  const cplx r2 = covariance_residual(kA1, kA2, kA3, kP1, kP2, kP3, GeneratorIndex::E12, false, 5e-5);
  CHECK(std::abs(r1) / w < 1e-6);
  CHECK(std::abs(r1) / std::abs(r2) == doctest::Approx(4.0).epsilon(0.2));
  for (bool barred : {false, true}) {
    const cplx c11 = covariance_residual(kA1, kA2, kA3, kP1, kP2, kP3, GeneratorIndex::E11, barred, 1e-4);
    const cplx c22 = covariance_residual(kA1, kA2, kA3, kP1, kP2, kP3, GeneratorIndex::E22, barred, 1e-4);
    CHECK(c22 == -c11);
  }
}
