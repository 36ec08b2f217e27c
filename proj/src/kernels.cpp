#include "sl2c/kernels.hpp"

#include <cmath>
#include <string>

#include "sl2c/errors.hpp"

namespace sl2c {

namespace {

const BalancedExponent kOne = BalancedExponent::scalar(1.0);

void require_distinct(const PointPair& a, const PointPair& b) {
  if (a.z() == b.z() || a.zbar() == b.zbar()) {
    fail(ErrorKind::CoincidentPoints, "kernel points must be pairwise distinct");
  }
}

}  // namespace

void require_even(int m_sum, const char* what) {
  if (m_sum % 2 != 0) {
    fail(ErrorKind::ParityViolation, std::string(what) + " = " + std::to_string(m_sum) + " is odd");
  }
}

CgExponentTriple cg_exponents(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3) {
  require_even(a1.m + a2.m + a3.m, "m1 + m2 + m3");
  const BalancedExponent x1 = a1.exponent();
  const BalancedExponent x2 = a2.exponent();
  const BalancedExponent x3 = a3.exponent();
  return {(kOne + x1 + x2 + x3).half(), (kOne + x1 - x2 - x3).half(),
          (kOne - x1 + x2 - x3).half()};
}

cplx w_kernel(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
              const PointPair& p1, const PointPair& p2, const PointPair& p3) {
  const CgExponentTriple e = cg_exponents(a1, a2, a3);
  require_distinct(p1, p2);
  require_distinct(p1, p3);
  require_distinct(p2, p3);
  return bracket_pow(p2 - p1, -e.e12) * bracket_pow(p3 - p1, -e.e13) *
         bracket_pow(p2 - p3, -e.e23);
}

double w_asymptotic_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             double R) {
  const CgExponentTriple e = cg_exponents(a1, a2, a3);
  const PointPair p2 = PointPair::at({0.3, 0.2});
  const PointPair p3 = PointPair::at({-0.4, 0.5});
  const PointPair p1 = PointPair::at(std::polar(R, kPi / 5.0));
  const cplx w = w_kernel(a1, a2, a3, p1, p2, p3);
  const cplx scaled = bracket_pow(p1, kOne + a1.exponent()) * w;
  const cplx leading = sign_pow(a1.m) * bracket_pow(p2 - p3, -e.e23);
  return std::abs(scaled - leading);
}

cplx coefficient_A(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3) {
  require_even(a1.m + a2.m + a3.m, "m1 + m2 + m3");
  const BalancedExponent x1 = a1.exponent();
  const BalancedExponent x2 = a2.exponent();
  const BalancedExponent x3 = a3.exponent();
  const cplx den = a_func((kOne + x1 - x2 + x3).half());
  if (den == 0.0) fail(ErrorKind::PoleAtArgument, "coefficient_A denominator vanishes");
  return kPi * a_prod({(kOne + x1 - x2 - x3).half(), kOne + x3}) / den;
}

cplx coefficient_B(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3) {
  require_even(a1.m + a2.m + a3.m, "m1 + m2 + m3");
  const BalancedExponent x1 = a1.exponent();
  const BalancedExponent x2 = a2.exponent();
  const BalancedExponent x3 = a3.exponent();
  const cplx den = a_func((kOne - x1 + x2 + x3).half());
  if (den == 0.0) fail(ErrorKind::PoleAtArgument, "coefficient_B denominator vanishes");
  return 4.0 * kPi * kPi * kPi * a_prod({(kOne - x1 + x2 - x3).half(), kOne + x3}) / den;
}

double weight_rho(const SpinLabel& a) {
  const double pi4 = kPi * kPi * kPi * kPi;
  return (0.25 * a.m * a.m + a.sigma * a.sigma) / (4.0 * pi4);
}

cplx completeness_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a) {
  require_even(a1.m + a2.m + a.m, "m1 + m2 + m");
  const cplx product = weight_rho(a) * coefficient_A(a1.negated(), a2.negated(), a.negated()) *
                       coefficient_B(a1, a2, a);
  return product - sign_pow(a.m);
}

cplx generator_apply(const GeneratorComponent& g, const PointFunction& f, const PointPair& p,
                     double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) {
    fail(ErrorKind::InvalidArgument, "finite-difference step must lie in [1e-6, 1e-3]");
  }
  auto eval = [&](const PointPair& q) {
    cplx v;
    try {
      v = f(q);
    } catch (const Error& err) {
      fail(ErrorKind::DomainError, std::string("singularity inside the stencil: ") + err.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      fail(ErrorKind::DomainError, "non-finite value inside the stencil");
    }
    return v;
  };
  const cplx x = g.barred ? p.zbar() : p.z();
  auto shifted = [&](double dx) {
    return g.barred ? PointPair::independent(p.z(), p.zbar() + dx)
                    : PointPair::independent(p.z() + dx, p.zbar());
  };
  const cplx deriv = (eval(shifted(h)) - eval(shifted(-h))) / (2.0 * h);
  const cplx s = g.spin();
  switch (g.index) {
    case GeneratorIndex::E11: return x * deriv - s * eval(p);
    case GeneratorIndex::E22: return -(x * deriv - s * eval(p));
    case GeneratorIndex::E21: return -deriv;
    case GeneratorIndex::E12: return x * x * deriv - 2.0 * s * x * eval(p);
  }
  return 0.0;
}

cplx covariance_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                         const PointPair& p1, const PointPair& p2, const PointPair& p3,
                         GeneratorIndex index, bool barred, double h) {
  cg_exponents(a1, a2, a3);
  const GeneratorComponent g1{index, barred, a1.negated().exponent()};
  const GeneratorComponent g2{index, barred, a2.negated().exponent()};
  const GeneratorComponent g3{index, barred, a3.exponent()};
  const PointFunction f1 = [&](const PointPair& q) { return w_kernel(a1, a2, a3, q, p2, p3); };
  const PointFunction f2 = [&](const PointPair& q) { return w_kernel(a1, a2, a3, p1, q, p3); };
  const PointFunction f3 = [&](const PointPair& q) { return w_kernel(a1, a2, a3, p1, p2, q); };
  return generator_apply(g1, f1, p1, h) + generator_apply(g2, f2, p2, h) +
         generator_apply(g3, f3, p3, h);
}

}  // namespace sl2c
