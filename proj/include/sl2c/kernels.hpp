#pragma once

#include <functional>

#include "sl2c/exponents.hpp"

namespace sl2c {

struct CgExponentTriple {
  BalancedExponent e12;
  BalancedExponent e13;
  BalancedExponent e23;
};

enum class GeneratorIndex { E11 = 11, E12 = 12, E21 = 21, E22 = 22 };

// One sl(2,C) generator in the representation with superscript label a,
// i.e. spin s = (a - 1)/2 (or sbar = (abar - 1)/2 for the barred copy).
struct GeneratorComponent {
  GeneratorIndex index = GeneratorIndex::E11;
  bool barred = false;
  BalancedExponent label;

  cplx spin() const { return barred ? 0.5 * (label.anti() - 1.0) : 0.5 * (label.hol() - 1.0); }
};

using PointFunction = std::function<cplx(const PointPair&)>;

// ParityViolation unless m1 + m2 + m3 is even.
void require_even(int m_sum, const char* what);

CgExponentTriple cg_exponents(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3);

// W = [z2 - z1]^{-e12} [z3 - z1]^{-e13} [z2 - z3]^{-e23}.
cplx w_kernel(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
              const PointPair& p1, const PointPair& p2, const PointPair& p3);

// |[z1]^{1+a1} W - (-1)^{m1} [z2 - z3]^{-e23}| at |z1| = R with z2, z3 fixed.
// Since e12 + e13 = 1 + a1 the leading far-field factor of W carries the
// exponent 1 + a1, and the residual decays like 1/R.
double w_asymptotic_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             double R);

cplx coefficient_A(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3);
cplx coefficient_B(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3);
double weight_rho(const SpinLabel& a);

// rho(a) A(-a1, -a2, -a) B(a1, a2, a) - (-1)^m.
cplx completeness_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a);

// Applies the generator with central differences in z (zbar frozen) or in
// zbar (z frozen). Requires h in [1e-6, 1e-3].
cplx generator_apply(const GeneratorComponent& g, const PointFunction& f, const PointPair& p,
                     double h);

// (E^{-a1}_{z1} + E^{-a2}_{z2} + E^{a3}_{z3}) W for the chosen component.
cplx covariance_residual(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                         const PointPair& p1, const PointPair& p2, const PointPair& p3,
                         GeneratorIndex index, bool barred, double h);

}  // namespace sl2c
