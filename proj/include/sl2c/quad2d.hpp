#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sl2c/exponents.hpp"

namespace sl2c {

// f behaves like c * [w - location]^{-exponent} near location.
struct Singularity {
  cplx location;
  BalancedExponent exponent;
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double abs_err = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

using PlaneIntegrand = std::function<cplx(const PointPair&)>;

inline constexpr std::int64_t kDefaultBudget = 10'000'000;

// Integral of f over the plane (measure d^2w = dRe dIm). |f| must fall off
// like |w|^{-decay_exponent} at infinity. Running out of budget is not an
// error: the result comes back with converged = false.
QuadratureResult integrate_plane(const PlaneIntegrand& f, std::span<const Singularity> sing,
                                 double decay_exponent, double tol,
                                 std::int64_t budget = kDefaultBudget);

struct IdentityCheck {
  double residual = 0.0;  // |numeric - closed_form| / |closed_form|
  cplx numeric;
  cplx closed_form;
  QuadratureResult quad;
};

// pi a(alpha, beta, gamma) / [z2 - z1]^{alpha + beta - 1}, gamma = 2 - alpha - beta.
cplx chain_closed_form(const BalancedExponent& alpha, const BalancedExponent& beta, cplx z1,
                       cplx z2);
// Integral of [z1 - w]^{-alpha} [w - z2]^{-beta} against the closed form.
// The quadrature runs at tol / 100.
IdentityCheck verify_chain(const BalancedExponent& alpha, const BalancedExponent& beta, cplx z1,
                           cplx z2, double tol, std::int64_t budget = kDefaultBudget);

// Requires alpha + beta + gamma = 2 in both components (UniquenessViolation).
cplx star_closed_form(const BalancedExponent& alpha, const BalancedExponent& beta,
                      const BalancedExponent& gamma, cplx z1, cplx z2, cplx z3);
IdentityCheck verify_star(const BalancedExponent& alpha, const BalancedExponent& beta,
                          const BalancedExponent& gamma, cplx z1, cplx z2, cplx z3, double tol,
                          std::int64_t budget = kDefaultBudget);

// V(z; A, B, C) = integral of [y - 1]^{-A} [-y]^{-B} [z - y]^{-C} d^2y.
QuadratureResult triangle_direct(const PointPair& p, const BalancedExponent& A,
                                 const BalancedExponent& B, const BalancedExponent& C, double tol,
                                 std::int64_t budget = kDefaultBudget);

// Conjugated Phi_1 as a three-propagator vertex integral.
QuadratureResult phi1_direct(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             const SpinLabel& l, const SpinLabel& cp, const PointPair& p,
                             double tol, std::int64_t budget = kDefaultBudget);

// How the third propagator of Phi_2 is read. Vertex: [z0 - z], the integration
// variable joins the external point. Detached: [z1 - z] with an independent
// point z1, which leaves a two-propagator integral with only |z0|^-2 decay.
enum class Phi2Reading { Vertex, Detached };

QuadratureResult phi2_direct(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             const SpinLabel& l, const SpinLabel& c, const PointPair& p,
                             double tol, std::int64_t budget = kDefaultBudget,
                             Phi2Reading reading = Phi2Reading::Vertex, cplx z1 = 0.0);

}  // namespace sl2c
