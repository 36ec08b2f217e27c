#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sl2c/exponents.hpp"

namespace sl2c {

// The nu-line Im(nu) = eta, truncated to |Re nu| <= nu_max and |n| <= n_max.
struct ContourSpec {
  double eta = -0.5;
  double nu_max = 120.0;
  int n_max = 80;
  int nodes_per_unit = 16;
  double pole_clearance = 1e-3;

  void validate() const;
};

struct MbDiagnostics {
  std::vector<std::pair<int, double>> per_n_magnitudes;
  double tail_estimate = 0.0;
  double min_pole_distance = 0.0;
  bool separated = true;  // every pole family on its own side of the line
  std::string method;     // "windowed" or "extrapolated"
  std::int64_t evaluations = 0;
};

struct MbResult {
  cplx value{0.0, 0.0};
  MbDiagnostics diagnostics;
  bool converged = false;
};

// Throws TruncationNotConverged unless r.converged.
const MbResult& require_converged(const MbResult& r);

// s = ((n + i nu)/2, (-n + i nu)/2).
BalancedExponent s_of(int n, cplx nu);

// a(offset + sign * s), sign = +1 or -1.
struct ShiftedA {
  BalancedExponent offset;
  int sign = 1;
};

// prefactor * sum_n integral dnu  prod a(num) / prod a(den) * [base]^s.
struct MbIntegrand {
  std::vector<ShiftedA> numerator;
  std::vector<ShiftedA> denominator;
  std::optional<PointPair> power_base;
  cplx prefactor{1.0, 0.0};
};

// Poles of every Gamma factor for |n| <= n_max, with numerator/denominator
// cancellations. Reports the closest approach to the line and whether each
// upward (downward) family lies entirely above (below) it.
MbDiagnostics pole_scan(const MbIntegrand& integrand, const ContourSpec& spec);

// Engine: pole check, then the smoothly windowed lattice sum. The windowed
// partial sums at several window scales either stand on their own
// (oscillatory integrands) or feed a polynomial extrapolation in the inverse
// window scale; the candidate with the smaller internal error is returned.
MbResult evaluate_mb(const MbIntegrand& integrand, const ContourSpec& spec, double tol);

inline constexpr double kMbDefaultTol = 1e-8;

// 1/[z - y]^alpha via its Mellin-Barnes representation. Requires
// 0 < Re(hol + anti)/2 < 1.
MbResult mb_propagator(const PointPair& z, const PointPair& y, const BalancedExponent& alpha,
                       const ContourSpec& spec, double tol = kMbDefaultTol);

MbIntegrand racah_mb1_integrand(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                                const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp);
MbIntegrand racah_mb2_integrand(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                                const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp);

MbResult racah_mb1(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                   const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp,
                   const ContourSpec& spec, double tol = kMbDefaultTol);
MbResult racah_mb2(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                   const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp,
                   const ContourSpec& spec, double tol = kMbDefaultTol);

// V(z; A, B, C) = a(A) / (4 a(1 - C)) [z]^{-C}
//   sum_n int dnu a(1 - s) a(1 + s - C) a(B + s) a(2 - A - B - s) [z]^s.
MbResult triangle_mb(const PointPair& p, const BalancedExponent& A, const BalancedExponent& B,
                     const BalancedExponent& C, const ContourSpec& spec,
                     double tol = kMbDefaultTol);

MbResult phi1_mb(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                 const SpinLabel& l, const SpinLabel& cp, const PointPair& p,
                 const ContourSpec& spec, double tol = kMbDefaultTol);
MbResult phi2_mb(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                 const SpinLabel& l, const SpinLabel& c, const PointPair& p,
                 const ContourSpec& spec, double tol = kMbDefaultTol);

}  // namespace sl2c
