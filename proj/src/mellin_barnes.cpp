#include "sl2c/mellin_barnes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sl2c/errors.hpp"
#include "sl2c/kernels.hpp"
#include "sl2c/parallel.hpp"

namespace sl2c {

namespace {

constexpr std::array<double, 8> kExtScales = {1.0, 0.92, 0.84, 0.76, 0.68, 0.60, 0.52, 0.44};
constexpr std::array<double, 2> kRawScales = {1.0, 0.92};
constexpr double kExtFlat = 0.25;
constexpr double kRawFlat = 0.10;
constexpr int kExtOrder = 6;
constexpr double kMergeTol = 1e-9;

const BalancedExponent kOne = BalancedExponent::scalar(1.0);

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// 1 on [0, flat], 0 beyond 1.
double window(double x, double flat) {
  if (x <= flat) return 1.0;
  if (x >= 1.0) return 0.0;
  return smooth_step((1.0 - x) / (1.0 - flat));
}

struct GaussLegendre {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    g.w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

// Least-squares fit of S_j = S_inf + sum_{k < order} C_k lambda_j^{-(2+k)};
// returns S_inf. Householder QR on the real design matrix.
cplx extrapolate(const std::array<cplx, kExtScales.size()>& sums, int order) {
  constexpr int rows = static_cast<int>(kExtScales.size());
  const int cols = order + 1;
  std::vector<double> a(static_cast<std::size_t>(rows * cols));
  auto A = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r * cols + c)]; };
  std::array<double, rows> br{};
  std::array<double, rows> bi{};
  for (int r = 0; r < rows; ++r) {
    A(r, 0) = 1.0;
    for (int c = 1; c < cols; ++c) A(r, c) = std::pow(kExtScales[r], -(1.0 + c));
    br[r] = sums[r].real();
    bi[r] = sums[r].imag();
  }
  for (int c = 0; c < cols; ++c) {
    double norm = 0.0;
    for (int r = c; r < rows; ++r) norm += A(r, c) * A(r, c);
    norm = std::sqrt(norm);
    const double alpha = A(c, c) > 0 ? -norm : norm;
    std::vector<double> v(static_cast<std::size_t>(rows), 0.0);
    for (int r = c; r < rows; ++r) v[r] = A(r, c);
    v[c] -= alpha;
    double vnorm2 = 0.0;
    for (int r = c; r < rows; ++r) vnorm2 += v[r] * v[r];
    if (vnorm2 == 0.0) continue;
    for (int k = c; k < cols; ++k) {
      double dot = 0.0;
      for (int r = c; r < rows; ++r) dot += v[r] * A(r, k);
      for (int r = c; r < rows; ++r) A(r, k) -= 2.0 * dot / vnorm2 * v[r];
    }
    double dr = 0.0, di = 0.0;
    for (int r = c; r < rows; ++r) {
      dr += v[r] * br[r];
      di += v[r] * bi[r];
    }
    for (int r = c; r < rows; ++r) {
      br[r] -= 2.0 * dr / vnorm2 * v[r];
      bi[r] -= 2.0 * di / vnorm2 * v[r];
    }
  }
  std::vector<double> xr(static_cast<std::size_t>(cols)), xi(static_cast<std::size_t>(cols));
  for (int c = cols - 1; c >= 0; --c) {
    double sr = br[c], si = bi[c];
    for (int k = c + 1; k < cols; ++k) {
      sr -= A(c, k) * xr[k];
      si -= A(c, k) * xi[k];
    }
    xr[c] = sr / A(c, c);
    xi[c] = si / A(c, c);
  }
  return {xr[0], xi[0]};
}

// log of prod a(num) / prod a(den) * [base]^s at lattice point (n, nu).
struct LogIntegrand {
  const MbIntegrand& f;
  double log_abs_base = 0.0;
  double arg_base = 0.0;

  explicit LogIntegrand(const MbIntegrand& integrand) : f(integrand) {
    if (f.power_base) {
      log_abs_base = std::log(std::abs(f.power_base->z()));
      arg_base = std::arg(f.power_base->z());
    }
  }

  cplx operator()(int n, cplx nu) const {
    const cplx i(0.0, 1.0);
    const cplx s_hol = 0.5 * (static_cast<double>(n) + i * nu);
    const cplx s_anti = 0.5 * (static_cast<double>(-n) + i * nu);
    cplx total = 0.0;
    for (const ShiftedA& x : f.numerator) {
      total += detail::log_a_mod(x.offset.hol() + static_cast<double>(x.sign) * s_hol, x.offset.anti() + static_cast<double>(x.sign) * s_anti);
    }
    for (const ShiftedA& x : f.denominator) {
      total -= detail::log_a_mod(x.offset.hol() + static_cast<double>(x.sign) * s_hol, x.offset.anti() + static_cast<double>(x.sign) * s_anti);
    }
    if (f.power_base) total += i * nu * log_abs_base + i * (n * arg_base);
    return total;
  }
};

struct PoleEntry {
  double re;
  double im;
  int mult;
  bool up;
};

// Poles (mult +1) or zeros (mult -1) of Gamma(c + tau * s_part) in nu, where
// s_part is s.hol (holo) or s.anti, restricted to the band |Im nu - eta| <= band.
void add_gamma_family(std::vector<PoleEntry>& out, cplx c, int tau, bool holo, int n,
                      int mult, double eta, double band) {
  const double shift = holo ? n : -n;
  const double re = -2.0 * tau * c.imag();
  const double im0 = 2.0 * tau * c.real() + shift;
  const double lo = eta - band;
  const double hi = eta + band;
  for (int k = 0;; ++k) {
    const double im = im0 + 2.0 * tau * k;
    if (tau > 0 ? im > hi : im < lo) break;
    if (im < lo || im > hi) continue;
    out.push_back({re, im, mult, tau > 0});
  }
}

void add_factor(std::vector<PoleEntry>& out, const ShiftedA& x, int n, int sign, double eta,
                double band) {
  // a(x + sg s) = Gamma(1 - xbar - sg sbar) / Gamma(x + sg s).
  add_gamma_family(out, 1.0 - x.offset.anti(), -x.sign, false, n, sign, eta, band);
  add_gamma_family(out, x.offset.hol(), x.sign, true, n, -sign, eta, band);
}

}  // namespace

void ContourSpec::validate() const {
  if (!(eta > -1.0 && eta < 0.0)) fail(ErrorKind::InvalidArgument, "eta must lie in (-1, 0)");
  if (!(nu_max > 0.0)) fail(ErrorKind::InvalidArgument, "nu_max must be positive");
  if (n_max < 0) fail(ErrorKind::InvalidArgument, "n_max must be non-negative");
  if (nodes_per_unit < 2) fail(ErrorKind::InvalidArgument, "nodes_per_unit must be at least 2");
  if (!(pole_clearance > 0.0)) fail(ErrorKind::InvalidArgument, "pole_clearance must be positive");
}

const MbResult& require_converged(const MbResult& r) {
  if (!r.converged) {
    fail(ErrorKind::TruncationNotConverged,
         "tail estimate " + std::to_string(r.diagnostics.tail_estimate) +
             " exceeds the requested tolerance");
  }
  return r;
}

BalancedExponent s_of(int n, cplx nu) {
  return BalancedExponent::from_center(cplx(0.0, 0.5) * nu, n);
}

namespace {

// Poles closer than this need panels narrower than one unit.
constexpr double kNearPole = 0.5;

// Net poles closer to the line than a unit panel can resolve, as (Re nu, distance).
using NearPoles = std::vector<std::pair<double, double>>;

MbDiagnostics scan_poles(const MbIntegrand& integrand, const ContourSpec& spec, NearPoles* near) {
  MbDiagnostics diag;
  diag.min_pole_distance = INFINITY;
  double reach = 0.0;
  for (const auto* list : {&integrand.numerator, &integrand.denominator}) {
    for (const ShiftedA& x : *list) {
      reach = std::max({reach, std::abs(x.offset.hol().real()), std::abs(x.offset.anti().real())});
    }
  }
  const double band = 2.0 * spec.n_max + 4.0 * reach + 20.0;
  std::vector<PoleEntry> entries;
  for (int n = -spec.n_max; n <= spec.n_max; ++n) {
    entries.clear();
    for (const ShiftedA& x : integrand.numerator) add_factor(entries, x, n, +1, spec.eta, band);
    for (const ShiftedA& x : integrand.denominator) add_factor(entries, x, n, -1, spec.eta, band);
    std::sort(entries.begin(), entries.end(), [](const PoleEntry& a, const PoleEntry& b) {
      if (a.im != b.im) return a.im < b.im;
      return a.re < b.re;
    });
    std::vector<bool> used(entries.size(), false);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (used[i]) continue;
      int net = 0;
      bool any_up = false, any_down = false;
      for (std::size_t j = i; j < entries.size() && entries[j].im - entries[i].im <= kMergeTol; ++j) {
        if (used[j] || std::abs(entries[j].re - entries[i].re) > kMergeTol) continue;
        used[j] = true;
        net += entries[j].mult;
        if (entries[j].mult > 0) (entries[j].up ? any_up : any_down) = true;
      }
      if (net <= 0) continue;
      const double im = entries[i].im;
      const double dist = std::abs(im - spec.eta);
      diag.min_pole_distance = std::min(diag.min_pole_distance, dist);
      if (near && dist < kNearPole) near->emplace_back(entries[i].re, dist);
      if ((any_up && any_down) || (any_up && im < spec.eta) || (any_down && im > spec.eta)) {
        diag.separated = false;
      }
    }
  }
  return diag;
}

// Panel breakpoints: the unit grid on [-panels, panels], graded geometrically
// toward the real position of every near pole so that each panel stays at
// least its own half-width away from the pole.
std::vector<double> panel_breaks(int panels, NearPoles near) {
  std::vector<double> breaks;
  for (int p = -panels; p <= panels; ++p) breaks.push_back(p);
  std::sort(near.begin(), near.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [re, d] : near) {
    if (!merged.empty() && std::abs(re - merged.back().first) < kMergeTol) {
      merged.back().second = std::min(merged.back().second, d);
    } else {
      merged.emplace_back(re, d);
    }
  }
  for (const auto& [re, d] : merged) {
    if (std::abs(re) >= panels) continue;
    breaks.push_back(re);
    for (double x = d; x < 1.0; x *= 2.0) {
      for (double b : {re - x, re + x}) {
        if (std::abs(b) < panels) breaks.push_back(b);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (double b : breaks) {
    if (out.empty() || b - out.back() > 1e-12) out.push_back(b);
  }
  return out;
}

}  // namespace

MbDiagnostics pole_scan(const MbIntegrand& integrand, const ContourSpec& spec) {
  return scan_poles(integrand, spec, nullptr);
}

MbResult evaluate_mb(const MbIntegrand& integrand, const ContourSpec& spec, double tol) {
  spec.validate();
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
  NearPoles near;
  MbDiagnostics scan = scan_poles(integrand, spec, &near);
  if (!scan.separated) {
    fail(ErrorKind::ContourPinch, "a pole family lies on the wrong side of Im(nu) = eta");
  }
  if (scan.min_pole_distance < spec.pole_clearance) {
    fail(ErrorKind::ContourPinch, "pole at distance " + std::to_string(scan.min_pole_distance) +
                                      " from Im(nu) = eta");
  }

  const GaussLegendre gl = gauss_legendre(spec.nodes_per_unit);
  const int panels = static_cast<int>(std::ceil(spec.nu_max));
  std::vector<double> t_nodes;
  std::vector<double> t_weights;
  const std::vector<double> breaks = panel_breaks(panels, std::move(near));
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double width = breaks[p + 1] - breaks[p];
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
      t_nodes.push_back(breaks[p] + width * gl.x[k]);
      t_weights.push_back(width * gl.w[k]);
    }
  }
  const LogIntegrand log_f(integrand);
  constexpr std::size_t nE = kExtScales.size();
  constexpr std::size_t nR = kRawScales.size();
  struct Term {
    std::array<cplx, nE> ext{};
    std::array<cplx, nR> raw{};
    std::int64_t evals = 0;
  };
  const std::size_t count = static_cast<std::size_t>(2 * spec.n_max + 1);
  std::vector<Term> terms(count);
  parallel_for(count, [&](std::size_t idx) {
    const int n = static_cast<int>(idx) - spec.n_max;
    const double xn = spec.n_max > 0 ? static_cast<double>(n) / spec.n_max : 0.0;
    std::array<CompensatedSum, nE> ext;
    std::array<CompensatedSum, nR> raw;
    Term& term = terms[idx];
    for (std::size_t k = 0; k < t_nodes.size(); ++k) {
      const double xt = t_nodes[k] / spec.nu_max;
      const double r = std::sqrt(xn * xn + xt * xt);
      if (r >= 1.0) continue;
      const cplx val = std::exp(log_f(n, cplx(t_nodes[k], spec.eta))) * t_weights[k];
      ++term.evals;
      for (std::size_t j = 0; j < nE; ++j) ext[j].add(window(r / kExtScales[j], kExtFlat) * val);
      for (std::size_t j = 0; j < nR; ++j) raw[j].add(window(r / kRawScales[j], kRawFlat) * val);
    }
    for (std::size_t j = 0; j < nE; ++j) term.ext[j] = ext[j].value();
    for (std::size_t j = 0; j < nR; ++j) term.raw[j] = raw[j].value();
  });

  // Fixed reduction order: n = 0, -1, 1, -2, 2, ...
  std::array<CompensatedSum, nE> ext;
  std::array<CompensatedSum, nR> raw;
  MbResult result;
  result.diagnostics = scan;
  for (int m = 0; m <= spec.n_max; ++m) {
    for (int n : {-m, m}) {
      if (m == 0 && n != 0) continue;
      const Term& term = terms[static_cast<std::size_t>(n + spec.n_max)];
      for (std::size_t j = 0; j < nE; ++j) ext[j].add(term.ext[j]);
      for (std::size_t j = 0; j < nR; ++j) raw[j].add(term.raw[j]);
      result.diagnostics.per_n_magnitudes.emplace_back(n, std::abs(term.raw[0] * integrand.prefactor));
      result.diagnostics.evaluations += term.evals;
      if (m == 0) break;
    }
  }
  std::array<cplx, nE> ext_sums;
  for (std::size_t j = 0; j < nE; ++j) ext_sums[j] = ext[j].value();
  const cplx raw_value = raw[0].value();
  const double raw_err = std::abs(raw_value - raw[1].value());
  const cplx ext_value = extrapolate(ext_sums, kExtOrder);
  const double ext_err = std::abs(ext_value - extrapolate(ext_sums, kExtOrder - 1));

  const bool use_ext = ext_err < raw_err;
  const cplx chosen = use_ext ? ext_value : raw_value;
  const double scale = std::abs(integrand.prefactor);
  result.value = integrand.prefactor * chosen;
  result.diagnostics.method = use_ext ? "extrapolated" : "windowed";
  result.diagnostics.tail_estimate = (use_ext ? ext_err : raw_err) * scale;
  result.converged = std::isfinite(std::abs(result.value)) &&
                     result.diagnostics.tail_estimate <= tol * std::abs(result.value);
  return result;
}

MbResult mb_propagator(const PointPair& z, const PointPair& y, const BalancedExponent& alpha,
                       const ContourSpec& spec, double tol) {
  if (!(alpha.d() > 0.0 && alpha.d() < 1.0)) {
    fail(ErrorKind::DomainError, "Re(hol + anti)/2 must lie in (0, 1)");
  }
  if (z.z() == 0.0 || y.z() == 0.0) fail(ErrorKind::DomainError, "z and y must be nonzero");
  if (z.z() == y.z()) fail(ErrorKind::CoincidentPoints, "z and y coincide");
  const cplx norm = a_func(kOne - alpha);
  if (norm == 0.0) fail(ErrorKind::PoleAtArgument, "a(1 - alpha) vanishes");
  MbIntegrand f;
  f.numerator = {ShiftedA{kOne, -1}, ShiftedA{kOne - alpha, +1}};
  f.power_base = z / (-y);
  f.prefactor = bracket_pow(z, -alpha) / (4.0 * kPi * norm);
  return evaluate_mb(f, spec, tol);
}

namespace {

struct RacahExponents {
  BalancedExponent x1, x2, x3, xl, xc, xcp;
};

RacahExponents racah_exponents(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                               const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp) {
  require_even(a1.m + a2.m + cp.m, "m1 + m2 + m_c'");
  require_even(cp.m + a3.m + l.m, "m_c' + m3 + m_l");
  require_even(a2.m + a3.m + c.m, "m2 + m3 + m_c");
  require_even(a1.m + c.m + l.m, "m1 + m_c + m_l");
  return {a1.exponent(), a2.exponent(), a3.exponent(), l.exponent(), c.exponent(), cp.exponent()};
}

cplx racah_prefactor(const RacahExponents& e, int m_cp) {
  const cplx den = a_prod({(kOne + e.x1 - e.x2 + e.xcp).half(), (kOne + e.x2 - e.x3 + e.xc).half()});
  if (den == 0.0) fail(ErrorKind::PoleAtArgument, "prefactor denominator vanishes");
  const cplx num = a_prod({(kOne - e.x3 - e.xl + e.xcp).half(), (kOne + e.x1 + e.xc + e.xl).half()});
  return sign_pow(m_cp) * (kPi * kPi / 4.0) * num / den;
}

ShiftedA plus_s(const BalancedExponent& offset) { return {offset, +1}; }

}  // namespace

MbIntegrand racah_mb1_integrand(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                                const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp) {
  const RacahExponents e = racah_exponents(a1, a2, a3, l, c, cp);
  MbIntegrand f;
  f.numerator = {plus_s((kOne + e.x1 - e.x2 + e.xcp).half()),
                 plus_s((kOne - e.x1 - e.x2 + e.xcp).half()),
                 plus_s((kOne + e.x3 + e.xl + e.xcp).half()),
                 plus_s((kOne - e.x3 + e.xl + e.xcp).half())};
  f.denominator = {plus_s(BalancedExponent::scalar(0.0)), plus_s(e.xcp),
                   plus_s((e.xcp + e.xl - e.x2 - e.xc).half()),
                   plus_s((e.xc + e.xcp + e.xl - e.x2).half())};
  f.prefactor = racah_prefactor(e, cp.m);
  return f;
}

MbIntegrand racah_mb2_integrand(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                                const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp) {
  const RacahExponents e = racah_exponents(a1, a2, a3, l, c, cp);
  MbIntegrand f;
  f.numerator = {plus_s((kOne + e.x2 - e.x3 + e.xc).half()),
                 plus_s((kOne + e.x1 - e.xl + e.xc).half()),
                 plus_s((kOne + e.x2 + e.x3 + e.xc).half()),
                 plus_s((kOne - e.x1 - e.xl + e.xc).half())};
  f.denominator = {plus_s(BalancedExponent::scalar(0.0)), plus_s(e.xc),
                   plus_s((e.x2 + e.xc - e.xl - e.xcp).half()),
                   plus_s((e.x2 + e.xc - e.xl + e.xcp).half())};
  f.prefactor = racah_prefactor(e, cp.m);
  return f;
}

MbResult racah_mb1(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                   const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp,
                   const ContourSpec& spec, double tol) {
  return evaluate_mb(racah_mb1_integrand(a1, a2, a3, l, c, cp), spec, tol);
}

MbResult racah_mb2(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                   const SpinLabel& l, const SpinLabel& c, const SpinLabel& cp,
                   const ContourSpec& spec, double tol) {
  return evaluate_mb(racah_mb2_integrand(a1, a2, a3, l, c, cp), spec, tol);
}

MbResult triangle_mb(const PointPair& p, const BalancedExponent& A, const BalancedExponent& B,
                     const BalancedExponent& C, const ContourSpec& spec, double tol) {
  if (!(C.d() > 0.0 && C.d() < 1.0)) {
    fail(ErrorKind::DomainError, "the expanded propagator needs 0 < Re(hol + anti)/2 < 1");
  }
  if (p.z() == 0.0) fail(ErrorKind::DomainError, "z must be nonzero");
  const cplx norm = a_func(kOne - C);
  if (norm == 0.0) fail(ErrorKind::PoleAtArgument, "a(1 - C) vanishes");
  MbIntegrand f;
  f.numerator = {ShiftedA{kOne, -1}, ShiftedA{kOne - C, +1}, ShiftedA{B, +1},
                 ShiftedA{2.0 - A - B, -1}};
  f.power_base = p;
  f.prefactor = a_func(A) / (4.0 * norm) * bracket_pow(p, -C);
  return evaluate_mb(f, spec, tol);
}

MbResult phi1_mb(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                 const SpinLabel& l, const SpinLabel& cp, const PointPair& p,
                 const ContourSpec& spec, double tol) {
  require_even(a1.m + a2.m + cp.m, "m1 + m2 + m_c'");
  require_even(cp.m + a3.m + l.m, "m_c' + m3 + m_l");
  const BalancedExponent x1 = a1.exponent(), x2 = a2.exponent(), x3 = a3.exponent();
  const BalancedExponent xl = l.exponent(), xc = cp.exponent();
  return triangle_mb(p, (kOne - x1 + x2 + xc).half(), (kOne + x1 - x2 + xc).half(),
                     (kOne - x3 - xl + xc).half(), spec, tol);
}

MbResult phi2_mb(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                 const SpinLabel& l, const SpinLabel& c, const PointPair& p,
                 const ContourSpec& spec, double tol) {
  require_even(a2.m + a3.m + c.m, "m2 + m3 + m_c");
  require_even(a1.m + l.m + c.m, "m1 + m_l + m_c");
  const BalancedExponent x1 = a1.exponent(), x2 = a2.exponent(), x3 = a3.exponent();
  const BalancedExponent xl = l.exponent(), xc = c.exponent();
  const BalancedExponent D = (kOne + x2 + x3 + xc).half();
  const BalancedExponent P = (kOne + x1 + xl + xc).half();
  const BalancedExponent Q = (kOne + x2 - x3 - xc).half();
  const BalancedExponent T = (kOne - x2 + x3 - xc).half();
  MbResult r = triangle_mb(p, P, Q, T, spec, tol);
  // [z0 - z]^{-T} = (-1)^{n_T} [z - z0]^{-T}.
  const cplx pre = sign_pow(T.n()) * bracket_pow(p, -D);
  r.value *= pre;
  r.diagnostics.tail_estimate *= std::abs(pre);
  for (auto& entry : r.diagnostics.per_n_magnitudes) entry.second *= std::abs(pre);
  return r;
}

}  // namespace sl2c
