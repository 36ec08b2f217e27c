#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <array>

#include "cli_internal.hpp"
#include "sl2c/kernels.hpp"
#include "sl2c/parallel.hpp"

namespace sl2c::cli::detail {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double rel(cplx got, cplx want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

// Accumulates the worst residual of one property and times it.
class Property {
 public:
  Property(std::string suite, std::string name, double threshold)
      : start_(Clock::now()) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
    r_.threshold = threshold;
  }

  void add(double residual) {
    ++r_.samples;
    if (!std::isfinite(residual)) {
      nonfinite_ = true;
      return;
    }
    r_.worst = std::max(r_.worst, residual);
  }

  // For properties with a two-sided band instead of an upper bound.
  void band(double value, double lo, double hi) {
    ++r_.samples;
    const double off = value < lo ? lo - value : (value > hi ? value - hi : 0.0);
    if (!std::isfinite(value)) nonfinite_ = true;
    r_.worst = std::max(r_.worst, std::isfinite(value) ? std::abs(value - 0.5 * (lo + hi)) : 0.0);
    if (off > 0.0) out_of_band_ = true;
  }

  void note(const std::string& text) { r_.note += (r_.note.empty() ? "" : "; ") + text; }
  void failed(const std::string& why) {
    hard_fail_ = true;
    note(why);
  }

  PropertyResult finish() {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    const bool bounded = band_mode() ? !out_of_band_ : r_.worst < r_.threshold;
    r_.pass = r_.samples > 0 && !nonfinite_ && !hard_fail_ && bounded;
    if (nonfinite_) note("non-finite residual");
    return r_;
  }

  void use_band(double half_width) {
    band_ = true;
    r_.threshold = half_width;
  }

 private:
  bool band_mode() const { return band_; }

  PropertyResult r_;
  Clock::time_point start_;
  bool nonfinite_ = false;
  bool out_of_band_ = false;
  bool hard_fail_ = false;
  bool band_ = false;
};

bool near_lattice(cplx w) { return sl2c::detail::near_nonpositive_integer(w, 0.05); }

BalancedExponent random_exponent(Rng& rng) {
  std::uniform_real_distribution<double> part(-4.0, 4.0);
  std::uniform_int_distribution<int> n(-4, 4);
  return BalancedExponent::from_center({part(rng), part(rng)}, n(rng));
}

SpinLabel random_label(Rng& rng, int m_lo, int m_hi) {
  std::uniform_int_distribution<int> m(m_lo, m_hi);
  std::uniform_real_distribution<double> sigma(-2.0, 2.0);
  SpinLabel a{m(rng), sigma(rng)};
  while (a.m == 0 && std::abs(a.sigma) < 0.05) a.sigma = sigma(rng);
  return a;
}

// Three labels with an even m-sum.
std::array<SpinLabel, 3> random_triple(Rng& rng) {
  std::array<SpinLabel, 3> t;
  do {
    for (auto& a : t) a = random_label(rng, -3, 3);
  } while ((t[0].m + t[1].m + t[2].m) % 2 != 0);
  return t;
}

cplx random_point(Rng& rng) {
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  return {x(rng), x(rng)};
}

using Exp = BalancedExponent;

std::vector<PropertyResult> a_identities(const RunConfig& config) {
  const std::string s = "a-identities";
  Rng rng(config.seed);
  std::vector<Exp> samples;
  while (samples.size() < 10000) {
    const Exp a = random_exponent(rng);
    const cplx h = a.hol(), b = a.anti();
    if (near_lattice(h) || near_lattice(h + 1.0) || near_lattice(1.0 - h) || near_lattice(b) ||
        near_lattice(-b) || near_lattice(1.0 - b)) {
      continue;
    }
    samples.push_back(a);
  }
  Property reflect(s, "a(alpha) a(1 - alpha_bar) = 1", 1e-10);
  Property shift(s, "a(alpha + 1) = -a(alpha) / (alpha alpha_bar)", 1e-10);
  Property complement(s, "a(alpha) a(1 - alpha) = (-1)^n", 1e-10);
  Property swap(s, "a(alpha) = (-1)^n a(swap alpha)", 1e-10);
  for (const Exp& a : samples) {
    const cplx fa = a_func(a);
    reflect.add(rel(fa * a_func(bar_reflect(a)), 1.0));
    shift.add(rel(a_func(a + 1.0), -fa / (a.hol() * a.anti())));
    complement.add(rel(fa * a_func(1.0 - a), sign_pow(a.n())));
    swap.add(rel(fa, sign_pow(a.n()) * a_func(a.swapped())));
  }
  return {reflect.finish(), shift.finish(), complement.finish(), swap.finish()};
}

double quad_threshold(const RunConfig& config) { return config.tolerance.value_or(1e-3); }

std::vector<PropertyResult> chain(const RunConfig& config) {
  const std::string s = "chain";
  struct Set {
    Exp alpha, beta;
    cplx z1, z2;
  };
  const std::vector<Set> sets = {
      {Exp(0.75, 0.75), Exp(0.75, 0.75), 0.0, 1.0},
      {Exp(1.25, 0.25), Exp(0.75, 0.75), 0.0, 1.0},
      {Exp({0.6, 0.3}, {0.6, 0.3}), Exp({0.7, -0.2}, {0.7, -0.2}), {0.0, 0.5}, {-1.0, 0.2}},
      {Exp({1.1, 0.2}, {0.1, 0.2}), Exp({0.2, -0.1}, {1.2, -0.1}), -0.3, {0.8, 0.6}},
      {Exp(0.8, 0.8), Exp({0.4, 0.5}, {0.4, 0.5}), {1.0, 1.0}, -0.5},
  };
  const double tol = quad_threshold(config);
  Property closed(s, "quadrature matches closed form", tol);
  Property flip(s, "closed form symmetric under (alpha,z1) <-> (beta,z2)", 1e-10);
  for (const Set& c : sets) {
    const IdentityCheck check = verify_chain(c.alpha, c.beta, c.z1, c.z2, tol, config.budget);
    closed.add(check.residual);
    if (!check.quad.converged) closed.failed("quadrature budget exhausted");
    const cplx swapped = chain_closed_form(c.beta, c.alpha, c.z2, c.z1);
    flip.add(rel(swapped, sign_pow(c.alpha.n() + c.beta.n()) * check.closed_form));
  }
  return {closed.finish(), flip.finish()};
}

std::vector<PropertyResult> star(const RunConfig& config) {
  const std::string s = "star";
  struct Set {
    Exp a, b, c;
    cplx z1, z2, z3;
  };
  auto third = [](const Exp& a, const Exp& b) { return Exp(2.0 - a.hol() - b.hol(), 2.0 - a.anti() - b.anti()); };
  const Exp t(2.0 / 3.0, 2.0 / 3.0);
  const Exp b1(cplx{0.5, 0.2}, cplx{0.5, 0.2}), b2(cplx{0.7, -0.1}, cplx{0.7, -0.1});
  const Exp c1(1.1, 0.1), c2(0.3, 1.3);
  const Exp d1(cplx{1.2, 0.3}, cplx{0.2, 0.3}), d2(cplx{0.1, -0.2}, cplx{1.1, -0.2});
  const Exp e1(0.9, 0.9), e2(cplx{0.55, 0.4}, cplx{0.55, 0.4});
  const std::vector<Set> sets = {
      {t, t, t, 0.0, 1.0, {0.0, 1.0}},
      {b1, b2, third(b1, b2), 0.0, 1.2, {0.3, 0.9}},
      {c1, c2, third(c1, c2), -0.5, 0.5, {0.2, 0.8}},
      {d1, d2, third(d1, d2), {0.1, 0.1}, {1.0, -0.4}, {-0.6, 0.7}},
      {e1, e2, third(e1, e2), {1.0, 1.0}, -1.0, {0.3, -0.7}},
  };
  const double tol = quad_threshold(config);
  Property closed(s, "quadrature matches closed form", tol);
  Property perm(s, "invariant under vertex permutations", 1e-10);
  for (const Set& c : sets) {
    const IdentityCheck check = verify_star(c.a, c.b, c.c, c.z1, c.z2, c.z3, tol, config.budget);
    closed.add(check.residual);
    if (!check.quad.converged) closed.failed("quadrature budget exhausted");
    const IdentityCheck rotated = verify_star(c.c, c.a, c.b, c.z3, c.z1, c.z2, tol, config.budget);
    const cplx swapped = star_closed_form(c.b, c.a, c.c, c.z2, c.z1, c.z3);
    perm.add(rel(rotated.numeric, check.numeric));
    perm.add(rel(rotated.closed_form, check.closed_form));
    perm.add(rel(swapped, check.closed_form));
  }
  return {closed.finish(), perm.finish()};
}

struct CovSet {
  std::array<SpinLabel, 3> a;
  std::array<cplx, 3> z;
};

const std::vector<CovSet>& covariance_sets() {
  static const std::vector<CovSet> sets = {
      {{{{0, 0.3}, {0, 0.7}, {0, 1.1}}}, {{0.0, 1.0, {0.0, 2.0}}}},
      {{{{1, 0.4}, {1, -0.2}, {0, 0.9}}}, {{{0.2, 0.1}, {1.3, -0.4}, {-0.6, 1.1}}}},
      {{{{2, -0.5}, {-1, 0.8}, {1, 0.3}}}, {{{-0.7, -0.3}, {0.9, 0.8}, {0.1, -1.2}}}},
  };
  return sets;
}

std::vector<PropertyResult> covariance(const RunConfig& config) {
  const std::string s = "covariance";
  Property residual(s, "generator residual on W at h = 1e-4 (relative to |W|)", 1e-6);
  Property order(s, "second-order convergence: residual ratio under h halving", 0.8);
  order.use_band(0.8);
  Property trace(s, "E22 residual equals minus E11 residual", 1e-15);
  Property translate(s, "W invariant under common translation", 1e-12);
  Property conj(s, "conj W(a) = W(-a) at random points", 1e-12);
  Property asym(s, "asymptotic residual decays like 1/R (ratio R=1e3 to 1e4)", 3.0);
  asym.use_band(3.0);

  const std::array<std::pair<GeneratorIndex, bool>, 6> components = {{
      {GeneratorIndex::E11, false},
      {GeneratorIndex::E12, false},
      {GeneratorIndex::E21, false},
      {GeneratorIndex::E11, true},
      {GeneratorIndex::E12, true},
      {GeneratorIndex::E21, true},
  }};
  for (const CovSet& c : covariance_sets()) {
    const auto& [a1, a2, a3] = c.a;
    const PointPair p1 = PointPair::at(c.z[0]), p2 = PointPair::at(c.z[1]), p3 = PointPair::at(c.z[2]);
    const double w = std::abs(w_kernel(a1, a2, a3, p1, p2, p3));
    for (const auto& [index, barred] : components) {
      const cplx r1 = covariance_residual(a1, a2, a3, p1, p2, p3, index, barred, 1e-4);
      const cplx r2 = covariance_residual(a1, a2, a3, p1, p2, p3, index, barred, 5e-5);
      residual.add(std::abs(r1) / w);
      order.band(std::abs(r1) / std::abs(r2), 3.2, 4.8);
      if (index == GeneratorIndex::E11) {
        const cplx r22 = covariance_residual(a1, a2, a3, p1, p2, p3, GeneratorIndex::E22, barred, 1e-4);
        trace.add(std::abs(r22 + r1));
      }
    }
    asym.band(w_asymptotic_residual(a1, a2, a3, 1e3) / w_asymptotic_residual(a1, a2, a3, 1e4), 7.0, 13.0);
  }

  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const auto t = random_triple(rng);
    const cplx z1 = random_point(rng), z2 = random_point(rng), z3 = random_point(rng);
    if (std::min({std::abs(z1 - z2), std::abs(z1 - z3), std::abs(z2 - z3)}) < 0.05) {
      --k;
      continue;
    }
    const PointPair p1 = PointPair::at(z1), p2 = PointPair::at(z2), p3 = PointPair::at(z3);
    const cplx w = w_kernel(t[0], t[1], t[2], p1, p2, p3);
    const cplx off{shift(rng), shift(rng)};
    translate.add(rel(w_kernel(t[0], t[1], t[2], PointPair::at(z1 + off), PointPair::at(z2 + off),
                               PointPair::at(z3 + off)),
                      w));
    conj.add(rel(std::conj(w), w_kernel(t[0].negated(), t[1].negated(), t[2].negated(), p1, p2, p3)));
  }
  return {residual.finish(), order.finish(), trace.finish(), translate.finish(), conj.finish(),
          asym.finish()};
}

std::vector<PropertyResult> completeness(const RunConfig& config) {
  Rng rng(config.seed + 1);
  Property p("completeness", "rho(a) A(-a1,-a2,-a) B(a1,a2,a) = (-1)^m", 1e-12);
  for (int k = 0; k < 100; ++k) {
    const auto t = random_triple(rng);
    p.add(std::abs(completeness_residual(t[0], t[1], t[2])));
  }
  return {p.finish()};
}

ContourSpec resolved(const RunConfig& config, ContourSpec base) { return config.contour.resolve(base); }

std::vector<PropertyResult> mb_propagator_suite(const RunConfig& config) {
  const std::string s = "mb-propagator";
  struct Sample {
    cplx z, y;
    Exp alpha;
  };
  const std::vector<Sample> samples = {
      {1.0, -1.0, Exp(0.6, 0.6)},
      {{1.0, 1.0}, 0.3, Exp(1.1, 0.1)},
      {{-0.5, 0.8}, {0.7, -0.2}, Exp(cplx{0.4, 0.3}, cplx{0.4, 0.3})},
      {2.0, {0.0, 0.5}, Exp(cplx{0.2, 0.5}, cplx{1.2, 0.5})},
      {{0.3, -1.1}, {-0.9, -0.4}, Exp(0.85, -0.15)},
  };
  ContourSpec base;
  base.n_max = 160;
  base.nu_max = 240.0;
  const ContourSpec spec = resolved(config, base);
  const double tol = config.tolerance.value_or(kMbDefaultTol);
  Property match(s, "matches 1/[z - y]^alpha", 1e-6);
  Property eta(s, "invariant under eta in {-0.25, -0.5, -0.75}", 1e-8);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& x = samples[i];
    const PointPair z = PointPair::at(x.z), y = PointPair::at(x.y);
    const cplx direct = 1.0 / bracket_pow(PointPair::at(x.z - x.y), x.alpha);
    const MbResult r = mb_propagator(z, y, x.alpha, spec, tol);
    match.add(rel(r.value, direct));
    for (double e : {-0.25, -0.75}) {
      if (e <= -2.0 * x.alpha.d()) continue;  // the strip is (-2d, 0)
      ContourSpec shifted = spec;
      shifted.eta = e;
      eta.add(rel(mb_propagator(z, y, x.alpha, shifted, tol).value, r.value));
    }
  }
  return {match.finish(), eta.finish()};
}

std::array<SpinLabel, 6> random_sextuple(Rng& rng) {
  // Order a1 a2 a3 l c cp; the triangles (a1,a2,cp), (cp,a3,l), (a2,a3,c), (a1,c,l) need even m-sums.
  std::uniform_int_distribution<int> m(-2, 2);
  std::uniform_real_distribution<double> sigma(-2.0, 2.0);
  std::array<SpinLabel, 6> s;
  for (;;) {
    for (auto& a : s) a = {m(rng), sigma(rng)};
    const auto even = [](int x) { return x % 2 == 0; };
    if (!even(s[0].m + s[1].m + s[5].m) || !even(s[5].m + s[2].m + s[3].m) ||
        !even(s[1].m + s[2].m + s[4].m) || !even(s[0].m + s[4].m + s[3].m)) {
      continue;
    }
    bool clear = true;
    for (const auto& a : s) clear = clear && (a.m != 0 || std::abs(a.sigma) >= 0.05);
    if (clear) return s;
  }
}

std::vector<PropertyResult> mb_consistency(const RunConfig& config) {
  const std::string s = "mb-consistency";
  const ContourSpec spec = resolved(config, ContourSpec{});
  const double tol = config.tolerance.value_or(kMbDefaultTol);
  Rng rng(config.seed + 2);
  Property shift(s, "MB1 equals MB2 on random parity-valid sets", 1e-8);
  Property eta(s, "MB1 invariant under eta", 1e-8);
  Property doubling(s, "doubling nu_max and n_max moves MB1 by less than 1e-8", 1e-8);
  for (int k = 0; k < 10; ++k) {
    const auto x = random_sextuple(rng);
    try {
      const MbResult r1 = racah_mb1(x[0], x[1], x[2], x[3], x[4], x[5], spec, tol);
      const MbResult r2 = racah_mb2(x[0], x[1], x[2], x[3], x[4], x[5], spec, tol);
      shift.add(rel(r2.value, r1.value));
      if (k == 0) {
        ContourSpec other = spec;
        other.eta = -0.3;
        eta.add(rel(racah_mb1(x[0], x[1], x[2], x[3], x[4], x[5], other, tol).value, r1.value));
      }
      if (k < 3) {
        ContourSpec big = spec;
        big.nu_max *= 2.0;
        big.n_max *= 2;
        doubling.add(rel(racah_mb1(x[0], x[1], x[2], x[3], x[4], x[5], big, tol).value, r1.value));
      }
    } catch (const Error& e) {
      shift.failed(e.what());
    }
  }
  return {shift.finish(), eta.finish(), doubling.finish()};
}

std::vector<PropertyResult> phi_oracle(const RunConfig& config) {
  const std::string s = "phi-oracle";
  const ContourSpec spec = resolved(config, ContourSpec{});
  const double threshold = quad_threshold(config);
  const double quad_tol = 0.01 * threshold;
  const SpinLabel a1{0, 0.2}, a2{0, 0.5}, a3{0, 0.9}, l{0, 1.3}, c{0, 0.4}, cp{0, 0.7};
  Property phi1(s, "Phi1 quadrature matches the MB reduction", threshold);
  Property phi2(s, "Phi2 quadrature matches the MB reduction", threshold);
  Property detached(s, "detached Phi2 reading is rejected as non-integrable", 0.5);
  for (cplx z : {cplx{2.0, 1.0}, cplx{-0.6, 0.9}}) {
    const PointPair p = PointPair::at(z);
    const QuadratureResult q = phi1_direct(a1, a2, a3, l, cp, p, quad_tol, config.budget);
    phi1.add(rel(q.value, phi1_mb(a1, a2, a3, l, cp, p, spec).value));
    if (!q.converged) phi1.failed("quadrature budget exhausted");
  }
  const PointPair p = PointPair::at({2.0, 1.0});
  const QuadratureResult q = phi2_direct(a1, a2, a3, l, c, p, quad_tol, config.budget);
  phi2.add(rel(q.value, phi2_mb(a1, a2, a3, l, c, p, spec).value));
  if (!q.converged) phi2.failed("quadrature budget exhausted");
  try {
    phi2_direct(a1, a2, a3, l, c, p, quad_tol, config.budget, Phi2Reading::Detached, {0.5, -0.5});
    detached.add(1.0);
  } catch (const Error& e) {
    detached.add(e.kind() == ErrorKind::InsufficientDecay ? 0.0 : 1.0);
  }
  return {phi1.finish(), phi2.finish(), detached.finish()};
}

}  // namespace

std::vector<PropertyResult> run_suite(const std::string& suite, const RunConfig& config) {
  static const std::map<std::string, std::function<std::vector<PropertyResult>(const RunConfig&)>>
      table = {{"a-identities", a_identities}, {"chain", chain},
               {"star", star},                 {"covariance", covariance},
               {"completeness", completeness}, {"mb-propagator", mb_propagator_suite},
               {"mb-consistency", mb_consistency}, {"phi-oracle", phi_oracle}};
  const auto it = table.find(suite);
  if (it == table.end()) fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  return it->second(config);
}

}  // namespace sl2c::cli::detail

namespace sl2c::cli {

int cmd_verify(const std::string& suite, const RunConfig& config, std::ostream& out,
               std::ostream& err) {
  using detail::json;
  std::vector<detail::PropertyResult> results;
  try {
    detail::validate_config(config);
    if (suite == "all") {
      for (const std::string& name : verify_suites()) {
        if (name == "all") continue;
        auto part = detail::run_suite(name, config);
        results.insert(results.end(), part.begin(), part.end());
      }
    } else {
      results = detail::run_suite(suite, config);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e);
  }
  bool pass = true;
  json properties = json::array();
  for (const auto& r : results) {
    pass = pass && r.pass;
    properties.push_back({{"suite", r.suite},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"worst", r.worst},
                          {"threshold", r.threshold},
                          {"samples", r.samples},
                          {"seconds", r.seconds},
                          {"note", r.note}});
    if (!r.pass) err << "FAIL " << r.suite << ": " << r.name << " (worst " << r.worst << ")\n";
  }
  const json inputs = {{"suite", suite}, {"config", detail::config_to_json(config)}};
  if (config.output == OutputFormat::Json) {
    out << json{{"suite", suite}, {"pass", pass}, {"properties", properties}, {"inputs", inputs}}.dump()
        << "\n";
  } else {
    out << "suite,property,pass,worst,threshold,samples,seconds\n";
    for (const auto& r : results) {
      std::string name = r.name;
      std::replace(name.begin(), name.end(), ',', ';');
      out << r.suite << ',' << name << ',' << (r.pass ? "true" : "false") << ',' << r.worst << ','
          << r.threshold << ',' << r.samples << ',' << r.seconds << "\n";
    }
  }
  return pass ? kExitOk : kExitFailed;
}

}  // namespace sl2c::cli
