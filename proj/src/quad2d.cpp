#include "sl2c/quad2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sl2c/errors.hpp"
#include "sl2c/kernels.hpp"
#include "sl2c/parallel.hpp"

namespace sl2c {

namespace {

// Gauss-Kronrod 7/15 on [-1, 1].
struct GkRule {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};
};

GkRule make_rule() {
  constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  constexpr std::array<double, 4> wgauss = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  GkRule r;
  for (int j = 0; j < 8; ++j) {
    r.x[j] = -xgk[j];
    r.x[14 - j] = xgk[j];
    r.wk[j] = r.wk[14 - j] = wgk[j];
    const double g = (j % 2 == 1) ? wgauss[j / 2] : 0.0;
    r.wg[j] = r.wg[14 - j] = g;
  }
  return r;
}

const GkRule kRule = make_rule();
constexpr std::int64_t kEvalsPerCell = 15 * 15;
constexpr std::size_t kBatch = 8;

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// 1 for r <= inner, 0 for r >= outer, C-infinity in between.
double bump(double r, double inner, double outer) {
  return smooth_step((outer - r) / (outer - inner));
}

enum class PieceKind { Disk, Outer, Middle };

struct Piece {
  PieceKind kind;
  int index;  // singularity index for disks
};

struct Geometry {
  std::vector<Singularity> sing;
  std::vector<double> rho;
  cplx center{0.0, 0.0};
  double R1 = 1.0;
  double R2 = 2.0;

  double disk_weight(std::size_t i, double r) const { return bump(r, 0.5 * rho[i], rho[i]); }
  double outer_weight(double r) const { return 1.0 - bump(r, R1, R2); }
  double middle_weight(cplx w) const {
    double wsum = outer_weight(std::abs(w - center));
    for (std::size_t i = 0; i < sing.size(); ++i) {
      wsum += disk_weight(i, std::abs(w - sing[i].location));
    }
    return 1.0 - wsum;
  }
};

struct Cell {
  double u0, u1, v0, v1;
  int piece;
  cplx value;
  double err;
  std::uint64_t id;
};

struct WorseFirst {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.id > b.id;
  }
};

class Integrator {
 public:
  Integrator(const PlaneIntegrand& f, Geometry geo, std::vector<Piece> pieces)
      : f_(f), geo_(std::move(geo)), pieces_(std::move(pieces)) {}

  cplx piece_value(const Piece& piece, double u, double v) const {
    switch (piece.kind) {
      case PieceKind::Disk: {
        const std::size_t i = static_cast<std::size_t>(piece.index);
        const double r = geo_.rho[i] * std::exp(-u);
        const double weight = geo_.disk_weight(i, r);
        if (weight == 0.0) return 0.0;
        const cplx w = geo_.sing[i].location + std::polar(r, v);
        return checked(w) * (weight * r * r);
      }
      case PieceKind::Outer: {
        const double r = geo_.R1 * std::exp(u);
        const double weight = geo_.outer_weight(r);
        if (weight == 0.0) return 0.0;
        const cplx w = geo_.center + std::polar(r, v);
        return checked(w) * (weight * r * r);
      }
      case PieceKind::Middle: {
        const cplx w(u, v);
        const double weight = geo_.middle_weight(w);
        if (weight <= 0.0) return 0.0;
        return checked(w) * weight;
      }
    }
    return 0.0;
  }

  void evaluate(Cell& cell) const {
    const Piece& piece = pieces_[static_cast<std::size_t>(cell.piece)];
    const double cu = 0.5 * (cell.u0 + cell.u1);
    const double hu = 0.5 * (cell.u1 - cell.u0);
    const double cv = 0.5 * (cell.v0 + cell.v1);
    const double hv = 0.5 * (cell.v1 - cell.v0);
    cplx kron = 0.0;
    cplx gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
      const double u = cu + hu * kRule.x[i];
      cplx row_k = 0.0;
      cplx row_g = 0.0;
      for (int j = 0; j < 15; ++j) {
        const cplx val = piece_value(piece, u, cv + hv * kRule.x[j]);
        row_k += kRule.wk[j] * val;
        row_g += kRule.wg[j] * val;
      }
      kron += kRule.wk[i] * row_k;
      gauss += kRule.wg[i] * row_g;
    }
    cell.value = kron * (hu * hv);
    cell.err = std::abs(kron - gauss) * (hu * hv);
  }

 private:
  cplx checked(cplx w) const {
    const cplx val = f_(PointPair::at(w));
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
      fail(ErrorKind::DomainError, "integrand is not finite at a quadrature node");
    }
    return val;
  }

  const PlaneIntegrand& f_;
  Geometry geo_;
  std::vector<Piece> pieces_;
};

bool location_less(const Singularity& a, const Singularity& b) {
  if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
  return a.location.imag() < b.location.imag();
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

QuadratureResult integrate_plane(const PlaneIntegrand& f, std::span<const Singularity> sing,
                                 double decay_exponent, double tol, std::int64_t budget) {
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (budget < 10'000) fail(ErrorKind::InvalidArgument, "budget must be at least 1e4 evaluations");
  if (!(decay_exponent > 2.0)) {
    fail(ErrorKind::InsufficientDecay,
         "decay exponent " + std::to_string(decay_exponent) + " must exceed 2");
  }
  Geometry geo;
  geo.sing.assign(sing.begin(), sing.end());
  std::sort(geo.sing.begin(), geo.sing.end(), location_less);
  int angular_index = 0;
  for (std::size_t i = 0; i < geo.sing.size(); ++i) {
    if (geo.sing[i].exponent.d() >= 1.0) {
      fail(ErrorKind::NonIntegrableSingularity,
           "Re(hol + anti)/2 = " + std::to_string(geo.sing[i].exponent.d()) + " >= 1");
    }
    if (i > 0 && geo.sing[i].location == geo.sing[i - 1].location) {
      fail(ErrorKind::CoincidentPoints, "two singularities share a location");
    }
    angular_index += std::abs(geo.sing[i].exponent.n());
  }

  const std::size_t ns = geo.sing.size();
  geo.rho.assign(ns, 1.0);
  if (ns > 0) {
    cplx c = 0.0;
    for (const auto& s : geo.sing) c += s.location;
    geo.center = c / static_cast<double>(ns);
  }
  for (std::size_t i = 0; i < ns && ns > 1; ++i) {
    double nearest = INFINITY;
    for (std::size_t j = 0; j < ns; ++j) {
      if (j != i) nearest = std::min(nearest, std::abs(geo.sing[i].location - geo.sing[j].location));
    }
    geo.rho[i] = 0.5 * nearest;
  }
  double reach = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    reach = std::max(reach, std::abs(geo.sing[i].location - geo.center) + geo.rho[i]);
  }
  geo.R1 = std::max(1.0, 1.25 * reach);
  geo.R2 = 2.0 * geo.R1;

  const double cut_ratio = std::clamp(0.1 * tol, 1e-10, 1e-4);
  const double disk_span = -std::log(cut_ratio);
  const double outer_span = std::min(std::log(100.0 / tol) / (decay_exponent - 2.0), 250.0);
  const int ntheta = std::max(4, (angular_index + 3) / 2);

  std::vector<Piece> pieces;
  std::vector<Cell> initial;
  std::uint64_t next_id = 0;
  auto add_strip = [&](int piece, double u_end) {
    const int nu = std::max(1, static_cast<int>(std::ceil(u_end / 3.0)));
    for (int a = 0; a < nu; ++a) {
      for (int b = 0; b < ntheta; ++b) {
        initial.push_back({u_end * a / nu, u_end * (a + 1) / nu, 2.0 * kPi * b / ntheta,
                           2.0 * kPi * (b + 1) / ntheta, piece, 0.0, 0.0, next_id++});
      }
    }
  };
  for (std::size_t i = 0; i < ns; ++i) {
    pieces.push_back({PieceKind::Disk, static_cast<int>(i)});
    add_strip(static_cast<int>(pieces.size()) - 1, disk_span);
  }
  pieces.push_back({PieceKind::Outer, 0});
  add_strip(static_cast<int>(pieces.size()) - 1, outer_span);
  pieces.push_back({PieceKind::Middle, 0});
  {
    const int piece = static_cast<int>(pieces.size()) - 1;
    const int nm = 4;
    const double side = 2.0 * geo.R2 / nm;
    const double x0 = geo.center.real() - geo.R2;
    const double y0 = geo.center.imag() - geo.R2;
    for (int a = 0; a < nm; ++a) {
      for (int b = 0; b < nm; ++b) {
        initial.push_back({x0 + a * side, x0 + (a + 1) * side, y0 + b * side, y0 + (b + 1) * side,
                           piece, 0.0, 0.0, next_id++});
      }
    }
  }

  // Leading-order contribution of each excised core |w - s| < r_c, using
  // f ~ g [w - s]^{-alpha} with g probed on the core boundary.
  cplx cap_total = 0.0;
  double cap_err = 0.0;
  std::int64_t evaluations = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    const Singularity& s = geo.sing[i];
    const double rc = geo.rho[i] * cut_ratio;
    cplx g = 0.0;
    for (int k = 0; k < 4; ++k) {
      const cplx delta = std::polar(rc, 0.25 * kPi + 0.5 * kPi * k);
      g += f(PointPair::at(s.location + delta)) * bracket_pow(PointPair::at(delta), s.exponent);
    }
    g *= 0.25;
    evaluations += 4;
    const cplx power = 2.0 - 2.0 * s.exponent.center();
    const cplx core = 2.0 * kPi * g * std::exp(power * std::log(rc)) / power;
    if (s.exponent.n() == 0) cap_total += core;
    cap_err += std::abs(core) * 10.0 * cut_ratio;
  }
  double tail_err = 0.0;
  {
    const double ro = geo.R1 * std::exp(outer_span);
    double peak = 0.0;
    for (int k = 0; k < 8; ++k) {
      peak = std::max(peak, std::abs(f(PointPair::at(geo.center + std::polar(ro, 0.25 * kPi * k + 0.1)))));
    }
    evaluations += 8;
    tail_err = 2.0 * kPi * peak * ro * ro / (decay_exponent - 2.0);
  }

  Integrator integrator(f, geo, pieces);
  parallel_for(initial.size(), [&](std::size_t k) { integrator.evaluate(initial[k]); });
  evaluations += static_cast<std::int64_t>(initial.size()) * kEvalsPerCell;

  std::vector<Cell> leaves = std::move(initial);
  std::make_heap(leaves.begin(), leaves.end(), WorseFirst{});
  auto totals = [&](cplx& value, double& err, double& mass) {
    std::vector<Cell> all = leaves;
    std::sort(all.begin(), all.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
    CompensatedSum sum;
    CompensatedSum err_sum;
    CompensatedSum mass_sum;
    for (const Cell& c : all) {
      sum.add(c.value);
      err_sum.add(c.err);
      mass_sum.add(std::abs(c.value));
    }
    value = sum.value() + cap_total;
    err = err_sum.value().real() + cap_err + tail_err;
    mass = mass_sum.value().real() + std::abs(cap_total);
  };

  cplx value;
  double err = 0.0;
  double mass = 0.0;
  totals(value, err, mass);
  double running_err = err;
  cplx running_value = value;
  double running_mass = mass;
  int since_refresh = 0;
  bool converged = false;
  for (;;) {
    const double scale = std::max(std::abs(running_value), 1e-6 * running_mass);
    if (running_err <= tol * scale) {
      totals(value, err, mass);
      running_err = err;
      running_value = value;
      running_mass = mass;
      if (err <= tol * std::max(std::abs(value), 1e-6 * mass)) {
        converged = true;
        break;
      }
    }
    const std::size_t take = std::min(kBatch, leaves.size());
    if (evaluations + static_cast<std::int64_t>(4 * take) * kEvalsPerCell > budget) break;
    std::vector<Cell> parents;
    for (std::size_t k = 0; k < take; ++k) {
      std::pop_heap(leaves.begin(), leaves.end(), WorseFirst{});
      parents.push_back(leaves.back());
      leaves.pop_back();
    }
    std::vector<Cell> children;
    for (const Cell& p : parents) {
      const double um = 0.5 * (p.u0 + p.u1);
      const double vm = 0.5 * (p.v0 + p.v1);
      children.push_back({p.u0, um, p.v0, vm, p.piece, 0.0, 0.0, next_id++});
      children.push_back({um, p.u1, p.v0, vm, p.piece, 0.0, 0.0, next_id++});
      children.push_back({p.u0, um, vm, p.v1, p.piece, 0.0, 0.0, next_id++});
      children.push_back({um, p.u1, vm, p.v1, p.piece, 0.0, 0.0, next_id++});
    }
    parallel_for(children.size(), [&](std::size_t k) { integrator.evaluate(children[k]); });
    evaluations += static_cast<std::int64_t>(children.size()) * kEvalsPerCell;
    for (const Cell& p : parents) {
      running_value -= p.value;
      running_err -= p.err;
      running_mass -= std::abs(p.value);
    }
    for (const Cell& c : children) {
      running_value += c.value;
      running_err += c.err;
      running_mass += std::abs(c.value);
      leaves.push_back(c);
      std::push_heap(leaves.begin(), leaves.end(), WorseFirst{});
    }
    if (++since_refresh == 64) {
      since_refresh = 0;
      totals(running_value, running_err, running_mass);
    }
  }
  totals(value, err, mass);
  QuadratureResult result;
  result.value = value;
  result.abs_err = err;
  result.evaluations = evaluations;
  result.converged = converged && err <= tol * std::max(std::abs(value), 1e-6 * mass);
  return result;
}

cplx chain_closed_form(const BalancedExponent& alpha, const BalancedExponent& beta, cplx z1,
                       cplx z2) {
  if (z1 == z2) fail(ErrorKind::CoincidentPoints, "chain endpoints coincide");
  const BalancedExponent gamma = 2.0 - alpha - beta;
  const cplx coeff = kPi * a_prod({alpha, beta, gamma});
  return coeff / bracket_pow(PointPair::at(z2 - z1), alpha + beta - 1.0);
}

IdentityCheck verify_chain(const BalancedExponent& alpha, const BalancedExponent& beta, cplx z1,
                           cplx z2, double tol, std::int64_t budget) {
  IdentityCheck out;
  out.closed_form = chain_closed_form(alpha, beta, z1, z2);
  const PlaneIntegrand f = [&](const PointPair& w) {
    return bracket_pow(PointPair::at(z1) - w, -alpha) * bracket_pow(w - PointPair::at(z2), -beta);
  };
  const std::array<Singularity, 2> sing = {Singularity{z1, alpha}, Singularity{z2, beta}};
  out.quad = integrate_plane(f, sing, 2.0 * (alpha.d() + beta.d()), 0.01 * tol, budget);
  out.numeric = out.quad.value;
  out.residual = rel_diff(out.numeric, out.closed_form);
  return out;
}

namespace {

void require_unique(const BalancedExponent& alpha, const BalancedExponent& beta,
                    const BalancedExponent& gamma) {
  const BalancedExponent total = alpha + beta + gamma;
  if (std::abs(total.hol() - 2.0) > 1e-9 || std::abs(total.anti() - 2.0) > 1e-9) {
    fail(ErrorKind::UniquenessViolation, "alpha + beta + gamma must equal 2 in both components");
  }
}

struct Vertex {
  cplx z;
  BalancedExponent e;
};

}  // namespace

cplx star_closed_form(const BalancedExponent& alpha, const BalancedExponent& beta,
                      const BalancedExponent& gamma, cplx z1, cplx z2, cplx z3) {
  require_unique(alpha, beta, gamma);
  if (z1 == z2 || z1 == z3 || z2 == z3) fail(ErrorKind::CoincidentPoints, "star points coincide");
  const cplx coeff = kPi * a_prod({alpha, beta, gamma});
  const cplx den = bracket_pow(PointPair::at(z2 - z1), 1.0 - gamma) *
                   bracket_pow(PointPair::at(z1 - z3), 1.0 - beta) *
                   bracket_pow(PointPair::at(z3 - z2), 1.0 - alpha);
  return coeff / den;
}

IdentityCheck verify_star(const BalancedExponent& alpha, const BalancedExponent& beta,
                          const BalancedExponent& gamma, cplx z1, cplx z2, cplx z3, double tol,
                          std::int64_t budget) {
  IdentityCheck out;
  out.closed_form = star_closed_form(alpha, beta, gamma, z1, z2, z3);
  // Canonical vertex order keeps the quadrature bit-identical under relabeling.
  std::array<Vertex, 3> v = {Vertex{z1, alpha}, Vertex{z2, beta}, Vertex{z3, gamma}};
  std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  const PlaneIntegrand f = [&](const PointPair& w) {
    cplx prod = 1.0;
    for (const Vertex& x : v) prod *= bracket_pow(w - PointPair::at(x.z), -x.e);
    return prod;
  };
  std::array<Singularity, 3> sing;
  double decay = 0.0;
  for (int k = 0; k < 3; ++k) {
    sing[k] = {v[k].z, v[k].e};
    decay += 2.0 * v[k].e.d();
  }
  out.quad = integrate_plane(f, sing, decay, 0.01 * tol, budget);
  out.numeric = out.quad.value;
  out.residual = rel_diff(out.numeric, out.closed_form);
  return out;
}

QuadratureResult triangle_direct(const PointPair& p, const BalancedExponent& A,
                                 const BalancedExponent& B, const BalancedExponent& C, double tol,
                                 std::int64_t budget) {
  const cplx z = p.z();
  if (z == 0.0 || z == 1.0) fail(ErrorKind::CoincidentPoints, "z must differ from 0 and 1");
  const PointPair one = PointPair::at(1.0);
  const PlaneIntegrand f = [&](const PointPair& y) {
    return bracket_pow(y - one, -A) * bracket_pow(-y, -B) * bracket_pow(p - y, -C);
  };
  const std::array<Singularity, 3> sing = {Singularity{1.0, A}, Singularity{0.0, B},
                                           Singularity{z, C}};
  return integrate_plane(f, sing, 2.0 * (A.d() + B.d() + C.d()), tol, budget);
}

QuadratureResult phi1_direct(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             const SpinLabel& l, const SpinLabel& cp, const PointPair& p,
                             double tol, std::int64_t budget) {
  require_even(a1.m + a2.m + cp.m, "m1 + m2 + m_c'");
  require_even(cp.m + a3.m + l.m, "m_c' + m3 + m_l");
  const BalancedExponent one = BalancedExponent::scalar(1.0);
  const BalancedExponent x1 = a1.exponent(), x2 = a2.exponent(), x3 = a3.exponent();
  const BalancedExponent xl = l.exponent(), xc = cp.exponent();
  return triangle_direct(p, (one - x1 + x2 + xc).half(), (one + x1 - x2 + xc).half(),
                         (one - x3 - xl + xc).half(), tol, budget);
}

QuadratureResult phi2_direct(const SpinLabel& a1, const SpinLabel& a2, const SpinLabel& a3,
                             const SpinLabel& l, const SpinLabel& c, const PointPair& p,
                             double tol, std::int64_t budget, Phi2Reading reading, cplx z1) {
  require_even(a2.m + a3.m + c.m, "m2 + m3 + m_c");
  require_even(a1.m + l.m + c.m, "m1 + m_l + m_c");
  const BalancedExponent one = BalancedExponent::scalar(1.0);
  const BalancedExponent x1 = a1.exponent(), x2 = a2.exponent(), x3 = a3.exponent();
  const BalancedExponent xl = l.exponent(), xc = c.exponent();
  const BalancedExponent D = (one + x2 + x3 + xc).half();
  const BalancedExponent P = (one + x1 + xl + xc).half();
  const BalancedExponent Q = (one + x2 - x3 - xc).half();
  const BalancedExponent T = (one - x2 + x3 - xc).half();
  const cplx z = p.z();
  if (z == 0.0 || z == 1.0) fail(ErrorKind::CoincidentPoints, "z must differ from 0 and 1");
  const PointPair one_pt = PointPair::at(1.0);
  QuadratureResult r;
  if (reading == Phi2Reading::Vertex) {
    const PlaneIntegrand f = [&](const PointPair& z0) {
      return bracket_pow(z0 - one_pt, -P) * bracket_pow(-z0, -Q) * bracket_pow(z0 - p, -T);
    };
    const std::array<Singularity, 3> sing = {Singularity{1.0, P}, Singularity{0.0, Q},
                                             Singularity{z, T}};
    r = integrate_plane(f, sing, 2.0 * (P.d() + Q.d() + T.d()), tol, budget);
  } else {
    if (z1 == z) fail(ErrorKind::CoincidentPoints, "z1 coincides with z");
    const cplx detached = bracket_pow(PointPair::at(z1) - p, -T);
    const PlaneIntegrand f = [&](const PointPair& z0) {
      return bracket_pow(z0 - one_pt, -P) * bracket_pow(-z0, -Q) * detached;
    };
    const std::array<Singularity, 2> sing = {Singularity{1.0, P}, Singularity{0.0, Q}};
    r = integrate_plane(f, sing, 2.0 * (P.d() + Q.d()), tol, budget);
  }
  const cplx pre = bracket_pow(p, -D);
  r.value *= pre;
  r.abs_err *= std::abs(pre);
  return r;
}

}  // namespace sl2c
