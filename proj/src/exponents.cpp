#include "sl2c/exponents.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sl2c/errors.hpp"

namespace sl2c {

namespace {

constexpr double kIntegerTol = 1e-9;
constexpr double kPoleTol = 1e-12;
constexpr double kZeroTol = 1e-8;
constexpr double kStirlingRadius = 10.0;
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);
const double kLogPi = std::log(kPi);

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

std::string describe(cplx w) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << w.real() << (w.imag() < 0 ? "" : "+") << w.imag() << "i)";
  return os.str();
}

// Valid for Re w >= 0 and |w| >= kStirlingRadius.
cplx stirling(cplx w) {
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  for (int k = static_cast<int>(kStirling.size()) - 1; k >= 0; --k) series = series * inv2 + kStirling[k];
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series * inv;
}

// Re w >= 0. Shifts upward until Stirling applies. With exact_branch the
// shift logs are summed individually, otherwise their product is logged once.
cplx log_gamma_right(cplx w, bool exact_branch) {
  if (std::abs(w) >= kStirlingRadius) return stirling(w);
  const int shift = static_cast<int>(std::ceil(kStirlingRadius - w.real()));
  cplx correction = 0.0;
  if (exact_branch) {
    for (int k = 0; k < shift; ++k) correction += std::log(w + static_cast<double>(k));
  } else {
    cplx prod = 1.0;
    for (int k = 0; k < shift; ++k) prod *= (w + static_cast<double>(k));
    correction = std::log(prod);
  }
  return stirling(w + static_cast<double>(shift)) - correction;
}

// log sin(pi w) modulo 2 pi i, stable for large |Im w|.
cplx log_sin_pi(cplx w) {
  const double x = w.real() - 2.0 * std::round(0.5 * w.real());
  const cplx wr(x, w.imag());
  const cplx i(0.0, 1.0);
  if (w.imag() > 1.0) {
    const cplx small = std::exp(2.0 * kPi * i * wr);
    return -i * kPi * wr + cplx(-std::log(2.0), 0.5 * kPi) + std::log(1.0 - small);
  }
  if (w.imag() < -1.0) {
    const cplx small = std::exp(-2.0 * kPi * i * wr);
    return i * kPi * wr + cplx(-std::log(2.0), -0.5 * kPi) + std::log(1.0 - small);
  }
  return std::log(std::sin(kPi * wr));
}

void check_pole(cplx w) {
  if (detail::near_nonpositive_integer(w, kPoleTol)) {
    fail(ErrorKind::PoleAtArgument, "log_gamma pole at " + describe(w));
  }
}

}  // namespace

namespace detail {

bool near_nonpositive_integer(cplx w, double tol, int* k) {
  const double r = std::round(w.real());
  if (r > 0.0) return false;
  if (std::abs(w - cplx(r, 0.0)) > tol) return false;
  if (k != nullptr) *k = static_cast<int>(-r);
  return true;
}

cplx log_gamma_mod(cplx w) {
  if (w.real() >= 0.5) return log_gamma_right(w, false);
  // Reflection: Gamma(w) Gamma(1 - w) = pi / sin(pi w).
  return kLogPi - log_sin_pi(w) - log_gamma_right(1.0 - w, false);
}

cplx log_a_mod(cplx hol, cplx anti) {
  const cplx upper = 1.0 - anti;
  const cplx lg_upper = log_gamma_mod(upper);
  if (near_nonpositive_integer(hol, kZeroTol)) {
    return cplx(-std::numeric_limits<double>::infinity(), 0.0);
  }
  return lg_upper - log_gamma_mod(hol);
}

}  // namespace detail

BalancedExponent::BalancedExponent(cplx hol, cplx anti) {
  const cplx diff = hol - anti;
  const double n = std::round(diff.real());
  if (std::abs(diff - cplx(n, 0.0)) > kIntegerTol) {
    fail(ErrorKind::DomainError,
         "hol - anti = " + describe(diff) + " is not an integer");
  }
  center_ = 0.5 * (hol + anti);
  n_ = static_cast<int>(n);
}

BalancedExponent BalancedExponent::from_center(cplx center, int n) {
  BalancedExponent e;
  e.center_ = center;
  e.n_ = n;
  return e;
}

BalancedExponent BalancedExponent::half() const {
  if (n_ % 2 != 0) {
    fail(ErrorKind::DomainError, "halving an exponent with odd n = " + std::to_string(n_));
  }
  return from_center(0.5 * center_, n_ / 2);
}

cplx log_gamma(cplx w) {
  check_pole(w);
  if (w.real() >= 0.0) return log_gamma_right(w, true);
  const int shift = static_cast<int>(std::ceil(-w.real()));
  cplx correction = 0.0;
  for (int k = 0; k < shift; ++k) correction += std::log(w + static_cast<double>(k));
  return log_gamma_right(w + static_cast<double>(shift), true) - correction;
}

cplx a_func(const BalancedExponent& alpha) {
  const cplx hol = alpha.hol();
  const cplx upper = 1.0 - alpha.anti();
  int j = 0;
  int k = 0;
  const bool upper_pole = detail::near_nonpositive_integer(upper, kPoleTol, &j);
  const bool hol_zero = detail::near_nonpositive_integer(hol, kZeroTol, &k);
  if (upper_pole) {
    if (!hol_zero) {
      fail(ErrorKind::PoleAtArgument,
           "Gamma(1 - anti) pole at 1 - anti = " + describe(upper));
    }
    // Gamma(-j - e) / Gamma(-k + e) -> -(-1)^(j+k) k! / j! as e -> 0.
    const double ratio = std::exp(std::lgamma(k + 1.0) - std::lgamma(j + 1.0));
    return -sign_pow(j + k) * ratio;
  }
  if (hol_zero) return 0.0;
  return std::exp(detail::log_gamma_mod(upper) - detail::log_gamma_mod(hol));
}

cplx a_prod(std::span<const BalancedExponent> alphas) {
  cplx log_sum = 0.0;
  cplx special = 1.0;
  bool zero = false;
  for (std::size_t idx = 0; idx < alphas.size(); ++idx) {
    const BalancedExponent& alpha = alphas[idx];
    const cplx hol = alpha.hol();
    const cplx upper = 1.0 - alpha.anti();
    const bool upper_pole = detail::near_nonpositive_integer(upper, kPoleTol);
    const bool hol_zero = detail::near_nonpositive_integer(hol, kZeroTol);
    if (upper_pole && !hol_zero) {
      fail(ErrorKind::PoleAtArgument, "factor " + std::to_string(idx) +
                                          ": Gamma(1 - anti) pole at 1 - anti = " + describe(upper));
    }
    if (upper_pole) {
      special *= a_func(alpha);
    } else if (hol_zero) {
      zero = true;
    } else {
      log_sum += detail::log_gamma_mod(upper) - detail::log_gamma_mod(hol);
    }
  }
  if (zero) return 0.0;
  return special * std::exp(log_sum);
}

cplx a_prod(std::initializer_list<BalancedExponent> alphas) {
  return a_prod(std::span<const BalancedExponent>(alphas.begin(), alphas.size()));
}

BalancedExponent bar_reflect(const BalancedExponent& alpha) {
  // (1 - anti, 1 - hol): center 1 - center, n unchanged in sign convention
  // hol - anti = (1 - anti) - (1 - hol) = n.
  return BalancedExponent::from_center(1.0 - alpha.center(), alpha.n());
}

cplx bracket_pow(const PointPair& p, const BalancedExponent& alpha) {
  const cplx z = p.z();
  const cplx zbar = p.zbar();
  if (z == 0.0 || zbar == 0.0) {
    if (2.0 * alpha.d() > 0.0 && z == 0.0 && zbar == 0.0) return 0.0;
    fail(ErrorKind::DomainError, "bracket power at the origin with Re(hol + anti) <= 0");
  }
  if (p.conjugate()) {
    const double logr = std::log(std::abs(z));
    const double theta = std::arg(z);
    const cplx sum = alpha.hol() + alpha.anti();
    return std::exp(sum * logr + cplx(0.0, alpha.n() * theta));
  }
  return std::exp(alpha.hol() * std::log(z) + alpha.anti() * std::log(zbar));
}

cplx phase_pow(int n, PhaseBase base) {
  if (base == PhaseBase::MinusOne) return sign_pow(n);
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace sl2c
