#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace sl2c {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Pair (hol, anti) whose difference is an integer n. Stored as the midpoint
// plus n so that sums and differences keep n exact.
class BalancedExponent {
 public:
  BalancedExponent() = default;
  // Snaps hol - anti to the nearest integer; DomainError if it is further
  // than 1e-9 away.
  BalancedExponent(cplx hol, cplx anti);

  static BalancedExponent from_center(cplx center, int n);
  // (x, x): the n = 0 exponent with both components equal to x.
  static BalancedExponent scalar(cplx x) { return from_center(x, 0); }

  cplx hol() const { return center_ + 0.5 * n_; }
  cplx anti() const { return center_ - 0.5 * n_; }
  cplx center() const { return center_; }
  int n() const { return n_; }
  // Real part of (hol + anti) / 2: controls |[z]^alpha| = |z|^(2 d).
  double d() const { return center_.real(); }

  // Halves both components; DomainError when n is odd.
  BalancedExponent half() const;
  // Swaps the two components (n -> -n).
  BalancedExponent swapped() const { return from_center(center_, -n_); }

  friend BalancedExponent operator+(const BalancedExponent& a, const BalancedExponent& b) {
    return from_center(a.center_ + b.center_, a.n_ + b.n_);
  }
  friend BalancedExponent operator-(const BalancedExponent& a, const BalancedExponent& b) {
    return from_center(a.center_ - b.center_, a.n_ - b.n_);
  }
  friend BalancedExponent operator-(const BalancedExponent& a) {
    return from_center(-a.center_, -a.n_);
  }
  friend BalancedExponent operator+(const BalancedExponent& a, double x) {
    return from_center(a.center_ + x, a.n_);
  }
  friend BalancedExponent operator+(double x, const BalancedExponent& a) { return a + x; }
  friend BalancedExponent operator-(double x, const BalancedExponent& a) { return (-a) + x; }
  friend BalancedExponent operator-(const BalancedExponent& a, double x) { return a + (-x); }

 private:
  cplx center_{0.0, 0.0};
  int n_ = 0;
};

// Principal-series label: a = m/2 + i sigma, abar = -m/2 + i sigma.
struct SpinLabel {
  int m = 0;
  double sigma = 0.0;

  BalancedExponent exponent() const { return BalancedExponent::from_center(cplx(0.0, sigma), m); }
  SpinLabel negated() const { return {-m, -sigma}; }
};

// Independent holomorphic and antiholomorphic coordinates. The physical
// plane is the conjugate slice, where zbar == conj(z) exactly.
class PointPair {
 public:
  PointPair() = default;
  static PointPair at(cplx z) { return PointPair(z, std::conj(z), true); }
  static PointPair independent(cplx z, cplx zbar) { return PointPair(z, zbar, false); }

  cplx z() const { return z_; }
  cplx zbar() const { return zbar_; }
  bool conjugate() const { return conjugate_; }

  friend PointPair operator-(const PointPair& a, const PointPair& b) {
    return PointPair(a.z_ - b.z_, a.zbar_ - b.zbar_, a.conjugate_ && b.conjugate_);
  }
  friend PointPair operator+(const PointPair& a, const PointPair& b) {
    return PointPair(a.z_ + b.z_, a.zbar_ + b.zbar_, a.conjugate_ && b.conjugate_);
  }
  friend PointPair operator-(const PointPair& a) {
    return PointPair(-a.z_, -a.zbar_, a.conjugate_);
  }
  friend PointPair operator*(const PointPair& a, const PointPair& b) {
    return PointPair(a.z_ * b.z_, a.zbar_ * b.zbar_, a.conjugate_ && b.conjugate_);
  }
  friend PointPair operator/(const PointPair& a, const PointPair& b) {
    return PointPair(a.z_ / b.z_, a.zbar_ / b.zbar_, a.conjugate_ && b.conjugate_);
  }

 private:
  PointPair(cplx z, cplx zbar, bool conj) : z_(z), zbar_(zbar), conjugate_(conj) {}
  cplx z_{0.0, 0.0};
  cplx zbar_{0.0, 0.0};
  bool conjugate_ = true;
};

// Analytic continuation of log Gamma from the positive axis, cut along the
// non-positive reals. PoleAtArgument within 1e-12 of a non-positive integer.
cplx log_gamma(cplx w);

// a(alpha) = Gamma(1 - anti) / Gamma(hol).
// Exact zero when hol is a non-positive integer and 1 - anti is regular.
// When both Gammas sit on poles the balanced limit -(-1)^(j+k) k!/j! is
// returned (hol = -k, 1 - anti = -j). PoleAtArgument when only 1 - anti is
// a pole.
cplx a_func(const BalancedExponent& alpha);
cplx a_prod(std::span<const BalancedExponent> alphas);
cplx a_prod(std::initializer_list<BalancedExponent> alphas);

// alpha -> (1 - anti, 1 - hol), so that a(alpha) a(bar_reflect(alpha)) = 1.
BalancedExponent bar_reflect(const BalancedExponent& alpha);

// [z]^alpha = z^hol * zbar^anti. On the conjugate slice this is single valued:
// |z|^(hol+anti) e^{i n arg z}. [0]^alpha is 0 when Re(hol+anti) > 0 and a
// DomainError otherwise.
cplx bracket_pow(const PointPair& p, const BalancedExponent& alpha);

enum class PhaseBase { MinusOne, I };
// (-1)^n or i^n, exact.
cplx phase_pow(int n, PhaseBase base = PhaseBase::MinusOne);

inline double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

namespace detail {
// log Gamma modulo 2 pi i. Cheaper than log_gamma for large negative real
// parts; only valid where the result is exponentiated.
cplx log_gamma_mod(cplx w);
// log a(alpha) modulo 2 pi i for regular arguments (hol and 1 - anti away
// from poles). Returns -inf real part when a(alpha) vanishes.
cplx log_a_mod(cplx hol, cplx anti);
bool near_nonpositive_integer(cplx w, double tol, int* k = nullptr);
}  // namespace detail

}  // namespace sl2c
