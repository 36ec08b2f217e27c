#!/usr/bin/env python3
"""Regenerates oracle_values.hpp.

Scalar references come from mpmath at 40 digits. The Racah references come
from a separate numpy/scipy evaluation of the bilateral lattice sum (own
window, own quadrature nodes, own extrapolation) so that the C++ engine is
compared against an implementation that shares no code with it.

Usage: python3 generate_oracles.py > oracle_values.hpp
"""
import mpmath as mp
import numpy as np
from scipy.special import loggamma

mp.mp.dps = 40


def c(x):
    x = mp.mpc(x)
    return "{%.17g, %.17g}" % (float(x.real), float(x.imag))


def a_mp(h, an):
    return mp.gamma(1 - an) / mp.gamma(h)


def spin(m, s):
    return (mp.mpf(m) / 2 + 1j * mp.mpf(s), -mp.mpf(m) / 2 + 1j * mp.mpf(s))


def comb(terms):
    """terms: list of (coef, pair); returns (1 + sum coef*pair)/2 componentwise."""
    h = 1 + sum(k * p[0] for k, p in terms)
    a = 1 + sum(k * p[1] for k, p in terms)
    return (h / 2, a / 2)


def bracket(z, e):
    z = mp.mpc(z)
    return z ** e[0] * mp.conj(z) ** e[1]


out = []
emit = out.append
emit("#pragma once")
emit("// Generated by generate_oracles.py; do not edit by hand.")
emit("#include <complex>")
emit("namespace oracle {")
emit("using C = std::complex<double>;")

lg_points = [0.5, mp.mpc(-2.5, 0.3), mp.mpc(3, 40), mp.mpc(0.1, -7), mp.mpc(-10.3, -0.2),
             mp.mpc(20, 0.5), mp.mpc(-30.5, 2), mp.mpc(1e-3, 1e-3), mp.mpc(-0.5, 0)]
emit("struct LgCase { C w; C value; };")
emit("inline const LgCase kLogGamma[] = {")
for w in lg_points:
    emit("  {%s, %s}," % (c(w), c(mp.loggamma(w))))
emit("};")

a_points = [(0.75, 0.75), (mp.mpc(0.3, 0.7), mp.mpc(-0.7, 0.7)), (mp.mpc(1.25, 0.1), mp.mpc(0.25, 0.1)),
            (mp.mpc(-1.6, -0.4), mp.mpc(-3.6, -0.4)), (mp.mpc(2.2, 1.5), mp.mpc(3.2, 1.5))]
emit("struct ACase { C hol; C anti; C value; };")
emit("inline const ACase kAFunc[] = {")
for h, an in a_points:
    emit("  {%s, %s, %s}," % (c(h), c(an), c(a_mp(h, an))))
emit("};")
emit("inline const C kAProdQuarter = %s;" % c((mp.gamma(0.25) / mp.gamma(0.75)) ** 2))

# W at m = 0, sigma = (1, 2, 3), z = (0, 1, 2i).
s1, s2, s3 = spin(0, 1), spin(0, 2), spin(0, 3)
e12 = comb([(1, s1), (1, s2), (1, s3)])
e13 = comb([(1, s1), (-1, s2), (-1, s3)])
e23 = comb([(-1, s1), (1, s2), (-1, s3)])
neg = lambda e: (-e[0], -e[1])
z1, z2, z3 = 0, 1, 2j
w = bracket(z2 - z1, neg(e12)) * bracket(z3 - z1, neg(e13)) * bracket(z2 - z3, neg(e23))
emit("inline const C kWKernel = %s;" % c(w))


def coeff_a(x1, x2, x3):
    num = a_mp(*comb([(1, x1), (-1, x2), (-1, x3)])) * a_mp(1 + x3[0], 1 + x3[1])
    return mp.pi * num / a_mp(*comb([(1, x1), (-1, x2), (1, x3)]))


def coeff_b(x1, x2, x3):
    num = a_mp(*comb([(-1, x1), (1, x2), (-1, x3)])) * a_mp(1 + x3[0], 1 + x3[1])
    return 4 * mp.pi ** 3 * num / a_mp(*comb([(-1, x1), (1, x2), (1, x3)]))


emit("struct CoeffCase { int m[3]; double sigma[3]; C A; C B; };")
emit("inline const CoeffCase kCoefficients[] = {")
for ms, ss in [((0, 0, 0), (0.3, 0.7, 1.1)), ((2, 0, 0), (0.4, -1.2, 0.8)), ((1, 1, 2), (0.6, 0.1, -0.9))]:
    xs = [spin(m, s) for m, s in zip(ms, ss)]
    emit("  {{%d, %d, %d}, {%r, %r, %r}, %s, %s}," % (*ms, *ss, c(coeff_a(*xs)), c(coeff_b(*xs))))
emit("};")

# Radially reducible plane integrals: [z - s]^{-alpha} exp(-|z - s|^2) with n = 0
# equals pi Gamma(1 - (hol + anti)/2 * 2 / 2) = pi Gamma(1 - hol).
emit("struct RadialCase { C hol; C value; };")
emit("inline const RadialCase kRadial[] = {")
for h in [mp.mpf(0.5), mp.mpc(0.7, 0.4), mp.mpc(-0.3, 1.1)]:
    emit("  {%s, %s}," % (c(h), c(mp.pi * mp.gamma(1 - h))))
emit("};")

# Chain closed forms at z1 = 0, z2 = 1.
emit("inline const C kChainQuarter = %s;" % c(mp.pi * (mp.gamma(0.25) / mp.gamma(0.75)) ** 2))
emit("inline const C kChainShifted = %s;" % c(-mp.pi * a_mp(1.25, 0.25) * a_mp(0.75, 0.75)))


# Racah references from an independent numpy lattice sum.
def la(h, a):
    return loggamma(1 - np.asarray(a, complex)) - loggamma(np.asarray(h, complex))


def racah_sum(labels, nmax, numax, eta=-0.5):
    a1, a2, a3, l, cc, cp = [(complex(x[0]), complex(x[1])) for x in labels]

    def half(*terms):
        h = 1 + sum(k * p[0] for k, p in terms)
        a = 1 + sum(k * p[1] for k, p in terms)
        return (h / 2, a / 2)

    def half0(*terms):
        h = sum(k * p[0] for k, p in terms)
        a = sum(k * p[1] for k, p in terms)
        return (h / 2, a / 2)

    num = [half((1, a1), (-1, a2), (1, cp)), half((-1, a1), (-1, a2), (1, cp)),
           half((1, a3), (1, l), (1, cp)), half((-1, a3), (1, l), (1, cp))]
    den = [(0, 0), cp, half0((1, cp), (1, l), (-1, a2), (-1, cc)), half0((1, cc), (1, cp), (1, l), (-1, a2))]
    x, wq = np.polynomial.legendre.leggauss(20)
    t = np.concatenate([k + 0.5 + 0.5 * x for k in range(-numax, numax)])
    wt = np.concatenate([0.5 * wq for _ in range(-numax, numax)])
    nu = t + 1j * eta
    scales = np.array([1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.45, 0.4])

    def win(r):
        # cosine-free C-infinity taper: 1 below 0.3, 0 above 1
        u = np.clip((1 - r) / 0.7, 0, 1)
        f = lambda v: np.where(v > 0, np.exp(-1 / np.maximum(v, 1e-300)), 0.0)
        return f(u) / (f(u) + f(1 - u))

    S = np.zeros(len(scales), complex)
    for n in range(-nmax, nmax + 1):
        sh, sa = (n + 1j * nu) / 2, (-n + 1j * nu) / 2
        L = sum(la(o[0] + sh, o[1] + sa) for o in num) - sum(la(o[0] + sh, o[1] + sa) for o in den)
        v = np.exp(L) * wt
        r = np.sqrt((n / nmax) ** 2 + (t / numax) ** 2)
        for j, sc in enumerate(scales):
            S[j] += np.sum(v * win(r / sc))
    A = np.array([[1] + [s ** (-(2 + k)) for k in range(6)] for s in scales])
    return np.linalg.lstsq(A, S, rcond=None)[0][0]


def racah_pref(labels, mcp):
    a1, a2, a3, l, cc, cp = labels
    num = a_mp(*comb([(-1, a3), (-1, l), (1, cp)])) * a_mp(*comb([(1, a1), (1, cc), (1, l)]))
    den = a_mp(*comb([(1, a1), (-1, a2), (1, cp)])) * a_mp(*comb([(1, a2), (-1, a3), (1, cc)]))
    return (-1) ** mcp * mp.pi ** 2 / 4 * num / den


emit("struct RacahCase { int m[6]; double sigma[6]; C value; };")
emit("inline const RacahCase kRacah[] = {")
for ms, ss in [((0, 0, 0, 0, 0, 0), (0.2, 0.5, 0.9, 1.3, 0.4, 0.7)),
               ((1, 1, 1, 1, 0, 0), (0.3, -0.6, 0.8, 0.5, 1.1, -0.4))]:
    labels = [spin(m, s) for m, s in zip(ms, ss)]
    val = complex(racah_pref(labels, ms[5])) * racah_sum(labels, 120, 180)
    emit("  {{%d, %d, %d, %d, %d, %d}, {%r, %r, %r, %r, %r, %r}, %s}," % (*ms, *ss, c(val)))
emit("};")
emit("}  // namespace oracle")
print("\n".join(out))
