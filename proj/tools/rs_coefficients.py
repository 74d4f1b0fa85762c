#!/usr/bin/env python3
"""Emit Taylor coefficients (in u = p - 1/2) of the Riemann-Siegel correction
terms C0..C4 as a C++ table. Used to produce tools/rs_coefficients.inc."""
import mpmath as mp

mp.mp.dps = 150
DEG = 110


def cos_series(lin, quad, const, deg):
    # Taylor series of cos(const + lin*u + quad*u^2) via exp of a complex series.
    a = [mp.mpc(0)] * (deg + 1)
    a[1] = 1j * lin
    if deg >= 2:
        a[2] = 1j * quad
    # e = exp(a), e' = a' e
    e = [mp.mpc(0)] * (deg + 1)
    e[0] = mp.exp(1j * const)
    for n in range(1, deg + 1):
        s = mp.mpc(0)
        for k in range(1, min(n, 2) + 1):
            s += k * a[k] * e[n - k]
        e[n] = s / n
    return [x.real for x in e]


def divide(num, den):
    q = [mp.mpf(0)] * len(num)
    for n in range(len(num)):
        s = num[n]
        for k in range(1, n + 1):
            s -= den[k] * q[n - k]
        q[n] = s / den[0]
    return q


pi = mp.pi
# p = 1/2 + u: p^2 - p - 1/16 = u^2 - 5/16 ; cos(2 pi p) = cos(pi + 2 pi u)
num = cos_series(0, 2 * pi, -5 * pi / 8, DEG)
den = cos_series(2 * pi, 0, pi, DEG)
psi = divide(num, den)


def deriv(c, k):
    # Taylor coefficients of the k-th derivative
    out = []
    for n in range(len(c) - k):
        f = mp.mpf(1)
        for j in range(n + 1, n + k + 1):
            f *= j
        out.append(c[n + k] * f)
    return out


def combo(terms):
    length = min(len(deriv(psi, k)) for k, _ in terms)
    res = [mp.mpf(0)] * length
    for k, w in terms:
        d = deriv(psi, k)
        for i in range(length):
            res[i] += w * d[i]
    return res


C = [
    combo([(0, 1)]),
    combo([(3, -1 / (96 * pi**2))]),
    combo([(2, 1 / (64 * pi**2)), (6, 1 / (18432 * pi**4))]),
    combo([(1, -1 / (64 * pi**2)), (5, -1 / (3840 * pi**4)),
           (9, -1 / (5308416 * pi**6))]),
    combo([(0, 1 / (128 * pi**2)), (4, mp.mpf(19) / (24576 * pi**4)),
           (8, mp.mpf(11) / (5898240 * pi**6)),
           (12, 1 / (2038431744 * pi**8))]),
]

print("// Generated by tools/rs_coefficients.py; Taylor coefficients in u = p - 1/2.")
for k, c in enumerate(C):
    n = len(c)
    while n > 1 and abs(c[n - 1]) * mp.mpf(0.5) ** (n - 1) < mp.mpf(10) ** -24:
        n -= 1
    print(f"inline constexpr double kRsC{k}[] = {{")
    for v in c[:n]:
        print(f"    {mp.nstr(v, 20, min_fixed=1, max_fixed=0)},")
    print("};")
