"""Chebyshev coefficients for sqrt(x) * exp(x) * K0(x) on x > 2.

The expansion variable is t = 4/x - 1, which maps (2, inf) onto (-1, 1].
Coefficients are computed at 60 significant digits and printed as Rust
literals for `crates/core/src/numerics/bessel.rs`.
"""
from mpmath import mp, besselk, cos, pi, sqrt, exp, mpf

mp.dps = 60
N = 96


def g(t):
    x = 4 / (t + 1)
    return sqrt(x) * exp(x) * besselk(0, x)


nodes = [cos(pi * (j + mpf(1) / 2) / N) for j in range(N)]
values = [g(t) for t in nodes]
coeffs = []
for n in range(N):
    s = sum(values[j] * cos(pi * n * (j + mpf(1) / 2) / N) for j in range(N))
    coeffs.append(2 * s / N)

last = max(i for i, c in enumerate(coeffs) if abs(c) > mpf("1e-19"))
for c in coeffs[: last + 1]:
    print(f"    {mp.nstr(c, 20, min_fixed=0, max_fixed=0)},")
