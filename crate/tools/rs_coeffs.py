"""Generate Taylor coefficients of the Riemann-Siegel correction terms C0..C4.

Coefficients are in powers of x = p - 1/2, where p is the fractional part of
sqrt(t / 2pi).  Output is a Rust source file on stdout.

    python3 tools/rs_coeffs.py > crates/core/src/zeta/rs_coeffs.rs
"""
from mpmath import mp, mpf, pi, cos, sin, factorial, nstr

mp.dps = 160
ORDER = 90


def cos_series(a, b, order):
    """Taylor coefficients of cos(a*x + b) around x = 0."""
    out = []
    for k in range(order + 1):
        # d^k/dx^k cos(a x + b) = a^k cos(b + k pi / 2)
        out.append(a**k * cos(b + k * pi / 2) / factorial(k))
    return out


def psi_series(order):
    # numerator -cos(2 pi x^2 - 5 pi / 8): substitute y = x^2 into cos(2 pi y - 5pi/8)
    inner = cos_series(2 * pi, -5 * pi / 8, order // 2 + 1)
    num = [mpf(0)] * (order + 1)
    for k, c in enumerate(inner):
        if 2 * k <= order:
            num[2 * k] = -c
    den = cos_series(2 * pi, mpf(0), order)
    q = []
    for n in range(order + 1):
        acc = num[n]
        for j in range(1, n + 1):
            acc -= den[j] * q[n - j]
        q.append(acc / den[0])
    return q


def deriv(series, m):
    """Taylor coefficients of the m-th derivative."""
    out = []
    for n in range(len(series) - m):
        c = series[n + m]
        for j in range(1, m + 1):
            c *= n + j
        out.append(c)
    return out


def combo(terms, length):
    out = [mpf(0)] * length
    for coef, s in terms:
        for n in range(min(length, len(s))):
            out[n] += coef * s[n]
    return out


psi = psi_series(ORDER)
L = ORDER - 14
d = {m: deriv(psi, m) for m in range(13)}
p2, p4, p6, p8 = pi**2, pi**4, pi**6, pi**8
C = [
    combo([(1, d[0])], L),
    combo([(-1 / (96 * p2), d[3])], L),
    combo([(1 / (64 * p2), d[2]), (1 / (18432 * p4), d[6])], L),
    combo([(-1 / (64 * p2), d[1]), (-1 / (3840 * p4), d[5]), (-1 / (5308416 * p6), d[9])], L),
    combo(
        [
            (1 / (128 * p2), d[0]),
            (mpf(19) / (24576 * p4), d[4]),
            (mpf(11) / (5898240 * p6), d[8]),
            (1 / (2038431744 * p8), d[12]),
        ],
        L,
    ),
]

print("// Generated by tools/rs_coeffs.py. Do not edit by hand.")
print("//")
print("// Taylor coefficients of the Riemann-Siegel correction terms C0..C4 in")
print("// powers of x = p - 1/2, truncated where |c_n| 2^-n < 1e-24.")
print()
for k, series in enumerate(C):
    keep = len(series)
    while keep > 1 and abs(series[keep - 1]) * mpf(2) ** (-(keep - 1)) < mpf("1e-24"):
        keep -= 1
    print(f"pub(crate) const C{k}: [f64; {keep}] = [")
    for c in series[:keep]:
        if abs(c) < mpf("1e-80"):
            c = mpf(0)
        print(f"    {nstr(c, 20, min_fixed=0, max_fixed=0) if c != 0 else '0.0'},")
    print("];")
    print()
