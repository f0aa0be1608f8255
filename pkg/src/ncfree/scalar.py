"""Scalar machinery: the atomic measures nu_k, Chebyshev-ratio Cauchy
transforms, moment/free-cumulant transforms, scalar free convolution, the
recursive two-color pairing counts, and the free binomial series.

All counting paths run in exact integer/rational arithmetic; floating point
appears only in the Cauchy-transform sample checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, cos, pi
from typing import Sequence

import numpy as np

from .partitions import enumerate_nc12, odd_compositions


# ---------------------------------------------------------------------------
# Chebyshev polynomials (monic normalization: U_1(z) = z, U_k(2cos t) =
# sin((k+1)t)/sin t) and the measures nu_k
# ---------------------------------------------------------------------------


def chebyshev_u_coeffs(k: int) -> list[int]:
    """Integer coefficients of U_k, lowest degree first."""
    if k < 0:
        raise ValueError("k must be >= 0")
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        nxt = [a - b for a, b in zip(nxt, prev + [0] * (len(nxt) - len(prev)))]
        prev, cur = cur, nxt
    return cur


def chebyshev_u(k: int, z) -> complex:
    prev, cur = 1.0 + 0j, complex(z)
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, z * cur - prev
    return cur


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights must pair up")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if any(w < -1e-12 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    def cauchy(self, z: complex) -> complex:
        if min(abs(z - x) for x in self.atoms) < 1e-6:
            raise ValueError("evaluation point too close to the spectrum")
        return sum(a / (z - x) for x, a in zip(self.atoms, self.weights))

    def moment(self, n: int) -> float:
        return sum(a * x**n for x, a in zip(self.atoms, self.weights))


def nu_k(k: int) -> AtomicMeasure:
    """nu_1 = delta_0; otherwise k atoms at the zeros of U_{k} with the
    sine-squared weights."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return AtomicMeasure((0.0,), (1.0,))
    atoms = tuple(2 * cos(j * pi / (k + 1)) for j in range(1, k + 1))
    weights = tuple((1 - cos(2 * j * pi / (k + 1))) / (k + 1) for j in range(1, k + 1))
    return AtomicMeasure(atoms, weights)


def tridiagonal_moment(k: int, n: int) -> int:
    """Top-left entry of X_k^n for the k x k tridiagonal 0/1 matrix; exact."""
    if k < 1 or n < 0:
        raise ValueError("k >= 1 and n >= 0 required")
    col = [0] * k
    col[0] = 1
    for _ in range(n):
        nxt = [0] * k
        for i, v in enumerate(col):
            if v:
                if i > 0:
                    nxt[i - 1] += v
                if i + 1 < k:
                    nxt[i + 1] += v
        col = nxt
    return col[0]


def nu_moments(k: int, upto: int) -> list[int]:
    """Exact integer moments of nu_k through degree `upto` (tridiagonal route)."""
    return [tridiagonal_moment(k, n) for n in range(upto + 1)]


def _poly_series_div(num: list[Fraction], den: list[Fraction], upto: int) -> list[Fraction]:
    """Power-series quotient num/den through order `upto` (den[0] != 0)."""
    num = num + [Fraction(0)] * (upto + 1 - len(num))
    den = den + [Fraction(0)] * (upto + 1 - len(den))
    inv0 = Fraction(1) / den[0]
    out: list[Fraction] = []
    for n in range(upto + 1):
        acc = num[n] - sum(den[j] * out[n - j] for j in range(1, n + 1))
        out.append(acc * inv0)
    return out


def chebyshev_ratio_moments(k: int, upto: int) -> list[Fraction]:
    """Moments of nu_k read off the expansion of U_{k-1}/U_k at infinity.

    With w = 1/z, U_{k-1}(z)/U_k(z) = w * a(w)/b(w) where a, b are the
    reversed coefficient polynomials; the w^n coefficient of a/b is m_n.
    """
    ck1 = chebyshev_u_coeffs(k - 1)
    ck = chebyshev_u_coeffs(k)
    # reversed: a(w) = w^{k-1} U_{k-1}(1/w), b(w) = w^k U_k(1/w)
    a = [Fraction(c) for c in reversed(ck1)]
    b = [Fraction(c) for c in reversed(ck)]
    return _poly_series_div(a, b, upto)


# ---------------------------------------------------------------------------
# Moment <-> free cumulant transforms and scalar free convolution
# ---------------------------------------------------------------------------


def _conv(a: Sequence, b: Sequence, upto: int) -> list:
    return [sum(a[j] * b[n - j] for j in range(n + 1)) for n in range(upto + 1)]


def moments_to_cumulants(m: Sequence) -> list:
    """kappa_1..kappa_N from m_0=1, m_1..m_N via
    m_n = sum_s kappa_s * [coefficient of z^{n-s} in M(z)^s]."""
    if m[0] != 1:
        raise ValueError("m_0 must be 1")
    n_max = len(m) - 1
    kappa = [None]  # 1-indexed
    powers = [[1] + [0] * n_max]  # M^0
    for s in range(1, n_max + 1):
        powers.append(_conv(powers[-1], m, n_max))
    for n in range(1, n_max + 1):
        acc = m[n]
        for s in range(1, n):
            acc = acc - kappa[s] * powers[s][n - s]
        kappa.append(acc)
    return kappa[1:]


def cumulants_to_moments(kappa: Sequence) -> list:
    """Inverse transform: rebuild m_0..m_N from kappa_1..kappa_N."""
    n_max = len(kappa)
    m = [kappa[0] * 0 + 1]
    for n in range(1, n_max + 1):
        acc = m[0] * 0
        for s in range(1, n + 1):
            # coefficient of z^{n-s} in M(z)^s, with M known through degree n-1
            pw = [1] + [0] * (n - s)
            for _ in range(s):
                pw = _conv(pw, m + [m[0] * 0] * (n - s), n - s)
            acc = acc + kappa[s - 1] * pw[n - s]
        m.append(acc)
    return m


def free_convolve_scalar(m1: Sequence, m2: Sequence, upto: int) -> list:
    """Moments of the free convolution: add free cumulants, convert back."""
    if len(m1) <= upto or len(m2) <= upto:
        raise ValueError("need moments through the requested degree")
    k1 = moments_to_cumulants(list(m1[: upto + 1]))
    k2 = moments_to_cumulants(list(m2[: upto + 1]))
    return cumulants_to_moments([a + b for a, b in zip(k1, k2)])


# ---------------------------------------------------------------------------
# Cauchy-transform sample checks
# ---------------------------------------------------------------------------


def g_recursion_check(n: int, z: complex) -> float:
    """|G_{nu_n}(z) - 1/(z - G_{nu_{n-1}}(z))| from the atomic sums."""
    if n <= 1:
        raise ValueError("n must be > 1")
    g_n = nu_k(n).cauchy(z)
    g_prev = nu_k(n - 1).cauchy(z)
    return abs(g_n - 1 / (z - g_prev))


def _pade_coeffs(series: list[Fraction], m: int) -> tuple[list[Fraction], list[Fraction]]:
    """Diagonal [m/m] Pade of a power series, exact rational arithmetic."""
    need = 2 * m + 1
    c = list(series[:need]) + [Fraction(0)] * max(0, need - len(series))
    # denominator q_0=1, q_1..q_m solve sum_j c_{m+i-j} q_j = -c_{m+i}
    rows = [[c[m + i - j] for j in range(1, m + 1)] for i in range(1, m + 1)]
    rhs = [-c[m + i] for i in range(1, m + 1)]
    q_tail = _solve_fraction(rows, rhs)
    q = [Fraction(1)] + q_tail
    p = [sum(c[i - j] * q[j] for j in range(0, min(i, m) + 1)) for i in range(m + 1)]
    return p, q


def _solve_fraction(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular Pade system")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _pade_cauchy(moments: Sequence, z: complex, m: int = 12) -> complex:
    """Evaluate G(z) = sum m_n z^{-n-1} through a diagonal Pade approximant
    of the series in w = 1/z."""
    series = [Fraction(v) for v in moments]
    p, q = _pade_coeffs(series, m)
    w = 1 / z
    pv = sum(complex(c) * w**i for i, c in enumerate(p))
    qv = sum(complex(c) * w**i for i, c in enumerate(q))
    return w * pv / qv


def subordination_check(n: int, z: complex, series_degree: int = 24) -> float:
    """Residual of F_{mu_{n,n}}(z + G_{nu_{n-1}}(z)) = z - G_{nu_{n-1}}(z).

    n = 2 uses the closed arcsine F-transform sqrt(w^2-4); n >= 3 evaluates
    F = 1/G with G from a diagonal Pade approximant of the exact moment
    series of nu_n boxplus nu_n.
    """
    if n <= 1:
        raise ValueError("n must be > 1")
    g_prev = nu_k(n - 1).cauchy(z)
    w = z + g_prev
    target = z - g_prev
    if n == 2:
        s = np.emath.sqrt(w * w - 4)
        f_val = s if abs(s - w) <= abs(s + w) else -s
    else:
        m_nu = [Fraction(v) for v in nu_moments(n, series_degree)]
        m_conv = free_convolve_scalar(m_nu, m_nu, series_degree)
        f_val = 1 / _pade_cauchy(m_conv, w, m=series_degree // 2)
    return abs(f_val - target)


# ---------------------------------------------------------------------------
# The recursive pairing counts M^{(k)}_{2n}
# ---------------------------------------------------------------------------


def _odd_composition_sum(p: int, parts: int, m: Sequence[int]) -> int:
    """sum over compositions of p into `parts` odd parts of the products
    m_{part-1}; the empty composition contributes 1 when p = parts = 0."""
    if parts == 0:
        return 1 if p == 0 else 0
    total = 0
    for compo in odd_compositions(p, parts):
        prod = 1
        for part in compo:
            prod *= m[part - 1]
        total += prod
    return total


def tcnc_recursion(k: int, n_max: int, trace: bool = False):
    """Even moments M^{(k)}_{2n} of nu_k boxplus nu_k for n = 1..n_max, via
    the subordination recursion M_{2n} = S_{n,k} - T_{n,k}; exact integers.

    With trace=True, returns (values, [(n, S, T), ...]).
    """
    if k < 2 or n_max < 1:
        raise ValueError("k >= 2 and n_max >= 1 required")
    m = nu_moments(k - 1, 2 * n_max + 2)
    big_m = {0: 1}
    log = []
    out = []
    for n in range(1, n_max + 1):
        s = 2 * sum(
            comb(2 * n - 1, i) * _odd_composition_sum(i, 2 * n - i, m)
            for i in range(n, 2 * n)
        )
        t = 0
        for j in range(1, n - 1):
            inner = 0
            for p in range(n - j - 1, 2 * (n - j)):
                r_hi = _odd_composition_sum(p + 1, 2 * (n - j) - (p + 1), m)
                r_lo = _odd_composition_sum(p, 2 * (n - j) - p, m)
                inner += comb(2 * (n - j) - 1, p) * (r_hi - r_lo)
            t += big_m[2 * j] * inner
        val = s - t
        big_m[2 * n] = val
        out.append(val)
        log.append((n, s, t))
    return (out, log) if trace else out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def tcnc_limit_row(n_max: int) -> list[int]:
    """Large-k limit 2^n * Catalan(n): the free square of the semicircle law."""
    return [2**n * catalan(n) for n in range(1, n_max + 1)]


def tcnc_table(k_max: int, n_max: int) -> list[tuple[str, list[int]]]:
    """Rows (label, [M_2, M_4, ...]) for k = 2..k_max, plus a stabilized
    "k>K" row when the next two rows beyond k_max coincide."""
    rows = [(str(k), tcnc_recursion(k, n_max)) for k in range(2, k_max + 1)]
    nxt = tcnc_recursion(k_max + 1, n_max)
    if nxt == tcnc_recursion(k_max + 2, n_max):
        rows.append((f"k>{k_max}", nxt))
    return rows


# ---------------------------------------------------------------------------
# Free binomial moments, three ways
# ---------------------------------------------------------------------------


def free_binomial_closed(n: int, t) -> Fraction:
    """Closed formula for m_n(t)."""
    t = Fraction(t)
    if t < 1:
        raise ValueError("t must be >= 1")
    if n == 0:
        return Fraction(1)
    acc = t ** (2 * n)
    for j in range(1, n + 1):
        acc -= t * Fraction(comb(2 * j, j), 2 * (2 * j - 1)) * (t - 1) ** j * t ** (2 * (n - j))
    return acc


def free_binomial_series(t, upto: int) -> list[Fraction]:
    """Coefficients of (t - 2 - t*sqrt(1 - 4(t-1)z^2)) / (2(t^2 z^2 - 1))
    about z = 0, exact; odd coefficients vanish."""
    t = Fraction(t)
    if t < 1:
        raise ValueError("t must be >= 1")
    if upto > 40:
        raise ValueError("series degree limited to 40")
    n_half = upto // 2 + 1
    # sqrt(1+u) = sum binom(1/2, j) u^j with u = -4(t-1) z^2
    sqrt_even = []
    coeff = Fraction(1)
    for j in range(n_half):
        sqrt_even.append(coeff * (-4 * (t - 1)) ** j)
        coeff = coeff * (Fraction(1, 2) - j) / (j + 1)
    numer = [Fraction(t - 2) - t * sqrt_even[0]] + [-t * c for c in sqrt_even[1:]]
    # denominator 2(t^2 z^2 - 1) = -2(1 - t^2 z^2): geometric inverse
    inv_den = [-Fraction(1, 2) * t ** (2 * i) for i in range(n_half)]
    even = _conv(numer, inv_den, n_half - 1)
    out = []
    for d in range(upto + 1):
        out.append(even[d // 2] if d % 2 == 0 else Fraction(0))
    return out


def free_binomial_enumeration(n: int, t) -> Fraction:
    """sum over pairings of 2n of t^{#outer pairs} (t-1)^{#inner pairs}."""
    t = Fraction(t)
    total = Fraction(0)
    for p in enumerate_nc12(2 * n, pairs_only=True):
        pairs = p.pairs
        outer = sum(
            1
            for (a, b) in pairs
            if not any(c < a and b < d for (c, d) in pairs)
        )
        total += t**outer * (t - 1) ** (n - outer)
    return total


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def measure_to_json(m: AtomicMeasure) -> dict:
    return {"atoms": list(m.atoms), "weights": list(m.weights)}


def table_to_tsv(rows: list[tuple[str, list[int]]]) -> str:
    n_max = len(rows[0][1])
    header = "k\t" + "\t".join(f"n={2 * (i + 1)}" for i in range(n_max))
    lines = [header]
    for label, vals in rows:
        lines.append(label + "\t" + "\t".join(str(v) for v in vals))
    return "\n".join(lines) + "\n"
