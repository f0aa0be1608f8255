"""Joint moments of two freely independent Jacobi-Szego variables.

Two routes to the same numbers: the two-color non-crossing partition sum
with reset-depth parameter indexing, and a freeness recursion that only
uses the marginal moment engines plus the centering inclusion-exclusion
over alternating interval decompositions.  Also: free convolution at the
moment level, the degree-4 Jacobi-consistency test, and the closed-form
2x2 diagonal model.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import Algebra, LinMap, algebra_from_json, algebra_to_json, element_to_json, matrix_from_json
from .jacobi import (
    DegreeCapError,
    JacobiParams,
    degree_cap,
    evaluate_partition,
    moment,
)
from .partitions import BLUE, RED, ColoredPartition, Partition12, enumerate_nc12, relative_depths


@dataclass(frozen=True)
class JointModel:
    """A blue and a red Jacobi parameter set over a common algebra."""

    params1: JacobiParams
    params2: JacobiParams

    def __post_init__(self):
        if self.params1.algebra != self.params2.algebra:
            raise ValueError("marginals must share an algebra")

    @property
    def algebra(self) -> Algebra:
        return self.params1.algebra

    def marginal(self, color: str) -> JacobiParams:
        return self.params1 if color == BLUE else self.params2


@dataclass(frozen=True)
class ColoredWord:
    """b_0 X_{e_1} b_1 ... X_{e_d} b_d with colors e_i in {blue, red}."""

    algebra: Algebra
    coeffs: tuple[np.ndarray, ...]
    colors: tuple[str, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.colors) + 1:
            raise ValueError("need one more coefficient than symbols")
        if any(c not in (BLUE, RED) for c in self.colors):
            raise ValueError("colors must be 'b' or 'r'")
        d = self.algebra.dim
        for c in self.coeffs:
            if np.asarray(c).shape != (d, d):
                raise ValueError("coefficients must live in the algebra")

    @property
    def degree(self) -> int:
        return len(self.colors)


def colored_word(algebra: Algebra, coeffs: Sequence[np.ndarray], colors: Sequence[str]) -> ColoredWord:
    return ColoredWord(
        algebra,
        tuple(np.asarray(c, dtype=complex) for c in coeffs),
        tuple(colors),
    )


def e_pi(model: JointModel, w: ColoredWord, p: ColoredPartition) -> np.ndarray:
    """E_pi: blue blocks draw from the blue parameters, red from the red;
    the parameter index of each block is its reset (relative) depth."""
    for blk, c in zip(p.base.blocks, p.color):
        for i in blk:
            if w.colors[i - 1] != c:
                raise ValueError(f"partition color at position {i} disagrees with the word")
    depth = dict(zip(p.base.blocks, relative_depths(p)))
    color = dict(zip(p.base.blocks, p.color))
    return evaluate_partition(
        w.coeffs,
        p.base.blocks,
        lambda blk: model.marginal(color[blk]).lam(depth[blk]),
        lambda blk: model.marginal(color[blk]).alpha(depth[blk]),
    )


def _compatible_coloring(p: Partition12, colors: tuple[str, ...]) -> Optional[ColoredPartition]:
    """Color p's blocks by the word colors, or None if a pair straddles colors."""
    out = []
    for blk in p.blocks:
        cs = {colors[i - 1] for i in blk}
        if len(cs) != 1:
            return None
        out.append(cs.pop())
    return ColoredPartition(p, tuple(out))


def _zero_lambdas(params: JacobiParams, upto: int, atol: float = 1e-14) -> bool:
    return all(np.max(np.abs(params.lam(i))) <= atol for i in range(1, upto + 1))


def _e_pi_colored(model: JointModel, coeffs: Sequence[np.ndarray], cp: ColoredPartition) -> np.ndarray:
    depth = dict(zip(cp.base.blocks, relative_depths(cp)))
    color = dict(zip(cp.base.blocks, cp.color))
    return evaluate_partition(
        coeffs,
        cp.base.blocks,
        lambda blk: model.marginal(color[blk]).lam(depth[blk]),
        lambda blk: model.marginal(color[blk]).alpha(depth[blk]),
    )


def joint_moment(model: JointModel, w: ColoredWord, cap: Optional[int] = None) -> np.ndarray:
    """Sum of E_pi over the two-color non-crossing partitions whose coloring
    matches the word's color sequence.

    When both marginals have vanishing lambdas through the word's degree,
    singleton blocks contribute nothing and the sum runs over pairings only.
    """
    cap = degree_cap() if cap is None else cap
    if w.degree > cap:
        raise DegreeCapError(f"degree {w.degree} exceeds cap {cap}")
    if w.degree == 0:
        return w.coeffs[0]
    pairs_only = _zero_lambdas(model.params1, w.degree) and _zero_lambdas(model.params2, w.degree)
    total = model.algebra.zero()
    for p in enumerate_nc12(w.degree, pairs_only=pairs_only):
        cp = _compatible_coloring(p, w.colors)
        if cp is not None:
            total = total + _e_pi_colored(model, w.coeffs, cp)
    return total


# ---------------------------------------------------------------------------
# Freeness-recursion oracle
# ---------------------------------------------------------------------------


def _runs(colors: tuple[str, ...]) -> list[tuple[str, int, int]]:
    """Maximal monochromatic intervals of positions 1..d, as (color, lo, hi)."""
    runs = []
    lo = 1
    for i in range(2, len(colors) + 1):
        if colors[i - 1] != colors[lo - 1]:
            runs.append((colors[lo - 1], lo, i - 1))
            lo = i
    runs.append((colors[lo - 1], lo, len(colors)))
    return runs


def joint_moment_free_recursion(model: JointModel, w: ColoredWord, cap: Optional[int] = None) -> np.ndarray:
    """Compute the joint moment from the marginal engines alone.

    Split the word into maximal monochromatic factors P_1 ... P_m.  Expanding
    each factor as (P_j - E P_j) + E P_j and using that alternating centered
    words have zero expectation gives

        E[P_1 ... P_m] = sum over nonempty S of (-1)^{|S|+1} E[word with the
                         factors in S replaced by their marginal expectations]

    and each replacement strictly lowers the degree, so the recursion closes
    with single-color words handled by `moment`.
    """
    cap = degree_cap() if cap is None else cap
    if w.degree > cap:
        raise DegreeCapError(f"degree {w.degree} exceeds cap {cap}")
    alg = model.algebra
    one = alg.unit()
    memo: dict = {}

    def key(coeffs, colors):
        return colors, b"".join(np.round(np.asarray(c), 12).tobytes() for c in coeffs)

    def marginal_of_run(color, coeffs):
        # coeffs are the interior b_p..b_{q-1}; the run reads X b_p X ... b_{q-1} X
        return moment(model.marginal(color), [one, *coeffs, one], cap=cap)

    def rec(coeffs: tuple, colors: tuple) -> np.ndarray:
        if not colors:
            return coeffs[0]
        k = key(coeffs, colors)
        if k in memo:
            return memo[k]
        runs = _runs(colors)
        if len(runs) == 1:
            out = coeffs[0] @ marginal_of_run(runs[0][0], coeffs[1:-1]) @ coeffs[-1]
            memo[k] = out
            return out
        m = len(runs)
        expect = [
            marginal_of_run(c, coeffs[lo : hi])  # interior coefficients b_lo..b_{hi-1}
            for (c, lo, hi) in runs
        ]
        total = alg.zero()
        for size in range(1, m + 1):
            sign = (-1) ** (size + 1)
            for subset in combinations(range(m), size):
                chosen = set(subset)
                new_coeffs: list[np.ndarray] = []
                new_colors: list[str] = []
                acc = coeffs[0]
                for j, (c, lo, hi) in enumerate(runs):
                    if j in chosen:
                        acc = acc @ expect[j] @ coeffs[hi]
                    else:
                        for pos in range(lo, hi + 1):
                            new_coeffs.append(acc)
                            new_colors.append(c)
                            acc = coeffs[pos]
                new_coeffs.append(acc)
                total = total + sign * rec(tuple(new_coeffs), tuple(new_colors))
        memo[k] = total
        return total

    return rec(w.coeffs, w.colors)


# ---------------------------------------------------------------------------
# Free convolution at moment level
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentTable:
    """Lazily evaluated moment functional mu[b_0 X b_1 ... X b_n]."""

    algebra: Algebra
    degree: int
    fn: Callable[[Sequence[np.ndarray]], np.ndarray]

    def __call__(self, coeffs: Sequence[np.ndarray]) -> np.ndarray:
        coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
        if len(coeffs) - 1 > self.degree:
            raise DegreeCapError(f"table holds moments through degree {self.degree}")
        return self.fn(coeffs)

    def sequence(self, b: np.ndarray, upto: Optional[int] = None) -> list[np.ndarray]:
        upto = self.degree if upto is None else upto
        one = self.algebra.unit()
        return [self([one] + [b] * n) for n in range(upto + 1)]


def free_convolve_word(model: JointModel, coeffs: Sequence[np.ndarray], cap: Optional[int] = None) -> np.ndarray:
    """mu1 boxplus mu2 evaluated at one word: the sum of joint moments over
    all 2^n color sequences (the expansion of (X_1 + X_2)^n), regrouped as a
    single enumeration of colored non-crossing partitions."""
    n = len(coeffs) - 1
    cap = degree_cap() if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")
    coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
    if n == 0:
        return coeffs[0]
    pairs_only = _zero_lambdas(model.params1, n) and _zero_lambdas(model.params2, n)
    total = model.algebra.zero()
    for p in enumerate_nc12(n, pairs_only=pairs_only):
        for coloring in product((BLUE, RED), repeat=len(p.blocks)):
            total = total + _e_pi_colored(model, coeffs, ColoredPartition(p, coloring))
    return total


def free_convolve_moments(model: JointModel, degree: int) -> MomentTable:
    if degree > degree_cap():
        raise DegreeCapError(f"degree {degree} exceeds cap {degree_cap()}")
    return MomentTable(model.algebra, degree, lambda coeffs: free_convolve_word(model, coeffs, cap=degree))


def params_moment_table(params: JacobiParams, degree: int) -> MomentTable:
    return MomentTable(params.algebra, degree, lambda coeffs: moment(params, coeffs, cap=degree))


# ---------------------------------------------------------------------------
# Degree-4 Jacobi consistency (the counterexample machinery)
# ---------------------------------------------------------------------------


def verify_jacobi_consistency(table: MomentTable, atol: float = 1e-8) -> dict:
    """Decide whether a symmetric moment table fits a Jacobi-Szego law at
    degree 4.

    beta_1(b) := mu[X b X] is forced.  The degree-4 moments must satisfy
        mu[X b1 X b2 X b3 X] = beta_1(b1 beta_2(b2) b3) + beta_1(b1) b2 beta_1(b3)
    which is linear in the unknown map beta_2; we solve it in least squares
    over the algebra basis and report either the solved parameters or a
    coefficient triple witnessing infeasibility.
    """
    alg = table.algebra
    one = alg.unit()
    basis = alg.basis()
    m = len(basis)
    d = alg.dim

    if np.max(np.abs(table([one, one]))) > atol:
        raise ValueError("consistency test requires a symmetric (odd moments zero) table")
    for bi, bj in product(basis, repeat=2):
        if np.max(np.abs(table([one, bi, bj, one]))) > atol:
            raise ValueError("consistency test requires a symmetric (odd moments zero) table")

    beta1 = LinMap.from_action(alg, lambda b: table([one, b, one]))

    # rows: one matrix equation per basis triple; unknowns x[c, j] with
    # beta_2(basis[j]) = sum_c x[c, j] basis[c]
    rows_a = []
    rows_l = []
    triples = list(product(range(m), repeat=3))
    lhs_by_triple = {}
    for (i, j, k) in triples:
        lhs = (
            table([one, basis[i], basis[j], basis[k], one])
            - beta1(basis[i]) @ basis[j] @ beta1(basis[k])
        )
        lhs_by_triple[(i, j, k)] = lhs
        a_row = np.zeros((d * d, m * m), dtype=complex)
        for c in range(m):
            a_row[:, c * m + j] = (beta1(basis[i] @ basis[c] @ basis[k])).reshape(-1)
        rows_a.append(a_row)
        rows_l.append(lhs.reshape(-1))
    big_a = np.vstack(rows_a)
    big_l = np.concatenate(rows_l)
    x, *_ = np.linalg.lstsq(big_a, big_l, rcond=None)
    residuals = big_a @ x - big_l
    worst = float(np.max(np.abs(residuals)))

    if worst <= atol:
        coeff = x.reshape(m, m)

        def beta2_action(b):
            # expand b over the basis (orthogonal matrix units / diagonal units)
            out = np.zeros((d, d), dtype=complex)
            for j, ej in enumerate(basis):
                w = np.sum(ej.conj() * b)
                out = out + w * sum(coeff[c, j] * basis[c] for c in range(m))
            return out

        beta2 = LinMap.from_action(alg, beta2_action)
        return {"consistent": True, "beta1": beta1, "beta2": beta2, "residual": worst}

    # point at the worst coefficient triple
    per_triple = np.abs(residuals).reshape(len(triples), d * d).max(axis=1)
    i, j, k = triples[int(np.argmax(per_triple))]
    witness = {
        "b1": element_to_json(alg, basis[i]),
        "b2": element_to_json(alg, basis[j]),
        "b3": element_to_json(alg, basis[k]),
        "lhs_minus_known": element_to_json(alg, lhs_by_triple[(i, j, k)]),
        "residual": float(per_triple.max()),
    }
    return {"consistent": False, "beta1": beta1, "beta2": None, "residual": worst, "witness": witness}


# ---------------------------------------------------------------------------
# The 2x2 diagonal model
# ---------------------------------------------------------------------------


def two_by_two_model_check(lam: float, gam: float, terms: int = 40) -> dict:
    """Closed forms versus moment series for the law of a = e_12 + e_21 over
    the diagonal subalgebra, and for its free square, at b = diag(lam, gam).

    Series: G_mu from the literal matrix model (diagonal part of powers of
    a b^{-1}); G_{mu+>mu} from the central-binomial moment formula
    M_2n = C(2n,n) (a b^{-1})^{2n}.  Closed forms: G_mu entrywise, and the
    square-root F-transform of the free square, cross-checked through the
    additivity of F^{-1} - id.
    """
    if lam == 0 or gam == 0:
        raise ValueError("lambda and gamma must be nonzero")
    prod_lg = lam * gam
    if abs(prod_lg) <= 4:
        raise ValueError("series requires |1/(lambda*gamma)| < 1/4")

    a = np.array([[0, 1], [1, 0]], dtype=complex)
    big = np.diag([lam, gam]).astype(complex)
    binv = np.linalg.inv(big)

    def diag_part(mat):
        return np.diag(np.diag(mat))

    # G_mu: matrix-model series vs closed form
    g_series = np.zeros((2, 2), dtype=complex)
    pw = np.eye(2, dtype=complex)
    for _ in range(terms):
        g_series += binv @ diag_part(pw)
        pw = pw @ a @ binv @ a @ binv  # advance two moment degrees
    g_closed = np.diag([1 / (lam - 1 / gam), 1 / (gam - 1 / lam)]).astype(complex)

    # G_{mu boxplus mu}: central-binomial series
    g_conv_series = np.zeros((2, 2), dtype=complex)
    pw = np.eye(2, dtype=complex)
    for n in range(terms):
        g_conv_series += comb(2 * n, n) * (binv @ diag_part(pw))
        pw = pw @ a @ binv @ a @ binv

    # F_{mu boxplus mu} closed form, principal branch with the asymptotic sign
    def branch_sqrt(val, ref):
        s = np.emath.sqrt(val)
        return s if abs(s - ref) <= abs(s + ref) else -s

    f_conv_closed = np.diag(
        [
            branch_sqrt(lam**2 - 4 * lam / gam, lam),
            branch_sqrt(gam**2 - 4 * gam / lam, gam),
        ]
    ).astype(complex)
    g_conv_closed = np.linalg.inv(f_conv_closed)

    # Subordination cross-check: F_inv of F_mu solves w - 1/w_swap = target;
    # additivity of F^{-1} - id gives F^{-1}_{conv}(b) = 2 F^{-1}_mu(b) - b.
    def f_mu_inverse(target_diag):
        u, v = np.diag(target_diag)
        x, y = u, v
        for _ in range(200):
            x_new = u + 1 / y
            y_new = v + 1 / x
            if abs(x_new - x) + abs(y_new - y) < 1e-14:
                x, y = x_new, y_new
                break
            x, y = x_new, y_new
        return np.diag([x, y]).astype(complex)

    f_inv_mu = f_mu_inverse(big)
    f_inv_conv = 2 * f_inv_mu - big
    # evaluate the closed-form F_{mu boxplus mu} at that point: should return b
    l2, g2 = np.diag(f_inv_conv)
    f_at_inv = np.diag(
        [branch_sqrt(l2**2 - 4 * l2 / g2, l2), branch_sqrt(g2**2 - 4 * g2 / l2, g2)]
    ).astype(complex)
    subordination_residual = float(np.max(np.abs(f_at_inv - big)))

    return {
        "lambda": lam,
        "gamma": gam,
        "terms": terms,
        "g_mu_closed": g_closed,
        "g_mu_series": g_series,
        "g_mu_diff": float(np.max(np.abs(g_series - g_closed))),
        "f_conv_closed": f_conv_closed,
        "f_mu_inverse": f_inv_mu,
        "g_conv_closed": g_conv_closed,
        "g_conv_series": g_conv_series,
        "g_conv_diff": float(np.max(np.abs(g_conv_series - g_conv_closed))),
        "subordination_residual": subordination_residual,
    }


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def colored_word_to_json(w: ColoredWord) -> dict:
    return {
        "algebra": algebra_to_json(w.algebra),
        "coeffs": [element_to_json(w.algebra, c) for c in w.coeffs],
        "colors": [1 if c == BLUE else 2 for c in w.colors],
    }


def colored_word_from_json(obj) -> ColoredWord:
    alg = algebra_from_json(obj["algebra"])
    key = {1: BLUE, 2: RED, BLUE: BLUE, RED: RED}
    try:
        colors = [key[c] for c in obj["colors"]]
    except KeyError as exc:
        raise ValueError(f"colors must be 1 (blue) or 2 (red), got {exc}") from None
    return colored_word(
        alg,
        [matrix_from_json(e["entries"]) for e in obj["coeffs"]],
        colors,
    )
