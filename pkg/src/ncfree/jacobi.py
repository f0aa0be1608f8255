"""The B-valued Jacobi-Szego distribution engine.

A distribution is described by two eventually-constant parameter sequences:
self-adjoint algebra elements lambda_i and linear self-maps alpha_i
(completely positive in the positive case, arbitrary in the algebraic one).
Moments are computed two independent ways: a sum over non-crossing
singleton/pair partitions with depth-indexed parameter insertion, and a
ladder-operator evaluation on a Fock-type bimodule, which serves as the
oracle for the first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    Algebra,
    LinMap,
    algebra_from_json,
    algebra_to_json,
    element_to_json,
    is_self_adjoint,
    linmap_from_json,
    linmap_to_json,
    matrix_from_json,
    matrix_to_json,
    unit_matrix,
    unvec,
    vec,
)
from .partitions import Partition12, enumerate_nc12

DEFAULT_DEGREE_CAP = 16


def degree_cap() -> int:
    return int(os.environ.get("NCFREE_DEGREE_CAP", DEFAULT_DEGREE_CAP))


class DegreeCapError(ValueError):
    """Raised when a requested moment degree exceeds the configured cap."""


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters: head sequences followed by a constant tail."""

    algebra: Algebra
    head_lambda: tuple[np.ndarray, ...]
    head_alpha: tuple[LinMap, ...]
    tail_lambda: np.ndarray
    tail_alpha: LinMap
    positive: bool = False

    def __post_init__(self):
        d = self.algebra.dim
        for lam in (*self.head_lambda, self.tail_lambda):
            if np.asarray(lam).shape != (d, d):
                raise ValueError("lambda entries must live in the algebra")
        for a in (*self.head_alpha, self.tail_alpha):
            if a.algebra != self.algebra:
                raise ValueError("alpha maps must act on the same algebra")
        if self.positive:
            for lam in (*self.head_lambda, self.tail_lambda):
                if not is_self_adjoint(np.asarray(lam)):
                    raise ValueError("positive flag requires self-adjoint lambdas")
            for a in (*self.head_alpha, self.tail_alpha):
                if not a.is_cp():
                    raise ValueError("positive flag requires completely positive alphas")

    def lam(self, i: int) -> np.ndarray:
        if i < 1:
            raise IndexError("Jacobi parameters are 1-indexed")
        if i <= len(self.head_lambda):
            return self.head_lambda[i - 1]
        return self.tail_lambda

    def alpha(self, i: int) -> LinMap:
        if i < 1:
            raise IndexError("Jacobi parameters are 1-indexed")
        if i <= len(self.head_alpha):
            return self.head_alpha[i - 1]
        return self.tail_alpha

    @property
    def depth(self) -> Optional[int]:
        """k such that alpha_k = alpha_{k+1} = ... = 0, or None if untruncated."""
        if self.tail_alpha.norm() > 1e-14:
            return None
        k = len(self.head_alpha) + 1
        while k > 1 and self.alpha(k - 1).norm() <= 1e-14:
            k -= 1
        return k

    def isclose(self, other: "JacobiParams", atol: float = 1e-9, upto: int = 12) -> bool:
        if self.algebra != other.algebra:
            return False
        return all(
            np.max(np.abs(self.lam(i) - other.lam(i))) <= atol
            and self.alpha(i).isclose(other.alpha(i), atol)
            for i in range(1, upto + 1)
        )


def scalar_jacobi(
    head_lambda: Sequence[complex] = (),
    head_alpha: Sequence[complex] = (),
    tail_lambda: complex = 0.0,
    tail_alpha: complex = 0.0,
) -> JacobiParams:
    """Convenience constructor for the d=1 scalar specialization."""
    alg = Algebra("full", 1)
    one = np.eye(1, dtype=complex)

    def elem(z):
        return complex(z) * one

    def mp(z):
        return LinMap.from_dense(alg, complex(z) * one)

    return JacobiParams(
        alg,
        tuple(elem(z) for z in head_lambda),
        tuple(mp(z) for z in head_alpha),
        elem(tail_lambda),
        mp(tail_alpha),
    )


# ---------------------------------------------------------------------------
# Partition-sum moments
# ---------------------------------------------------------------------------


def evaluate_partition(
    coeffs: Sequence[np.ndarray],
    blocks: Sequence[tuple[int, ...]],
    lam_of: Callable[[tuple[int, ...]], np.ndarray],
    alpha_of: Callable[[tuple[int, ...]], LinMap],
) -> np.ndarray:
    """Insert a lambda per singleton and apply an alpha across each pair.

    `coeffs` is b_0..b_n; `blocks` partitions the X positions {1..n}.  The
    caller supplies the parameter for each block (depth indexing happens
    there), so the same evaluator serves one- and two-color sums.
    """
    n = len(coeffs) - 1
    at_min = {blk[0]: blk for blk in blocks}

    def ev(lo: int, hi: int) -> np.ndarray:
        out = coeffs[lo]
        pos = lo + 1
        while pos <= hi:
            blk = at_min[pos]
            if len(blk) == 1:
                out = out @ lam_of(blk) @ coeffs[pos]
                pos += 1
            else:
                q = blk[1]
                inner = ev(pos, q - 1)
                out = out @ alpha_of(blk)(inner) @ coeffs[q]
                pos = q + 1
        return out

    return ev(0, n)


def t_pi(params: JacobiParams, coeffs: Sequence[np.ndarray], p: Partition12) -> np.ndarray:
    """One-color partition term: index of lambda/alpha is the block depth."""
    pairs = p.pairs
    depth = {
        blk: 1 + sum(1 for (a, b) in pairs if a < blk[0] and blk[-1] < b)
        for blk in p.blocks
    }
    return evaluate_partition(
        coeffs,
        p.blocks,
        lambda blk: params.lam(depth[blk]),
        lambda blk: params.alpha(depth[blk]),
    )


def moment(
    params: JacobiParams,
    coeffs: Sequence[np.ndarray],
    cap: Optional[int] = None,
) -> np.ndarray:
    """mu[b_0 X b_1 ... X b_n] as the sum of T_pi over NC_{1,2}(n)."""
    coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
    n = len(coeffs) - 1
    cap = degree_cap() if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")
    if n == 0:
        return coeffs[0]
    total = params.algebra.zero()
    for p in enumerate_nc12(n):
        total = total + t_pi(params, coeffs, p)
    return total


def moment_sequence(params: JacobiParams, b: np.ndarray, degree: int) -> list[np.ndarray]:
    """Coefficients mu[(X b)^n] of the moment generating series, n = 0..degree."""
    one = params.algebra.unit()
    out = [one]
    for n in range(1, degree + 1):
        out.append(moment(params, [one] + [b] * n, cap=max(degree, degree_cap())))
    return out


def scalar_moments(params: JacobiParams, degree: int) -> list[complex]:
    """mu[X^n] for a d=1 parameter set, n = 0..degree."""
    if params.algebra.dim != 1:
        raise ValueError("scalar moments need a dim-1 algebra")
    return [m[0, 0] for m in moment_sequence(params, params.algebra.unit(), degree)]


# ---------------------------------------------------------------------------
# Fock-space oracle
# ---------------------------------------------------------------------------


def fock_moment(
    params: JacobiParams,
    coeffs: Sequence[np.ndarray],
    cap: Optional[int] = None,
) -> np.ndarray:
    """<1, b_0 x b_1 x ... x b_n 1> with x = a* + p + a on the bimodule of
    elementary tensors; degree-n vectors are stored as flat arrays over the
    (n+1)-fold tensor basis of vectorized algebra elements.

    Independent of the partition sum: the ladder operators are applied
    symbolically and the degree-0 component is read off at the end.
    """
    coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
    n = len(coeffs) - 1
    cap = degree_cap() if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")
    d = params.algebra.dim
    D = d * d
    if n == 0:
        return coeffs[0]

    eye_d = np.eye(d)
    vec_unit = vec(params.algebra.unit())
    basis = [unvec(col, d) for col in np.eye(D, dtype=complex).T]

    def leftmul_op(b: np.ndarray) -> np.ndarray:
        # vec(b m) = (I (x) b) vec(m)
        return np.kron(eye_d, b)

    # a on a degree-m vector sends (c0, c1, rest) to (alpha_m[c0] c1, rest)
    def annihilate_op(alpha: LinMap) -> np.ndarray:
        op = np.zeros((D, D * D), dtype=complex)
        for i, e_i in enumerate(basis):
            img = alpha(e_i)
            for j, e_j in enumerate(basis):
                op[:, i * D + j] = vec(img @ e_j)
        return op

    ann_cache: dict[int, np.ndarray] = {}

    def apply_x(state: dict[int, np.ndarray], max_deg: int) -> dict[int, np.ndarray]:
        new: dict[int, np.ndarray] = {}

        def acc(deg, arr):
            if deg in new:
                new[deg] = new[deg] + arr
            else:
                new[deg] = arr

        for m, arr in state.items():
            # creation: prepend a unit tensor factor
            if m + 1 <= max_deg:
                acc(m + 1, np.outer(vec_unit, arr).reshape(-1))
            # preservation: left-multiply the first factor by lambda_{m+1}
            lam_op = leftmul_op(params.lam(m + 1))
            acc(m, (lam_op @ arr.reshape(D, -1)).reshape(-1))
            # annihilation: alpha_m applied to the first factor, folded into the second
            if m >= 1:
                if m not in ann_cache:
                    ann_cache[m] = annihilate_op(params.alpha(m))
                acc(m - 1, (ann_cache[m] @ arr.reshape(D * D, -1)).reshape(-1))
        return new

    state: dict[int, np.ndarray] = {0: vec(coeffs[n])}
    for i in range(n, 0, -1):
        state = apply_x(state, max_deg=i - 1)
        lop = leftmul_op(coeffs[i - 1])
        state = {m: (lop @ arr.reshape(D, -1)).reshape(-1) for m, arr in state.items()}
    return unvec(state.get(0, np.zeros(D, dtype=complex)), d)


# ---------------------------------------------------------------------------
# Parameter-level transformations
# ---------------------------------------------------------------------------


def strip(params: JacobiParams) -> JacobiParams:
    """Coefficient stripping: drop the first lambda and the first alpha."""
    return replace(
        params,
        head_lambda=params.head_lambda[1:],
        head_alpha=params.head_alpha[1:],
    )


def boolean_power(params: JacobiParams, eta: LinMap) -> JacobiParams:
    """Boolean convolution power: (lambda_1, alpha_1) -> (eta[lambda_1], eta o alpha_1)."""
    if eta.algebra != params.algebra:
        raise ValueError("algebra mismatch")
    lam1 = eta(params.lam(1))
    a1 = eta.compose(params.alpha(1))
    head_l = (lam1,) + tuple(params.lam(i) for i in range(2, max(2, len(params.head_lambda) + 1)))
    head_a = (a1,) + tuple(params.alpha(i) for i in range(2, max(2, len(params.head_alpha) + 1)))
    return replace(params, head_lambda=head_l, head_alpha=head_a, positive=False)


def shift_by_delta(params: JacobiParams, lam: np.ndarray) -> JacobiParams:
    """Free convolution with the point mass at lam: every lambda_i shifts."""
    lam = np.asarray(lam, dtype=complex)
    if params.positive and not is_self_adjoint(lam):
        raise ValueError("shift must be self-adjoint")
    return replace(
        params,
        head_lambda=tuple(l + lam for l in params.head_lambda),
        tail_lambda=params.tail_lambda + lam,
    )


def phi_transform(params: JacobiParams) -> JacobiParams:
    """Prepend lambda_0' = 0 and alpha_0' = identity to the parameter sequences."""
    return replace(
        params,
        head_lambda=(params.algebra.zero(),) + params.head_lambda,
        head_alpha=(LinMap.identity(params.algebra),) + params.head_alpha,
    )


def truncate(params: JacobiParams, k: int) -> JacobiParams:
    """Depth-k truncation: keep lambda_1..lambda_k and alpha_1..alpha_{k-1}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return JacobiParams(
        params.algebra,
        tuple(params.lam(i) for i in range(1, k + 1)),
        tuple(params.alpha(i) for i in range(1, k)),
        params.algebra.zero(),
        LinMap.zero(params.algebra),
        positive=params.positive,
    )


# ---------------------------------------------------------------------------
# Continued fraction approximants
# ---------------------------------------------------------------------------


class SingularResolventError(ValueError):
    def __init__(self, level: int):
        super().__init__(f"singular resolvent at continued-fraction level {level}")
        self.level = level


def cf_approximant(params: JacobiParams, k: int, b: np.ndarray) -> np.ndarray:
    """Numeric value of the depth-k finite continued fraction at b."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b = np.asarray(b, dtype=complex)
    one = params.algebra.unit()
    s = one
    for i in range(k, 0, -1):
        a = one - params.lam(i) @ b - params.alpha(i)(b @ s) @ b
        if abs(np.linalg.det(a)) < 1e-300 or np.linalg.cond(a) > 1e14:
            raise SingularResolventError(i)
        s = np.linalg.inv(a)
    return s


def _series_mul(x: list[np.ndarray], y: list[np.ndarray]) -> list[np.ndarray]:
    n = len(x)
    return [sum(x[j] @ y[m - j] for j in range(m + 1)) for m in range(n)]


def _series_inv(x: list[np.ndarray]) -> list[np.ndarray]:
    c0inv = np.linalg.inv(x[0])
    out = [c0inv]
    for m in range(1, len(x)):
        acc = sum(x[j] @ out[m - j] for j in range(1, m + 1))
        out.append(-c0inv @ acc)
    return out


def cf_series(params: JacobiParams, k: int, b: np.ndarray, degree: int) -> list[np.ndarray]:
    """Formal expansion of the depth-k continued fraction: coefficient n is
    the degree-n term of the approximant evaluated at t*b, as a series in t."""
    b = np.asarray(b, dtype=complex)
    d = params.algebra.dim
    zero, one = np.zeros((d, d), dtype=complex), params.algebra.unit()
    nterm = degree + 1
    s = [one] + [zero] * (degree)
    for i in range(k, 0, -1):
        tb = [zero, b] + [zero] * (degree - 1)  # the series t*b
        tbs = _series_mul(tb, s)
        alpha_tbs = [params.alpha(i)(c) for c in tbs]
        lam_tb = [params.lam(i) @ c for c in tb]
        inner = _series_mul(alpha_tbs, tb)
        body = [one - lam_tb[0] - inner[0]] + [
            -lam_tb[m] - inner[m] for m in range(1, nterm)
        ]
        s = _series_inv(body)
    return s


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def point_mass(algebra: Algebra, lam: np.ndarray) -> JacobiParams:
    return JacobiParams(
        algebra,
        (np.asarray(lam, dtype=complex),),
        (),
        algebra.zero(),
        LinMap.zero(algebra),
        positive=is_self_adjoint(np.asarray(lam, dtype=complex)),
    )


def semicircular(algebra: Algebra, alpha: LinMap, mean: Optional[np.ndarray] = None) -> JacobiParams:
    lam = algebra.zero() if mean is None else np.asarray(mean, dtype=complex)
    return JacobiParams(algebra, (), (), lam, alpha)


def bernoulli(algebra: Algebra, lam1: np.ndarray, lam2: np.ndarray, alpha: LinMap) -> JacobiParams:
    return JacobiParams(
        algebra,
        (np.asarray(lam1, dtype=complex), np.asarray(lam2, dtype=complex)),
        (alpha,),
        algebra.zero(),
        LinMap.zero(algebra),
    )


def two_point(algebra: Algebra, t: float, a: np.ndarray, c: np.ndarray) -> JacobiParams:
    """The two-point law t*delta_a + (1-t)*delta_c."""
    if not 0 < t < 1:
        raise ValueError("two_point requires 0 < t < 1")
    a = np.asarray(a, dtype=complex)
    c = np.asarray(c, dtype=complex)
    lam1 = t * a + (1 - t) * c
    lam2 = (1 - t) * a + t * c
    alpha = LinMap.from_kraus(algebra, [np.sqrt(t * (1 - t)) * (a - c)])
    return bernoulli(algebra, lam1, lam2, alpha)


def free_poisson(
    algebra: Algebra,
    lam: np.ndarray,
    alpha: LinMap,
    mean: Optional[np.ndarray] = None,
) -> JacobiParams:
    centered = JacobiParams(
        algebra,
        (algebra.zero(),),
        (alpha,),
        np.asarray(lam, dtype=complex),
        alpha,
    )
    if mean is None:
        return centered
    return shift_by_delta(centered, mean)


def meixner(algebra: Algebra, lam: np.ndarray, alpha: LinMap, eta: LinMap) -> JacobiParams:
    """fM(lam, alpha; eta) = J(0, lam, lam, ...; eta, eta+alpha, eta+alpha, ...)."""
    return JacobiParams(
        algebra,
        (algebra.zero(),),
        (eta,),
        np.asarray(lam, dtype=complex),
        eta + alpha,
    )


def arcsine(algebra: Algebra, alpha: LinMap) -> JacobiParams:
    return JacobiParams(algebra, (), (alpha.scale(2),), algebra.zero(), alpha)


def free_binomial(algebra: Algebra, eta: LinMap, alpha: LinMap) -> JacobiParams:
    return JacobiParams(algebra, (), (eta,), algebra.zero(), eta - alpha)


NAMED_FAMILIES = {
    "point_mass": point_mass,
    "semicircular": semicircular,
    "bernoulli": bernoulli,
    "two_point": two_point,
    "free_poisson": free_poisson,
    "meixner": meixner,
    "arcsine": arcsine,
    "free_binomial": free_binomial,
}


def make_named(family: str, algebra: Algebra, **kwargs) -> JacobiParams:
    try:
        ctor = NAMED_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return ctor(algebra, **kwargs)


# ---------------------------------------------------------------------------
# Meixner semigroup
# ---------------------------------------------------------------------------


def meixner_recognize(
    params: JacobiParams, atol: float = 1e-9, upto: int = 12
) -> Optional[tuple[np.ndarray, LinMap, LinMap]]:
    """Match the canonical layout J(0, lam, lam, ...; eta, eta+alpha, ...)
    and return (lam, alpha, eta), or None."""
    if np.max(np.abs(params.lam(1))) > atol:
        return None
    lam = params.lam(2)
    eta = params.alpha(1)
    a2 = params.alpha(2)
    for i in range(3, upto + 1):
        if np.max(np.abs(params.lam(i) - lam)) > atol:
            return None
        if not params.alpha(i).isclose(a2, atol):
            return None
    return lam, a2 - eta, eta


def meixner_convolve(p1: JacobiParams, p2: JacobiParams, atol: float = 1e-9) -> JacobiParams:
    """Free convolution inside the Meixner family: fM(l,a;e1) +> fM(l,a;e2)
    = fM(l,a;e1+e2)."""
    if p1.algebra != p2.algebra:
        raise ValueError("algebra mismatch")
    r1 = meixner_recognize(p1, atol)
    r2 = meixner_recognize(p2, atol)
    if r1 is None or r2 is None:
        raise ValueError("inputs are not in the canonical free Meixner layout")
    lam1, alpha1, eta1 = r1
    lam2, alpha2, eta2 = r2
    if np.max(np.abs(lam1 - lam2)) > atol or not alpha1.isclose(alpha2, atol):
        raise ValueError("Meixner inputs have mismatched (lambda, alpha)")
    return meixner(p1.algebra, lam1, alpha1, eta1 + eta2)


# ---------------------------------------------------------------------------
# Free binomial moments
# ---------------------------------------------------------------------------


def free_binomial_moment(n: int, t):
    """m_n(t) for the free convolution power of a centered Bernoulli law.

    Exact when t is an int or Fraction.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    exact = isinstance(t, (int, Fraction))
    tt = Fraction(t) if exact else float(t)
    if n == 0:
        return tt ** 0
    acc = tt ** (2 * n)
    half = Fraction(1, 2) if exact else 0.5
    for k in range(1, n + 1):
        term = comb(2 * k, k) * (tt - 1) ** k * tt ** (2 * (n - k))
        if exact:
            acc -= tt * half * Fraction(term, 2 * k - 1)
        else:
            acc -= tt * half * term / (2 * k - 1)
    return acc


def free_binomial_word_moment(
    a: np.ndarray,
    coeffs: Sequence[np.ndarray],
    t: float,
    expectation: Callable[[np.ndarray], np.ndarray],
    algebra: Algebra,
    atol: float = 1e-9,
) -> np.ndarray:
    """Moment of the t-th free power of the law of a: m_{n/2}(t) b_0 a b_1 ... a b_n.

    Requires E[a] = 0 and a B a inside B for the supplied model.
    """
    a = np.asarray(a, dtype=complex)
    if np.max(np.abs(expectation(a))) > atol:
        raise ValueError("model requires E[a] = 0")
    for e in algebra.basis():
        if not algebra.contains(a @ e @ a, atol):
            raise ValueError("model requires a B a inside B")
    coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
    n = len(coeffs) - 1
    if n % 2:
        return np.zeros_like(coeffs[0])
    word = coeffs[0]
    for c in coeffs[1:]:
        word = word @ a @ c
    return float(free_binomial_moment(n // 2, Fraction(t).limit_denominator(10**12))) * word


# ---------------------------------------------------------------------------
# Poisson limit
# ---------------------------------------------------------------------------


def poisson_limit_params(N: int, lam1: float, lam: float, alpha: float) -> JacobiParams:
    """Exact Jacobi parameters of mu_N^{+>N} for the scalar Bernoulli block
    with lambdas (lam1/N, lam1/N + lam) and first alpha alpha/N, computed
    via the delta-shift decomposition and the Meixner semigroup."""
    if N < 1:
        raise ValueError("N must be >= 1")
    alg = Algebra("full", 1)
    one = np.eye(1, dtype=complex)
    a_over_n = LinMap.from_dense(alg, (alpha / N) * one)
    # the centered block, in Meixner layout: fM(lam, -alpha/N; alpha/N)
    block = meixner(alg, lam * one, a_over_n.scale(-1), a_over_n)
    convolved = meixner(alg, lam * one, a_over_n.scale(-1), a_over_n.scale(N))
    assert meixner_recognize(block) is not None
    return shift_by_delta(convolved, lam1 * one)


def poisson_limit_check(
    N: int, lam1: float, lam: float, alpha: float, degree: int = 8
) -> tuple[list[complex], list[complex]]:
    """Scalar moment sequences of mu_N^{+>N} and of the target free Poisson."""
    approx = poisson_limit_params(N, lam1, lam, alpha)
    alg = Algebra("full", 1)
    one = np.eye(1, dtype=complex)
    target = free_poisson(alg, lam * one, LinMap.from_dense(alg, alpha * one), mean=lam1 * one)
    return scalar_moments(approx, degree), scalar_moments(target, degree)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def params_to_json(p: JacobiParams) -> dict:
    return {
        "algebra": algebra_to_json(p.algebra),
        "head_lambda": [element_to_json(p.algebra, l) for l in p.head_lambda],
        "head_alpha": [linmap_to_json(a) for a in p.head_alpha],
        "tail_lambda": element_to_json(p.algebra, p.tail_lambda),
        "tail_alpha": linmap_to_json(p.tail_alpha),
        "positive": p.positive,
    }


def params_from_json(obj) -> JacobiParams:
    alg = algebra_from_json(obj["algebra"])
    return JacobiParams(
        alg,
        tuple(matrix_from_json(e["entries"]) for e in obj["head_lambda"]),
        tuple(linmap_from_json(alg, a) for a in obj["head_alpha"]),
        matrix_from_json(obj["tail_lambda"]["entries"]),
        linmap_from_json(alg, obj["tail_alpha"]),
        positive=bool(obj.get("positive", False)),
    )


def word_to_json(algebra: Algebra, coeffs: Sequence[np.ndarray]) -> dict:
    return {
        "algebra": algebra_to_json(algebra),
        "coeffs": [element_to_json(algebra, c) for c in coeffs],
    }


def word_from_json(obj) -> tuple[Algebra, list[np.ndarray]]:
    alg = algebra_from_json(obj["algebra"])
    coeffs = [matrix_from_json(e["entries"]) for e in obj["coeffs"]]
    if not coeffs:
        raise ValueError("a word needs at least one coefficient")
    return alg, coeffs
