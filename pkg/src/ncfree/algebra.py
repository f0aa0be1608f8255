"""Finite-dimensional base algebras: full matrix algebra M_d and the
diagonal subalgebra D_d over complex scalars, their elements (plain
complex ndarrays), linear self-maps, and amplifications.

Linear maps are stored canonically as a d^2 x d^2 dense matrix acting on
the column-major vectorization; a Kraus list may be attached.  Complete
positivity of the dense form is tested via the Choi matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

ATOL = 1e-12
RTOL = 1e-9
PSD_TOL = 1e-9


@dataclass(frozen=True)
class Algebra:
    """Descriptor of the base algebra: M_d ('full') or D_d ('diagonal')."""

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in ("full", "diagonal"):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    def unit(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def zero(self) -> np.ndarray:
        return np.zeros((self.dim, self.dim), dtype=complex)

    def basis(self) -> list[np.ndarray]:
        """Matrix units for the full algebra, e_ii for the diagonal one."""
        d = self.dim
        if self.kind == "diagonal":
            return [unit_matrix(d, i, i) for i in range(d)]
        return [unit_matrix(d, i, j) for i in range(d) for j in range(d)]

    def contains(self, mat: np.ndarray, atol: float = ATOL) -> bool:
        if mat.shape != (self.dim, self.dim):
            return False
        if self.kind == "diagonal":
            off = mat - np.diag(np.diag(mat))
            return bool(np.max(np.abs(off)) <= atol) if off.size else True
        return True


def unit_matrix(d: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def is_self_adjoint(mat: np.ndarray, atol: float = ATOL, rtol: float = RTOL) -> bool:
    scale = max(1.0, float(np.max(np.abs(mat))))
    return bool(np.max(np.abs(mat - mat.conj().T)) <= atol + rtol * scale)


def vec(mat: np.ndarray) -> np.ndarray:
    return mat.flatten(order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return v.reshape((d, d), order="F")


@dataclass(frozen=True)
class LinMap:
    """A linear self-map of the base algebra.

    `dense` is the d^2 x d^2 matrix acting on column-major vectorizations;
    `kraus`, when present, is the defining Kraus family (which certifies
    complete positivity by construction).
    """

    algebra: Algebra
    dense: np.ndarray
    kraus: Optional[tuple[np.ndarray, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        d2 = self.algebra.dim ** 2
        if self.dense.shape != (d2, d2):
            raise ValueError(f"dense form must be {d2}x{d2}")

    @classmethod
    def from_kraus(cls, algebra: Algebra, mats: Sequence[np.ndarray]) -> "LinMap":
        d = algebra.dim
        mats = tuple(np.asarray(a, dtype=complex) for a in mats)
        dense = np.zeros((d * d, d * d), dtype=complex)
        for a in mats:
            if a.shape != (d, d):
                raise ValueError("Kraus operators must be d x d")
            # vec(A b A*) = (conj(A) o A) vec(b) in column-major convention
            dense += np.kron(a.conj(), a)
        return cls(algebra, dense, mats)

    @classmethod
    def from_dense(cls, algebra: Algebra, dense: np.ndarray) -> "LinMap":
        return cls(algebra, np.asarray(dense, dtype=complex))

    @classmethod
    def from_action(cls, algebra: Algebra, action: Callable[[np.ndarray], np.ndarray]) -> "LinMap":
        d = algebra.dim
        dense = np.zeros((d * d, d * d), dtype=complex)
        for j in range(d):
            for i in range(d):
                col = j * d + i  # column-major index of e_ij
                dense[:, col] = vec(np.asarray(action(unit_matrix(d, i, j)), dtype=complex))
        return cls(algebra, dense)

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinMap":
        d = algebra.dim
        return cls(algebra, np.eye(d * d, dtype=complex), (np.eye(d, dtype=complex),))

    @classmethod
    def zero(cls, algebra: Algebra) -> "LinMap":
        d = algebra.dim
        return cls(algebra, np.zeros((d * d, d * d), dtype=complex), ())

    def apply(self, b: np.ndarray) -> np.ndarray:
        d = self.algebra.dim
        b = np.asarray(b, dtype=complex)
        if b.shape != (d, d):
            raise ValueError("algebra mismatch: element has wrong shape")
        return unvec(self.dense @ vec(b), d)

    def __call__(self, b: np.ndarray) -> np.ndarray:
        return self.apply(b)

    def compose(self, other: "LinMap") -> "LinMap":
        _check_same_algebra(self, other)
        kraus = None
        if self.kraus is not None and other.kraus is not None:
            kraus = tuple(a @ b for a in self.kraus for b in other.kraus)
        return LinMap(self.algebra, self.dense @ other.dense, kraus)

    def __add__(self, other: "LinMap") -> "LinMap":
        _check_same_algebra(self, other)
        kraus = None
        if self.kraus is not None and other.kraus is not None:
            kraus = self.kraus + other.kraus
        return LinMap(self.algebra, self.dense + other.dense, kraus)

    def __sub__(self, other: "LinMap") -> "LinMap":
        _check_same_algebra(self, other)
        return LinMap(self.algebra, self.dense - other.dense)

    def scale(self, t: complex) -> "LinMap":
        kraus = None
        if self.kraus is not None and t.real >= 0 and abs(t.imag) == 0:
            kraus = tuple(np.sqrt(t.real) * a for a in self.kraus)
        return LinMap(self.algebra, t * self.dense, kraus)

    def __mul__(self, t: complex) -> "LinMap":
        return self.scale(t)

    __rmul__ = __mul__

    def choi(self) -> np.ndarray:
        d = self.algebra.dim
        c = np.zeros((d * d, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                c[i * d : (i + 1) * d, j * d : (j + 1) * d] += self.apply(unit_matrix(d, i, j))
        return c

    def is_cp(self, tol: float = PSD_TOL) -> bool:
        if self.kraus is not None:
            return True
        c = self.choi()
        if np.max(np.abs(c - c.conj().T)) > 1e-8 * max(1.0, float(np.max(np.abs(c)))):
            return False
        return bool(np.min(np.linalg.eigvalsh((c + c.conj().T) / 2)) >= -tol)

    def preserves_diagonal(self, atol: float = ATOL) -> bool:
        d = self.algebra.dim
        diag = Algebra("diagonal", d)
        return all(diag.contains(self.apply(e), atol) for e in diag.basis())

    def norm(self) -> float:
        return float(np.linalg.norm(self.dense, 2))

    def isclose(self, other: "LinMap", atol: float = 1e-9) -> bool:
        return self.algebra == other.algebra and bool(
            np.max(np.abs(self.dense - other.dense)) <= atol
        )


def _check_same_algebra(m1: LinMap, m2: LinMap) -> None:
    if m1.algebra != m2.algebra:
        raise ValueError("algebra mismatch between maps")


def apply_map(m: LinMap, b: np.ndarray) -> np.ndarray:
    return m.apply(b)


def compose_maps(m1: LinMap, m2: LinMap) -> LinMap:
    return m1.compose(m2)


def add_maps(m1: LinMap, m2: LinMap) -> LinMap:
    return m1 + m2


def scale_map(m: LinMap, t: complex) -> LinMap:
    return m.scale(t)


def flip_map(d: int = 2) -> LinMap:
    """b -> sum_i e_{i,i+1} b e_{i+1,i} + h.c.; for d=2 the coordinate flip
    on the diagonal subalgebra (XbX with X = e_12 + e_21)."""
    alg = Algebra("diagonal", d)
    kraus = [unit_matrix(d, i, j) for i in range(d) for j in range(d) if abs(i - j) == 1]
    return LinMap.from_kraus(alg, kraus)


@dataclass(frozen=True)
class ConditionalExpectation:
    """The trace-preserving projection of M_d onto its diagonal subalgebra."""

    dim: int

    @property
    def source(self) -> Algebra:
        return Algebra("full", self.dim)

    @property
    def target(self) -> Algebra:
        return Algebra("diagonal", self.dim)

    def apply(self, mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=complex)
        return np.diag(np.diag(mat))

    def __call__(self, mat: np.ndarray) -> np.ndarray:
        return self.apply(mat)


def amplify_element(mat: np.ndarray, d_outer: int) -> np.ndarray:
    """1_{d_outer} (x) mat on M_{d_outer}(B)."""
    return np.kron(np.eye(d_outer), np.asarray(mat, dtype=complex))


def amplify_map(m: LinMap, d_outer: int) -> LinMap:
    """I_{d_outer} (x) m: apply m to each d x d block of a block matrix."""
    d = m.algebra.dim
    big = Algebra("full", d_outer * d)

    def action(x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for i in range(d_outer):
            for j in range(d_outer):
                blk = x[i * d : (i + 1) * d, j * d : (j + 1) * d]
                out[i * d : (i + 1) * d, j * d : (j + 1) * d] = m.apply(blk)
        return out

    return LinMap.from_action(big, action)


def gram_psd_check(grid: Sequence[Sequence[np.ndarray]], tol: float = PSD_TOL) -> bool:
    """Assemble the block matrix [g_ij] and test positive semidefiniteness."""
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("grid must be square")
    big = np.block([[np.asarray(g, dtype=complex) for g in row] for row in grid])
    h = (big + big.conj().T) / 2
    if np.max(np.abs(big - h)) > 1e-7 * max(1.0, float(np.max(np.abs(big)))):
        return False
    return bool(np.min(np.linalg.eigvalsh(h)) >= -tol)


# ---------------------------------------------------------------------------
# JSON wire format: complex as [re, im], matrices as row-major lists of rows.
# ---------------------------------------------------------------------------


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def matrix_to_json(mat: np.ndarray) -> list[list[list[float]]]:
    return [[complex_to_json(z) for z in row] for row in np.asarray(mat, dtype=complex)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex_from_json(z) for z in row] for row in rows], dtype=complex)


def algebra_to_json(alg: Algebra) -> dict:
    return {"kind": alg.kind, "dim": alg.dim}


def algebra_from_json(obj) -> Algebra:
    return Algebra(obj["kind"], int(obj["dim"]))


def element_to_json(alg: Algebra, mat: np.ndarray) -> dict:
    return {"algebra": algebra_to_json(alg), "entries": matrix_to_json(mat)}


def element_from_json(obj) -> tuple[Algebra, np.ndarray]:
    alg = algebra_from_json(obj["algebra"])
    mat = matrix_from_json(obj["entries"])
    if not alg.contains(mat):
        raise ValueError("entries not in the declared algebra")
    return alg, mat


def linmap_to_json(m: LinMap) -> dict:
    if m.kraus is not None:
        return {"kraus": [matrix_to_json(a) for a in m.kraus]}
    return {"dense": matrix_to_json(m.dense)}


def linmap_from_json(algebra: Algebra, obj) -> LinMap:
    if "kraus" in obj:
        return LinMap.from_kraus(algebra, [matrix_from_json(a) for a in obj["kraus"]])
    if "dense" in obj:
        return LinMap.from_dense(algebra, matrix_from_json(obj["dense"]))
    raise ValueError("linear map JSON needs 'kraus' or 'dense'")
