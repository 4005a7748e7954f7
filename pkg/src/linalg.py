"""
linalg.py — Exact dense linear algebra over prime fields GF(p)

Every morphism in the engine is a numpy int64 array with residues in [0, p).
Vectors are rows and maps act on the right: a map V → W is a
dim V × dim W matrix, v ↦ v·A, and "f then g" is A_f @ A_g.

Provides:
  - FieldSpec: validated prime modulus
  - rref / rank / kernel_basis / image_basis / solve
  - Subspace (basis kept in reduced row-echelon form) with sum, intersect,
    contains and quotient_map
  - Subquotient (V/U with deterministic complement) and
    induced_map_on_subquotients

Usage:
  from src.linalg import FieldSpec, rref, solve, Subspace, Subquotient
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import DimensionMismatch, InvalidStructure, NotContained, NotWellDefined

logger = logging.getLogger(__name__)

FpMatrix = np.ndarray   # int64, entries reduced mod p

_FLOAT_EXACT = 2 ** 53


@dataclass(frozen=True)
class FieldSpec:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise InvalidStructure(f"modulus {self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)


Modulus = Union[int, FieldSpec]


def modulus(p: Modulus) -> int:
    return p.p if isinstance(p, FieldSpec) else int(p)


# ---------------------------------------------------------------------------
# Matrix helpers
# ---------------------------------------------------------------------------

def as_matrix(m, p: Modulus, cols: Optional[int] = None) -> FpMatrix:
    """Coerce to a reduced 2-D int64 array (a 0-row input keeps `cols`)."""
    arr = np.asarray(m, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.zeros((0, cols or 0), dtype=np.int64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of shape {arr.shape}")
    return np.mod(arr, modulus(p))


def zeros(rows: int, cols: int) -> FpMatrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> FpMatrix:
    return np.eye(n, dtype=np.int64)


def is_zero(m: FpMatrix) -> bool:
    return not np.any(m)


def mat_mul(a: FpMatrix, b: FpMatrix, p: Modulus) -> FpMatrix:
    """Product mod p; routed through float64 BLAS while sums stay exact."""
    p = modulus(p)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot compose {a.shape} with {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    if a.shape[1] * (p - 1) ** 2 < _FLOAT_EXACT:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(np.rint(prod).astype(np.int64), p)
    prod = a.astype(object) @ b.astype(object)
    return np.mod(prod, p).astype(np.int64)


def mat_chain(p: Modulus, *mats: FpMatrix) -> FpMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m, p)
    return out


def block_matrix(blocks: Sequence[Sequence[FpMatrix]]) -> FpMatrix:
    rows = [np.hstack(list(r)) if len(r) else zeros(0, 0) for r in blocks]
    return np.vstack(rows) if rows else zeros(0, 0)


def direct_sum_matrix(mats: Sequence[FpMatrix]) -> FpMatrix:
    """Block-diagonal matrix."""
    n_rows = sum(m.shape[0] for m in mats)
    n_cols = sum(m.shape[1] for m in mats)
    out = zeros(n_rows, n_cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: Modulus) -> FpMatrix:
    return rng.integers(0, modulus(p), size=(rows, cols), dtype=np.int64)


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def rref(m, p: Modulus) -> Tuple[FpMatrix, List[int]]:
    """
    Reduced row-echelon form with leftmost pivots, taking the first
    nonzero row at or below the current one as pivot row.

    Returns (R, pivot_columns); rank = len(pivot_columns).
    """
    p = modulus(p)
    a = np.array(as_matrix(m, p), dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * pow(lead, p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if p == 2:
                a[hit] ^= a[r]
            else:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: Modulus) -> int:
    arr = as_matrix(m, p)
    if arr.size == 0:
        return 0
    # eliminate along the shorter side
    if arr.shape[0] > arr.shape[1]:
        arr = arr.T
    return len(rref(arr, p)[1])


class Solver:
    """
    Cached factorisation of `a` for repeated solves of x·a = b.

    Row-reducing [a | I] yields R = T·a; the first rank(a) rows of R carry
    the pivots and T records how they were formed.
    """

    def __init__(self, a, p: Modulus):
        self.p = modulus(p)
        a = as_matrix(a, self.p)
        self.shape = a.shape
        k, n = a.shape
        aug = np.hstack([a, identity(k)])
        reduced, piv = rref(aug, self.p)
        self.rank = sum(1 for c in piv if c < n)
        self.pivots = list(piv[:self.rank])
        self.reduced = reduced[:self.rank, :n]
        self.transform = reduced[:self.rank, n:]

    def solve(self, b) -> Optional[FpMatrix]:
        k, n = self.shape
        b = as_matrix(b, self.p, cols=n)
        if b.shape[1] != n:
            raise DimensionMismatch(f"right-hand side has {b.shape[1]} columns, expected {n}")
        if b.shape[0] == 0:
            return zeros(0, k)
        coeffs = b[:, self.pivots]
        residual = (b - mat_mul(coeffs, self.reduced, self.p)) % self.p
        if np.any(residual):
            return None
        return mat_mul(coeffs, self.transform, self.p)


def solve(a, b, p: Modulus) -> Optional[FpMatrix]:
    """Some x with x·a = b, or None when no solution exists."""
    return Solver(a, p).solve(b)


def kernel_basis(m, p: Modulus) -> "Subspace":
    """{v : v·m = 0} as a Subspace of GF(p)^rows(m)."""
    p = modulus(p)
    m = as_matrix(m, p)
    k, n = m.shape
    if n == 0:
        return Subspace.full(k, p)
    reduced, piv = rref(np.hstack([m, identity(k)]), p)
    r = sum(1 for c in piv if c < n)
    return Subspace.span(reduced[r:, n:], p, ambient_dim=k)


def image_basis(m, p: Modulus) -> "Subspace":
    """Row space of m."""
    p = modulus(p)
    m = as_matrix(m, p)
    return Subspace.span(m, p, ambient_dim=m.shape[1])


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

class _Echelon:
    """Growing basis kept reduced at its pivots, for deterministic completion."""

    def __init__(self, n: int, p: int, rows: Optional[FpMatrix] = None):
        self.p = p
        self.rows = zeros(0, n)
        self.pivots: List[int] = []
        if rows is not None:
            for v in rows:
                self.add(v)

    def reduce(self, v: FpMatrix) -> FpMatrix:
        v = np.atleast_2d(v)
        if not self.pivots:
            return v % self.p
        return (v - mat_mul(v[:, self.pivots], self.rows, self.p)) % self.p

    def add(self, v: FpMatrix) -> bool:
        r = self.reduce(v)[0]
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = (r * pow(int(r[c]), self.p - 2, self.p)) % self.p
        if self.rows.shape[0]:
            col = self.rows[:, c].copy()
            self.rows = (self.rows - np.outer(col, r)) % self.p
        self.rows = np.vstack([self.rows, r])
        self.pivots.append(c)
        return True


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(p)^ambient_dim; `basis` rows are in reduced row-echelon form."""

    ambient_dim: int
    basis: FpMatrix
    p: int
    pivots: Tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, vectors, p: Modulus, ambient_dim: Optional[int] = None) -> "Subspace":
        p = modulus(p)
        vecs = as_matrix(vectors, p, cols=ambient_dim)
        n = vecs.shape[1] if ambient_dim is None else ambient_dim
        if vecs.shape[1] != n:
            raise DimensionMismatch(f"vectors of length {vecs.shape[1]} in ambient {n}")
        if vecs.shape[0] == 0:
            return cls(n, zeros(0, n), p, ())
        reduced, piv = rref(vecs, p)
        return cls(n, reduced[:len(piv)], p, tuple(piv))

    @classmethod
    def zero(cls, n: int, p: Modulus) -> "Subspace":
        return cls(n, zeros(0, n), modulus(p), ())

    @classmethod
    def full(cls, n: int, p: Modulus) -> "Subspace":
        return cls(n, identity(n), modulus(p), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"subspaces live in GF(p)^{self.ambient_dim} and GF(p)^{other.ambient_dim}"
            )

    def reduce(self, vectors) -> FpMatrix:
        """Residues of `vectors` after clearing this subspace's pivot columns."""
        v = as_matrix(vectors, self.p, cols=self.ambient_dim)
        if self.dim == 0:
            return v
        return (v - mat_mul(v[:, list(self.pivots)], self.basis, self.p)) % self.p

    def contains_vectors(self, vectors) -> bool:
        return not np.any(self.reduce(vectors))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return self.contains_vectors(other.basis)

    def coordinates(self, vectors) -> FpMatrix:
        """Coordinates with respect to `basis` (read off at the pivots)."""
        v = as_matrix(vectors, self.p, cols=self.ambient_dim)
        if not self.contains_vectors(v):
            raise NotContained(f"vectors do not lie in the {self.dim}-dim subspace")
        return v[:, list(self.pivots)]

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        rel = kernel_basis(np.vstack([self.basis, other.basis]), self.p)
        return Subspace.span(mat_mul(rel.basis[:, :self.dim], self.basis, self.p),
                             self.p, self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.p == other.p
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.p, self.basis.tobytes()))

    def image(self, f: FpMatrix) -> "Subspace":
        return Subspace.span(mat_mul(self.basis, f, self.p), self.p, f.shape[1])

    def quotient_map(self, sub: "Subspace") -> FpMatrix:
        """Projection self → self/sub, in `basis` coordinates on both sides."""
        return Subquotient(self, sub).projection()


class Subquotient:
    """
    V/U for U ⊆ V ⊆ GF(p)^n.

    Quotient coordinates are taken against a complement of U in V made of
    the earliest basis rows of V that are independent modulo U.
    """

    def __init__(self, num: Subspace, den: Subspace):
        num._check(den)
        if not num.contains(den):
            raise NotContained(f"denominator (dim {den.dim}) not inside numerator (dim {num.dim})")
        self.num = num
        self.den = den
        self.p = num.p
        ech = _Echelon(num.ambient_dim, self.p, den.basis)
        chosen = [row for row in num.basis if ech.add(row)]
        self.complement = np.array(chosen, dtype=np.int64).reshape(len(chosen), num.ambient_dim)
        self._solver: Optional[Solver] = None

    @property
    def dim(self) -> int:
        return self.complement.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.num.ambient_dim

    def _stack_solver(self) -> Solver:
        if self._solver is None:
            self._solver = Solver(np.vstack([self.complement, self.den.basis]), self.p)
        return self._solver

    def coords(self, vectors) -> FpMatrix:
        """Quotient coordinates of ambient vectors lying in the numerator."""
        v = as_matrix(vectors, self.p, cols=self.ambient_dim)
        if v.shape[0] == 0:
            return zeros(0, self.dim)
        x = self._stack_solver().solve(v)
        if x is None:
            raise NotContained("vectors do not lie in the numerator of the subquotient")
        return x[:, :self.dim]

    def lift(self, coords: FpMatrix) -> FpMatrix:
        """Representatives in the ambient space."""
        return mat_mul(as_matrix(coords, self.p, cols=self.dim), self.complement, self.p)

    def projection(self) -> FpMatrix:
        """num → num/den in num-basis coordinates."""
        return self.coords(self.num.basis)


def induced_map_on_subquotients(f: FpMatrix, src: Subquotient, tgt: Subquotient) -> FpMatrix:
    """The map src.num/src.den → tgt.num/tgt.den induced by the ambient map f."""
    p = src.p
    if f.shape != (src.ambient_dim, tgt.ambient_dim):
        raise DimensionMismatch(
            f"map of shape {f.shape} between ambients {src.ambient_dim} and {tgt.ambient_dim}"
        )
    if not tgt.num.contains_vectors(mat_mul(src.num.basis, f, p)):
        raise NotWellDefined("map does not carry the source numerator into the target numerator")
    if not tgt.den.contains_vectors(mat_mul(src.den.basis, f, p)):
        raise NotWellDefined("map does not carry the source denominator into the target denominator")
    return tgt.coords(mat_mul(src.complement, f, p))
