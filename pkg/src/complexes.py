"""
complexes.py — Windowed cochain complexes over GF(p)

A CochainComplex lives on a finite window [lo, hi]; objects outside the
window are zero. The differential d(i): X^i → X^{i+1} is a dim X^i ×
dim X^{i+1} matrix (row vectors, maps on the right). Objects may carry
FdModule structure, in which case differentials are module maps.

Provides homology as an explicit subquotient, shift, concentration,
quasiisomorphism and split-acyclicity tests, and the purity check of a
short exact sequence of complexes.

Over a field every mono splits and every acyclic complex is split acyclic;
is_split_acyclic therefore decides acyclicity.

Usage:
  x = CochainComplex(2, 0, [2, 2], {0: [[1, 0], [0, 0]]})
  homology(x, 0).dim   # 1
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.algebra import FdModule, direct_sum, quotient_module, submodule
from src.checks import CheckResult
from src.errors import DimensionMismatch, InvalidStructure, NotShortExact
from src.linalg import (
    FpMatrix,
    Modulus,
    Solver,
    Subquotient,
    Subspace,
    as_matrix,
    direct_sum_matrix,
    identity,
    image_basis,
    induced_map_on_subquotients,
    kernel_basis,
    mat_mul,
    modulus,
    rank,
    zeros,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Complexes and maps
# ---------------------------------------------------------------------------

class CochainComplex:
    def __init__(
        self,
        p: Modulus,
        lo: int,
        dims: Sequence[int],
        diffs: Optional[Mapping[int, FpMatrix]] = None,
        modules: Optional[Mapping[int, FdModule]] = None,
        check: bool = True,
    ):
        self.p = modulus(p)
        self.lo = lo
        self._dims = [int(n) for n in dims]
        self.hi = lo + len(self._dims) - 1
        self.modules: Dict[int, FdModule] = dict(modules or {})
        self._diffs: Dict[int, FpMatrix] = {}
        for i, m in (diffs or {}).items():
            if not (self.lo <= i < self.hi):
                if np.any(np.asarray(m)):
                    raise DimensionMismatch(f"nonzero differential d^{i} outside window [{lo}, {self.hi}]")
                continue
            mat = as_matrix(m, self.p, cols=self.dim(i + 1)).reshape(self.dim(i), self.dim(i + 1))
            self._diffs[i] = mat
        for i, mod in self.modules.items():
            if mod.dim != self.dim(i):
                raise DimensionMismatch(f"module at degree {i} has dim {mod.dim}, expected {self.dim(i)}")
        if check:
            self.check()

    @classmethod
    def from_modules(cls, modules: Sequence[FdModule], diffs: Mapping[int, FpMatrix], lo: int = 0,
                     check: bool = True) -> "CochainComplex":
        p = modules[0].p if modules else 2
        return cls(p, lo, [m.dim for m in modules], diffs,
                   {lo + k: m for k, m in enumerate(modules)}, check=check)

    @property
    def window(self) -> Tuple[int, int]:
        return self.lo, self.hi

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, i: int) -> int:
        return self._dims[i - self.lo] if self.lo <= i <= self.hi else 0

    def dims(self) -> List[int]:
        return list(self._dims)

    def d(self, i: int) -> FpMatrix:
        if i in self._diffs:
            return self._diffs[i]
        return zeros(self.dim(i), self.dim(i + 1))

    def module(self, i: int) -> Optional[FdModule]:
        return self.modules.get(i)

    def check(self) -> None:
        for i in range(self.lo - 1, self.hi + 1):
            if np.any(mat_mul(self.d(i), self.d(i + 1), self.p)):
                raise InvalidStructure(f"d∘d ≠ 0 at degree {i}")
        for i in range(self.lo, self.hi):
            src, tgt = self.module(i), self.module(i + 1)
            if src is None or tgt is None:
                continue
            for a in range(src.algebra.dim):
                if not np.array_equal(mat_mul(src.action[a], self.d(i), self.p),
                                      mat_mul(self.d(i), tgt.action[a], self.p)):
                    raise InvalidStructure(f"d^{i} is not a module map")

    def truncate(self, lo: int, hi: int) -> "CochainComplex":
        """Brutal truncation to [lo, hi] (objects outside set to zero)."""
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        if hi < lo:
            return CochainComplex(self.p, lo, [])
        return CochainComplex(
            self.p, lo, [self.dim(i) for i in range(lo, hi + 1)],
            {i: self.d(i) for i in range(lo, hi)},
            {i: m for i, m in self.modules.items() if lo <= i <= hi}, check=False,
        )

    def __repr__(self) -> str:
        return f"CochainComplex([{self.lo}, {self.hi}], dims={self._dims}, p={self.p})"


class ComplexMap:
    """Degreewise matrices commuting with the differentials."""

    def __init__(self, src: CochainComplex, tgt: CochainComplex,
                 components: Mapping[int, FpMatrix], check: bool = True):
        if src.p != tgt.p:
            raise DimensionMismatch("complexes over different fields")
        self.src, self.tgt, self.p = src, tgt, src.p
        self._comps: Dict[int, FpMatrix] = {}
        for i, m in components.items():
            mat = as_matrix(m, self.p, cols=tgt.dim(i)).reshape(src.dim(i), tgt.dim(i))
            self._comps[i] = mat
        if check:
            self.check()

    def component(self, i: int) -> FpMatrix:
        return self._comps.get(i, zeros(self.src.dim(i), self.tgt.dim(i)))

    @property
    def degrees(self) -> range:
        return range(min(self.src.lo, self.tgt.lo), max(self.src.hi, self.tgt.hi) + 1)

    def check(self) -> None:
        for i in range(min(self.src.lo, self.tgt.lo) - 1, max(self.src.hi, self.tgt.hi) + 1):
            lhs = mat_mul(self.src.d(i), self.component(i + 1), self.p)
            rhs = mat_mul(self.component(i), self.tgt.d(i), self.p)
            if not np.array_equal(lhs, rhs):
                raise InvalidStructure(f"map does not commute with the differentials at degree {i}")

    def then(self, other: "ComplexMap") -> "ComplexMap":
        """self followed by other."""
        return ComplexMap(self.src, other.tgt,
                          {i: mat_mul(self.component(i), other.component(i), self.p) for i in self.degrees},
                          check=False)

    @classmethod
    def identity(cls, x: CochainComplex) -> "ComplexMap":
        return cls(x, x, {i: identity(x.dim(i)) for i in x.degrees}, check=False)

    @classmethod
    def zero(cls, src: CochainComplex, tgt: CochainComplex) -> "ComplexMap":
        return cls(src, tgt, {}, check=False)


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

@dataclass
class Homology:
    degree: int
    cycles: Subspace
    boundaries: Subspace
    quotient: Subquotient

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def projection(self) -> FpMatrix:
        """Z^k → H^k, in cycles-basis coordinates."""
        return self.quotient.projection()


def cycles(x: CochainComplex, k: int) -> Subspace:
    return kernel_basis(x.d(k), x.p)


def boundaries(x: CochainComplex, k: int) -> Subspace:
    prev = x.d(k - 1)
    if prev.shape[0] == 0:
        return Subspace.zero(x.dim(k), x.p)
    return image_basis(prev, x.p)


def homology(x: CochainComplex, k: int) -> Homology:
    z, b = cycles(x, k), boundaries(x, k)
    return Homology(k, z, b, Subquotient(z, b))


def homology_module(x: CochainComplex, k: int) -> FdModule:
    """H^k as a module: the cycle submodule modulo the boundaries."""
    mod = x.module(k)
    if mod is None:
        raise InvalidStructure(f"degree {k} of {x!r} carries no module structure")
    z, b = cycles(x, k), boundaries(x, k)
    z_mod, _ = submodule(mod, z, name=f"Z^{k}")
    b_in_z = z.coordinates(b.basis) if b.dim else zeros(0, z.dim)
    h_mod, _, _ = quotient_module(z_mod, Subspace.span(b_in_z, x.p, z.dim), name=f"H^{k}")
    return h_mod


def homology_dims(x: CochainComplex) -> Dict[int, int]:
    out = {}
    for k in x.degrees:
        dz = x.dim(k) - rank(x.d(k), x.p)
        out[k] = dz - rank(x.d(k - 1), x.p)
    return out


def euler_characteristic(x: CochainComplex) -> Tuple[int, int]:
    """(Σ(−1)^k dim X^k, Σ(−1)^k dim H^k); equal on any windowed complex."""
    hd = homology_dims(x)
    return (sum((-1) ** (k % 2) * x.dim(k) for k in x.degrees),
            sum((-1) ** (k % 2) * hd[k] for k in x.degrees))


def induced_on_homology(f: ComplexMap, k: int) -> FpMatrix:
    return induced_map_on_subquotients(f.component(k), homology(f.src, k).quotient,
                                       homology(f.tgt, k).quotient)


def is_quasiiso(f: ComplexMap, degrees: Optional[Sequence[int]] = None) -> bool:
    """Isomorphism on homology in every degree of the window, or in `degrees`."""
    for k in (f.degrees if degrees is None else degrees):
        m = induced_on_homology(f, k)
        if m.shape[0] != m.shape[1] or rank(m, f.p) != m.shape[0]:
            return False
    return True


def is_acyclic(x: CochainComplex) -> bool:
    return all(v == 0 for v in homology_dims(x).values())


def is_split_acyclic(x: CochainComplex) -> bool:
    return is_acyclic(x)


# ---------------------------------------------------------------------------
# Shift, concentration, sums
# ---------------------------------------------------------------------------

def shift(x: CochainComplex, k: int) -> CochainComplex:
    """Degree i holds X^{i+k}; the differential is multiplied by (−1)^k."""
    sign = -1 if k % 2 else 1
    return CochainComplex(
        x.p, x.lo - k, x.dims(),
        {i - k: (sign * x.d(i)) % x.p for i in range(x.lo, x.hi)},
        {i - k: m for i, m in x.modules.items()}, check=False,
    )


def conc(obj, p: Optional[Modulus] = None) -> CochainComplex:
    """Complex with the given object (module or dimension) in degree 0."""
    if isinstance(obj, FdModule):
        return CochainComplex(obj.p, 0, [obj.dim], {}, {0: obj}, check=False)
    return CochainComplex(p if p is not None else 2, 0, [int(obj)], {}, check=False)


def direct_sum_complexes(xs: Sequence[CochainComplex]) -> Tuple[CochainComplex, List[ComplexMap], List[ComplexMap]]:
    p = xs[0].p
    lo = min(x.lo for x in xs)
    hi = max(x.hi for x in xs)
    dims = [sum(x.dim(i) for x in xs) for i in range(lo, hi + 1)]
    diffs = {i: direct_sum_matrix([x.d(i) for x in xs]) for i in range(lo, hi)}
    modules = {}
    for i in range(lo, hi + 1):
        parts = [x.module(i) for x in xs]
        if all(m is not None for m in parts):
            modules[i] = direct_sum(parts)[0]
    total = CochainComplex(p, lo, dims, diffs, modules, check=False)
    incs, projs = [], []
    for idx, x in enumerate(xs):
        inc, proj = {}, {}
        for i in range(lo, hi + 1):
            offset = sum(y.dim(i) for y in xs[:idx])
            m = zeros(x.dim(i), total.dim(i))
            m[:, offset:offset + x.dim(i)] = identity(x.dim(i))
            inc[i], proj[i] = m, m.T.copy()
        incs.append(ComplexMap(x, total, inc, check=False))
        projs.append(ComplexMap(total, x, proj, check=False))
    return total, incs, projs


# ---------------------------------------------------------------------------
# Short exact sequences of complexes
# ---------------------------------------------------------------------------

def check_short_exact(f: ComplexMap, g: ComplexMap) -> None:
    """Degreewise X′ ↣ X ↠ X″; raises NotShortExact."""
    p = f.p
    if f.tgt is not g.src:
        raise NotShortExact("the two maps are not composable")
    for i in range(min(f.src.lo, g.tgt.lo, f.tgt.lo), max(f.src.hi, g.tgt.hi, f.tgt.hi) + 1):
        fi, gi = f.component(i), g.component(i)
        if rank(fi, p) != f.src.dim(i):
            raise NotShortExact(f"X′ → X is not injective in degree {i}")
        if rank(gi, p) != g.tgt.dim(i):
            raise NotShortExact(f"X → X″ is not surjective in degree {i}")
        if np.any(mat_mul(fi, gi, p)) or f.src.dim(i) + g.tgt.dim(i) != f.tgt.dim(i):
            raise NotShortExact(f"not exact in the middle in degree {i}")


def connecting_map(f: ComplexMap, g: ComplexMap, k: int) -> FpMatrix:
    """H^k(X″) → H^{k+1}(X′) of the long exact homology sequence."""
    p = f.p
    x1, x, x2 = f.src, f.tgt, g.tgt
    h2, h1 = homology(x2, k), homology(x1, k + 1)
    if h2.dim == 0 or h1.dim == 0:
        return zeros(h2.dim, h1.dim)
    lifts = Solver(g.component(k), p).solve(h2.quotient.complement)
    if lifts is None:
        raise NotShortExact(f"cycles of X″ do not lift to X in degree {k}")
    pre = Solver(f.component(k + 1), p).solve(mat_mul(lifts, x.d(k), p))
    if pre is None:
        raise NotShortExact(f"connector at degree {k} is not defined")
    return h1.quotient.coords(pre)


def purity_check(f: ComplexMap, g: ComplexMap) -> List[CheckResult]:
    """
    Evaluates the five equivalent purity conditions on X′ ↣ X ↠ X″:
      (1) all connectors vanish
      (2) B^k X′ → B^k X → B^k X″ is short exact
      (3) Z^k X → Z^k X″ is surjective
      (3') Z′^k X′ → Z′^k X is injective
      (4) the B/Z/H diagram has short exact rows and columns
    The last record asserts that the five agree.
    """
    check_short_exact(f, g)
    p = f.p
    x1, x, x2 = f.src, f.tgt, g.tgt
    lo = min(x1.lo, x.lo, x2.lo) - 1
    hi = max(x1.hi, x.hi, x2.hi) + 1
    c1 = c2 = c3 = c3p = c4 = True
    for k in range(lo, hi + 1):
        c1 &= not np.any(connecting_map(f, g, k))
        b1, b, b2 = boundaries(x1, k), boundaries(x, k), boundaries(x2, k)
        b_exact = b.dim == b1.dim + b2.dim
        c2 &= b_exact
        z, z2 = cycles(x, k), cycles(x2, k)
        z_epi = rank(mat_mul(z.basis, g.component(k), p), p) == z2.dim if z.dim else z2.dim == 0
        c3 &= z_epi
        im_f = image_basis(f.component(k), p) if x1.dim(k) else Subspace.zero(x.dim(k), p)
        c3p &= (b.intersect(im_f).dim == b1.dim) if x.dim(k) else True
        h1, h, h2 = homology(x1, k), homology(x, k), homology(x2, k)
        hf = induced_on_homology(f, k)
        hg = induced_on_homology(g, k)
        h_exact = (rank(hf, p) == h1.dim and rank(hg, p) == h2.dim and h.dim == h1.dim + h2.dim)
        c4 &= b_exact and z_epi and h_exact
    conditions = {"(1) connectors vanish": c1, "(2) B-sequence exact": c2, "(3) Z epimorphic": c3,
                  "(3') Z' monomorphic": c3p, "(4) B/Z/H diagram exact": c4}
    results = [CheckResult(name=n, passed=bool(v), module="complexes") for n, v in conditions.items()]
    agree = len(set(conditions.values())) == 1
    results.append(CheckResult(name="purity conditions agree", passed=agree, module="complexes",
                               description="" if agree else "conditions disagree"))
    logger.debug(f"purity check over degrees [{lo}, {hi}]: {conditions}")
    return results


def is_pure(f: ComplexMap, g: ComplexMap) -> bool:
    return purity_check(f, g)[0].passed
