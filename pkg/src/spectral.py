"""
spectral.py — Spectral objects and spectral sequences of filtered complexes

A FilteredComplex stores, per degree i, its graded pieces X̄(σ)^i in
increasing σ and the full differential as one matrix whose block
d^i_{σ,τ} vanishes for σ < τ. X(α) is the sum of the pieces σ ≤ α.

Indices:
  PosetIndex      α^{+k}, ordered lexicographically by (k, α); values may be ±inf
  QuotientIndex   β/α with β^{−1} ≤ α ≤ β ≤ α^{+1}; shift (β/α)^{+1} = α^{+1}/β
  EntryIndex      δ/β ≽ γ/α with δ^{−1} ≤ α ≤ β ≤ γ ≤ δ ≤ α^{+1}

Entry indices are kept in absolute form (shifts applied to the poset
levels), so every map between entries is an order relation. A quotient
index normalizes to an interval of pieces and a complex shift s:
  levels equal (l, l):      pieces ]α, β], s = 2l
  levels (l, l + 1):        pieces ]β, α], s = 2l + 1
X(P)[s] has X(P)^{i+s} in degree i and differential (−1)^s D.

E(δ/β ≽ γ/α) is the image of H^0(X(γ/α)) → H^0(X(δ/β)), stored as the
subquotient (Z·f + B)/B of the target chain group.

Usage:
  x = first_filtration(double_complex, trusted_degree=4)
  page = classical_page(x, r=2, degree=4)
"""

import logging
import math
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.bicomplex import DoubleComplex, DoubleComplexMap
from src.checks import CheckResult
from src.complexes import CochainComplex, ComplexMap, is_quasiiso
from src.errors import InvalidStructure, NotComparable, UntrustedRegionRequested
from src.linalg import (
    FpMatrix,
    Modulus,
    Subquotient,
    Subspace,
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

INF = math.inf
Value = Union[int, float]


# ---------------------------------------------------------------------------
# Indices
# ---------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class PosetIndex:
    value: Value
    level: int = 0

    @property
    def key(self) -> Tuple[int, Value]:
        return self.level, self.value

    def __lt__(self, other: "PosetIndex") -> bool:
        return self.key < other.key

    def shifted(self, k: int = 1) -> "PosetIndex":
        return PosetIndex(self.value, self.level + k)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def __str__(self) -> str:
        v = "∞" if self.value == INF else "−∞" if self.value == -INF else str(int(self.value))
        return v if self.level == 0 else f"{v}^{{{self.level:+d}}}"


def _idx(v: Union[Value, PosetIndex]) -> PosetIndex:
    return v if isinstance(v, PosetIndex) else PosetIndex(v, 0)


@dataclass(frozen=True)
class QuotientIndex:
    top: PosetIndex
    bottom: PosetIndex

    def __post_init__(self):
        b, a = self.top, self.bottom
        if not (b.shifted(-1) <= a <= b <= a.shifted(1)):
            raise InvalidStructure(f"{b}/{a} is not a quotient index")

    def shifted(self, k: int = 1) -> "QuotientIndex":
        q = self
        step = 1 if k >= 0 else -1
        for _ in range(abs(k)):
            q = QuotientIndex(q.bottom.shifted(1), q.top) if step > 0 else QuotientIndex(q.bottom, q.top.shifted(-1))
        return q

    def normalized(self) -> Tuple[Value, Value, int]:
        """(lo, hi, s): pieces ]lo, hi] and complex shift s."""
        a, b = self.bottom, self.top
        if a.level == b.level:
            return a.value, b.value, 2 * a.level
        return b.value, a.value, 2 * a.level + 1

    def __le__(self, other: "QuotientIndex") -> bool:
        return self.top <= other.top and self.bottom <= other.bottom

    def __str__(self) -> str:
        return f"{self.top}/{self.bottom}"


def _dotted(a: PosetIndex, b: PosetIndex) -> bool:
    return a < b or (a == b and a.is_infinite)


@dataclass(frozen=True)
class EntryIndex:
    outer: QuotientIndex
    inner: QuotientIndex

    def __post_init__(self):
        d, b = self.outer.top, self.outer.bottom
        g, a = self.inner.top, self.inner.bottom
        if not (d.shifted(-1) <= a <= b <= g <= d <= a.shifted(1)):
            raise InvalidStructure(f"({self}) is not an entry index")

    @classmethod
    def make(cls, delta, beta, gamma, alpha, k: int = 0) -> "EntryIndex":
        e = cls(QuotientIndex(_idx(delta), _idx(beta)), QuotientIndex(_idx(gamma), _idx(alpha)))
        return e.shifted(k) if k else e

    def shifted(self, k: int = 1) -> "EntryIndex":
        return EntryIndex(self.outer.shifted(k), self.inner.shifted(k))

    @property
    def is_dotted(self) -> bool:
        d, b = self.outer.top, self.outer.bottom
        g, a = self.inner.top, self.inner.bottom
        return _dotted(a, b) and _dotted(g, d)

    def __le__(self, other: "EntryIndex") -> bool:
        return self.inner <= other.inner and self.outer <= other.outer

    def __str__(self) -> str:
        return f"{self.outer} ≽ {self.inner}"


def classical_index(r: Union[int, float], p: int, q: int) -> EntryIndex:
    """E_r^{p,q} = E(−p−1+r / −p−1 ≽ −p / −p−r)^{+p+q}; r may be INF."""
    return EntryIndex.make(-p - 1 + r, -p - 1, -p, -p - r, p + q)


def differential_target_index(r: Union[int, float], p: int, q: int) -> EntryIndex:
    """E((−p−r−1)^{+1}/(−p−1) ≽ (−p−2r)^{+1}/(−p−r))^{+p+q}, equal to E_r^{p+r,q−r+1}."""
    return EntryIndex.make(PosetIndex(-p - r - 1, 1), -p - 1, PosetIndex(-p - 2 * r, 1), -p - r, p + q)


def couple_index(r: int, i: int, j: int) -> EntryIndex:
    """D_r^{i,j} = E(−i/−∞ ≽ −i−r+1/−∞)^{+i+j}."""
    return EntryIndex.make(-i, -INF, -i - r + 1, -INF, i + j)


# ---------------------------------------------------------------------------
# Filtered complexes
# ---------------------------------------------------------------------------

class FilteredComplex:
    """
    Pointwise split, pointwise finitely filtered complex on degrees [lo, hi].

    pieces[i] is a list of (σ, dim) in increasing σ; diffs[i] is the full
    differential X^i → X^{i+1} in the matching block coordinates.
    """

    def __init__(
        self,
        p: Modulus,
        lo: int,
        hi: int,
        pieces: Dict[int, Sequence[Tuple[int, int]]],
        diffs: Dict[int, FpMatrix],
        trusted_degree: Optional[int] = None,
        check: bool = True,
    ):
        self.p = modulus(p)
        self.lo, self.hi = lo, hi
        self.pieces = {i: [(int(s), int(n)) for s, n in pieces.get(i, [])] for i in range(lo, hi + 1)}
        self.diffs = {i: np.asarray(m, dtype=np.int64) % self.p for i, m in diffs.items()}
        self.trusted_degree = hi if trusted_degree is None else trusted_degree
        sigmas = [s for plist in self.pieces.values() for s, _ in plist]
        self.smin = min(sigmas) if sigmas else 0
        self.smax = max(sigmas) if sigmas else 0
        self._offsets = {}
        for i, plist in self.pieces.items():
            off, table = 0, {}
            for s, n in plist:
                table[s] = (off, n)
                off += n
            self._offsets[i] = (table, off)
        self._cache: Dict[tuple, object] = {}
        if check:
            self.check()

    def dim(self, i: int) -> int:
        return self._offsets[i][1] if i in self._offsets else 0

    def d(self, i: int) -> FpMatrix:
        m = self.diffs.get(i)
        if m is None or m.shape != (self.dim(i), self.dim(i + 1)):
            return zeros(self.dim(i), self.dim(i + 1))
        return m

    def clamp(self, v: Value) -> int:
        if v == -INF:
            return self.smin - 1
        if v == INF:
            return self.smax
        return int(v)

    def span(self, i: int, lo: Value, hi: Value) -> slice:
        """Coordinates of the pieces σ ∈ ]lo, hi] in degree i (a contiguous block)."""
        lo, hi = self.clamp(lo), self.clamp(hi)
        table, total_dim = self._offsets.get(i, ({}, 0))
        start = end = None
        for s, (off, n) in table.items():
            if lo < s <= hi:
                start = off if start is None else start
                end = off + n
        if start is None:
            return slice(0, 0)
        return slice(start, end)

    def width(self, i: int, lo: Value, hi: Value) -> int:
        s = self.span(i, lo, hi)
        return s.stop - s.start

    def check(self) -> None:
        for i in range(self.lo, self.hi):
            m = self.d(i)
            if np.any(mat_mul(m, self.d(i + 1), self.p)):
                raise InvalidStructure(f"filtered complex: d∘d ≠ 0 at degree {i}")
            src, _ = self._offsets[i]
            tgt, _ = self._offsets.get(i + 1, ({}, 0))
            for s, (so, sn) in src.items():
                for t, (to, tn) in tgt.items():
                    if s < t and np.any(m[so:so + sn, to:to + tn]):
                        raise InvalidStructure(f"differential raises filtration ({s} → {t}) at degree {i}")

    def underlying(self) -> CochainComplex:
        return CochainComplex(self.p, self.lo, [self.dim(i) for i in range(self.lo, self.hi + 1)],
                              {i: self.d(i) for i in range(self.lo, self.hi)}, check=False)

    # -----------------------------------------------------------------------
    # Cached cycles / boundaries of X(P) in a given degree
    # -----------------------------------------------------------------------

    def restricted(self, i: int, lo: Value, hi: Value) -> FpMatrix:
        """D^i restricted to X(]lo,hi])^i → X(]lo,hi])^{i+1}."""
        return self.d(i)[self.span(i, lo, hi), self.span(i + 1, lo, hi)]

    def cycles(self, i: int, lo: Value, hi: Value) -> Subspace:
        key = ("Z", i, self.clamp(lo), self.clamp(hi))
        if key not in self._cache:
            self._cache[key] = kernel_basis(self.restricted(i, lo, hi), self.p)
        return self._cache[key]

    def boundaries(self, i: int, lo: Value, hi: Value) -> Subspace:
        key = ("B", i, self.clamp(lo), self.clamp(hi))
        if key not in self._cache:
            m = self.restricted(i - 1, lo, hi)
            n = self.width(i, lo, hi)
            self._cache[key] = image_basis(m, self.p) if m.shape[0] else Subspace.zero(n, self.p)
        return self._cache[key]


class FilteredMap:
    """Filtration-compatible map of filtered complexes: components[i]: X^i → Y^i."""

    def __init__(self, src: FilteredComplex, tgt: FilteredComplex, components: Dict[int, FpMatrix],
                 check: bool = True):
        self.src, self.tgt, self.p = src, tgt, src.p
        self.components = {i: np.asarray(m, dtype=np.int64) % self.p for i, m in components.items()}
        if check:
            self.check()

    def component(self, i: int) -> FpMatrix:
        m = self.components.get(i)
        if m is None:
            return zeros(self.src.dim(i), self.tgt.dim(i))
        return m

    def check(self) -> None:
        p = self.p
        for i in range(min(self.src.lo, self.tgt.lo), max(self.src.hi, self.tgt.hi)):
            if not np.array_equal(mat_mul(self.src.d(i), self.component(i + 1), p),
                                  mat_mul(self.component(i), self.tgt.d(i), p)):
                raise InvalidStructure(f"filtered map does not commute with d at degree {i}")
            src_tab, _ = self.src._offsets.get(i, ({}, 0))
            tgt_tab, _ = self.tgt._offsets.get(i, ({}, 0))
            m = self.component(i)
            for s, (so, sn) in src_tab.items():
                for t, (to, tn) in tgt_tab.items():
                    if s < t and np.any(m[so:so + sn, to:to + tn]):
                        raise InvalidStructure(f"map raises filtration ({s} → {t}) at degree {i}")

    def restricted(self, i: int, lo: Value, hi: Value) -> FpMatrix:
        return self.component(i)[self.src.span(i, lo, hi), self.tgt.span(i, lo, hi)]


# ---------------------------------------------------------------------------
# Spectral object
# ---------------------------------------------------------------------------

def subquotient_complex(x: FilteredComplex, q: QuotientIndex) -> CochainComplex:
    """X(q) with its shift applied: degree i holds X(P)^{i+s}, differential (−1)^s D."""
    lo, hi, s = q.normalized()
    sign = -1 if s % 2 else 1
    degs = range(x.lo, x.hi + 1)
    dims = [x.width(i, lo, hi) for i in degs]
    diffs = {i - s: (sign * x.restricted(i, lo, hi)) % x.p for i in range(x.lo, x.hi)}
    return CochainComplex(x.p, x.lo - s, dims, diffs, check=False)


def sp_component(x: FilteredComplex, a: QuotientIndex, b: QuotientIndex, i: int) -> FpMatrix:
    """Degree-i component of the spectral-object map X(a) → X(b) for a ≤ b."""
    if not a <= b:
        raise NotComparable(f"{a} is not below {b}")
    plo, phi, s = a.normalized()
    qlo, qhi, t = b.normalized()
    deg = i + s
    rows = x.width(deg, plo, phi)
    if t == s:
        cols = x.width(deg, qlo, qhi)
        out = zeros(rows, cols)
        lo = max(x.clamp(plo), x.clamp(qlo))
        hi = min(x.clamp(phi), x.clamp(qhi))
        if lo < hi:
            common = x.span(deg, lo, hi)
            p_start = x.span(deg, plo, phi).start
            q_start = x.span(deg, qlo, qhi).start
            n = common.stop - common.start
            if n:
                out[common.start - p_start:common.stop - p_start,
                    common.start - q_start:common.stop - q_start] = identity(n)
        return out
    if t == s + 1:
        cols = x.width(deg + 1, qlo, qhi)
        out = zeros(rows, cols)
        lo = max(x.clamp(plo), x.clamp(qhi))
        if lo < x.clamp(phi):
            src = x.span(deg, lo, phi)
            p_start = x.span(deg, plo, phi).start
            if src.stop > src.start:
                out[src.start - p_start:src.stop - p_start, :] = \
                    x.d(deg)[src, x.span(deg + 1, qlo, qhi)]
        return out
    raise NotComparable(f"{a} and {b} are more than one period apart")


def sp_map(x: FilteredComplex, a: QuotientIndex, b: QuotientIndex) -> ComplexMap:
    src, tgt = subquotient_complex(x, a), subquotient_complex(x, b)
    degs = range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1)
    comps = {i: sp_component(x, a, b, i) for i in degs if src.dim(i) and tgt.dim(i)}
    return ComplexMap(src, tgt, comps)


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------

@dataclass
class SpectralEntry:
    index: EntryIndex
    quotient: Subquotient
    degree: int

    @property
    def dim(self) -> int:
        return self.quotient.dim


def homology_degrees(e: EntryIndex) -> Tuple[int, int]:
    return e.inner.normalized()[2], e.outer.normalized()[2]


def _check_trusted(x: FilteredComplex, e: EntryIndex) -> None:
    s, t = homology_degrees(e)
    if max(s, t) > x.trusted_degree:
        raise UntrustedRegionRequested(
            f"entry ({e}) needs homology in degree {max(s, t)}; trusted up to {x.trusted_degree}")


def entry(x: FilteredComplex, e: EntryIndex) -> SpectralEntry:
    key = ("E", e)
    if key in x._cache:
        return x._cache[key]
    _check_trusted(x, e)
    plo, phi, s = e.inner.normalized()
    qlo, qhi, t = e.outer.normalized()
    f = sp_component(x, e.inner, e.outer, 0)
    z = x.cycles(s, plo, phi)
    b = x.boundaries(t, qlo, qhi)
    num = b.sum(Subspace.span(mat_mul(z.basis, f, x.p), x.p, b.ambient_dim)) if z.dim else b
    out = SpectralEntry(e, Subquotient(num, b), t)
    x._cache[key] = out
    return out


def entry_dim(x: FilteredComplex, e: EntryIndex) -> int:
    return entry(x, e).dim


def entry_map(f: FilteredMap, e: EntryIndex) -> FpMatrix:
    """E(e)(f): E(e)(X) → E(e)(Y)."""
    src, tgt = entry(f.src, e), entry(f.tgt, e)
    qlo, qhi, t = e.outer.normalized()
    return induced_map_on_subquotients(f.restricted(t, qlo, qhi), src.quotient, tgt.quotient)


def entry_order_map(x: FilteredComplex, e: EntryIndex, e2: EntryIndex) -> FpMatrix:
    """The internal map E(e) → E(e2) of the E-diagram for e ≤ e2."""
    if not e <= e2:
        raise NotComparable(f"({e}) is not below ({e2})")
    src, tgt = entry(x, e), entry(x, e2)
    g = sp_component(x, e.outer, e2.outer, 0)
    return induced_map_on_subquotients(g, src.quotient, tgt.quotient)


def _ses_record(x: FilteredComplex, name: str, a: EntryIndex, b: EntryIndex, c: EntryIndex) -> CheckResult:
    p = x.p
    f, g = entry_order_map(x, a, b), entry_order_map(x, b, c)
    da, db, dc = entry_dim(x, a), entry_dim(x, b), entry_dim(x, c)
    ok = (rank(f, p) == da and rank(g, p) == dc and db == da + dc and not np.any(mat_mul(f, g, p)))
    return CheckResult(name=name, passed=ok, module="spectral",
                       details={"dims": [da, db, dc]}, description=f"{a} ↣ {b} ↠ {c}")


def fundamental_ses_check(x: FilteredComplex, alpha, beta, gamma, delta, eps, k: int = 0) -> List[CheckResult]:
    """Both fundamental short exact sequences for ε^{−1} ≤ α ≤ β ≤ γ ≤ δ ≤ ε ≤ α^{+1}."""
    a, b, c, d, e = (_idx(v) for v in (alpha, beta, gamma, delta, eps))
    first = [EntryIndex.make(e, b, c, a, k), EntryIndex.make(e, b, d, a, k), EntryIndex.make(e, c, d, a, k)]
    second = [EntryIndex.make(e, c, d, a, k), EntryIndex.make(e, c, d, b, k),
              EntryIndex.make(a.shifted(1), c, d, b, k)]
    return [_ses_record(x, "fundamental-ses-first", *first),
            _ses_record(x, "fundamental-ses-second", *second)]


def exact_couple_check(x: FilteredComplex, r: int, i: int, j: int) -> List[CheckResult]:
    """
    Exactness of D^{i,j} → D^{i−1,j+1} → E_r^{i+r−2,j−r+2} → D^{i+r−1,j−r+2}
    → D^{i+r−2,j−r+3} at the three inner positions.
    """
    p = x.p
    chain = [couple_index(r, i, j), couple_index(r, i - 1, j + 1), classical_index(r, i + r - 2, j - r + 2),
             couple_index(r, i + r - 1, j - r + 2), couple_index(r, i + r - 2, j - r + 3)]
    maps = [entry_order_map(x, chain[k], chain[k + 1]) for k in range(4)]
    out = []
    for k in range(1, 4):
        mid = entry_dim(x, chain[k])
        composite_zero = not np.any(mat_mul(maps[k - 1], maps[k], p))
        exact = composite_zero and rank(maps[k - 1], p) + rank(maps[k], p) == mid
        out.append(CheckResult(name=f"exact-couple-position-{k}", passed=exact, module="spectral",
                               details={"r": r, "i": i, "j": j}))
    return out


# ---------------------------------------------------------------------------
# Classical pages
# ---------------------------------------------------------------------------

@dataclass
class Page:
    r: Union[int, float]
    dims: Dict[Tuple[int, int], int]
    differentials: Dict[Tuple[int, int], FpMatrix] = field(default_factory=dict)
    trusted_degree: int = 0
    p: int = 2

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def total_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (p, q), v in self.dims.items():
            out[p + q] = out.get(p + q, 0) + v
        return out


def page_label(r: Union[int, float]) -> str:
    """"2", "3", … or "inf"."""
    return "inf" if r == INF else str(int(r))


def classical_page(x: FilteredComplex, r: Union[int, float], degree: int,
                   differentials: bool = True) -> Page:
    """E_r^{p,q} for p, q ≥ 0 with p + q ≤ degree, and d_r where its target is trusted."""
    if degree > x.trusted_degree:
        raise UntrustedRegionRequested(f"degree {degree} requested; trusted up to {x.trusted_degree}")
    dims, ds = {}, {}
    for n in range(degree + 1):
        for pp in range(n + 1):
            qq = n - pp
            dims[(pp, qq)] = entry_dim(x, classical_index(r, pp, qq))
            if differentials and r != INF and n + 1 <= x.trusted_degree:
                ds[(pp, qq)] = entry_order_map(x, classical_index(r, pp, qq), differential_target_index(r, pp, qq))
    logger.debug(f"E_{r} page up to degree {degree}: {sum(dims.values())} total dims")
    return Page(r, dims, ds, x.trusted_degree, x.p)


def page_homology_dims(page: Page, p: int) -> Dict[Tuple[int, int], int]:
    """Homology of (E_r, d_r) at each (p, q) whose incoming and outgoing d_r are known."""
    r = page.r
    out = {}
    for (pp, qq), v in page.dims.items():
        d_out = page.differentials.get((pp, qq))
        src = (pp - r, qq + r - 1)
        d_in = page.differentials.get(src)
        if d_out is None or (d_in is None and src[0] >= 0 and src[1] >= 0):
            continue
        rin = rank(d_in, p) if d_in is not None else 0
        out[(pp, qq)] = v - rank(d_out, p) - rin
    return out


# ---------------------------------------------------------------------------
# First filtration of a double complex
# ---------------------------------------------------------------------------

def _first_filtration_layout(x: DoubleComplex, n: int) -> List[Tuple[int, int, int]]:
    """(row i, offset, dim) in degree n, ordered by σ = −i ascending."""
    out, off = [], 0
    for i in range(min(n, x.n1), max(0, n - x.n2) - 1, -1):
        out.append((i, off, x.dim(i, n - i)))
        off += x.dim(i, n - i)
    return out


def first_filtration(x: DoubleComplex, trusted_degree: Optional[int] = None) -> FilteredComplex:
    """t_I X(α) = t X^{[−α,∗}: the piece σ = −i in degree n is X^{i, n−i}, with total signs."""
    p = x.p
    top = x.n1 + x.n2
    layouts = [_first_filtration_layout(x, n) for n in range(top + 1)]
    pieces = {n: [(-i, dim) for i, _, dim in layouts[n]] for n in range(top + 1)}
    diffs = {}
    for n in range(top):
        rows = sum(dim for _, _, dim in layouts[n])
        cols = sum(dim for _, _, dim in layouts[n + 1])
        out = zeros(rows, cols)
        tgt = {i: (off, dim) for i, off, dim in layouts[n + 1]}
        for i, off, dim in layouts[n]:
            if not dim:
                continue
            sign = -1 if i % 2 else 1
            j = n - i
            if i in tgt and tgt[i][1]:
                c, w = tgt[i]
                out[off:off + dim, c:c + w] = sign * x.d(i, j)
            if i + 1 in tgt and tgt[i + 1][1]:
                c, w = tgt[i + 1]
                out[off:off + dim, c:c + w] = sign * x.dl(i, j)
        diffs[n] = out % p
    if trusted_degree is None:
        trusted_degree = min(x.n1, x.n2) - 1
    return FilteredComplex(p, 0, top, pieces, diffs, trusted_degree=trusted_degree)


def first_filtration_map(f: DoubleComplexMap, src: FilteredComplex, tgt: FilteredComplex) -> FilteredMap:
    top = f.src.n1 + f.src.n2
    comps = {}
    for n in range(top + 1):
        a = _first_filtration_layout(f.src, n)
        b = {i: (off, dim) for i, off, dim in _first_filtration_layout(f.tgt, n)}
        out = zeros(src.dim(n), tgt.dim(n))
        for i, off, dim in a:
            if i in b and dim and b[i][1]:
                c, w = b[i]
                out[off:off + dim, c:c + w] = f.component(i, n - i)
        comps[n] = out
    return FilteredMap(src, tgt, comps, check=False)


def _piece_subspace(x: FilteredComplex, n: int, lo: Value, hi: Value, piece: int) -> Tuple[Subspace, slice]:
    whole = x.span(n, lo, hi)
    sub = x.span(n, piece - 1, piece)
    rel = slice(sub.start - whole.start, sub.stop - whole.start)
    width = whole.stop - whole.start
    basis = identity(width)[rel]
    return Subspace.span(basis, x.p, width), rel


def ssdc1_identification(x: DoubleComplex, alpha: int, k: int, which: str = "E2",
                         filtered: Optional[FilteredComplex] = None) -> bool:
    """
    The first-filtration entries at α ≤ 0 and k ≥ −α, compared as subquotients
    of X^{−α, k+α}:
      E1: E_I(α/α−1 ≽ α/α−1)^{+k} = H^{k+α}(X^{−α,∗})
      E2: E_I(α+1/α−1 ≽ α/α−2)^{+k} = H^{−α}(H^{k+α}(X^{−,∗}))
    """
    p = x.p
    fx = filtered if filtered is not None else first_filtration(x, trusted_degree=x.n1 + x.n2)
    i, j = -alpha, k + alpha
    z_row = kernel_basis(x.d(i, j), p)
    b_row = image_basis(x.d(i, j - 1), p) if x.dim(i, j - 1) else Subspace.zero(x.dim(i, j), p)
    if which == "E1":
        e = EntryIndex.make(alpha, alpha - 1, alpha, alpha - 1, k)
        ent = entry(fx, e)
        return ent.quotient.num == z_row and ent.quotient.den == b_row
    if which != "E2":
        raise ValueError(f"unknown identification {which!r}")
    e = EntryIndex.make(alpha + 1, alpha - 1, alpha, alpha - 2, k)
    ent = entry(fx, e)
    qlo, qhi, t = e.outer.normalized()
    piece, rel = _piece_subspace(fx, t, qlo, qhi, alpha)

    def restrict(space: Subspace) -> Subspace:
        inter = space.intersect(piece)
        return Subspace.span(inter.basis[:, rel], p, x.dim(i, j))

    # Vnum = {v : dv = 0, δv ∈ B_row(i+1)}, Vden = B_row(i) + δ(Z_row(i−1))
    b_next = image_basis(x.d(i + 1, j - 1), p) if x.dim(i + 1, j - 1) else Subspace.zero(x.dim(i + 1, j), p)
    if x.dim(i + 1, j):
        to_quotient = mat_mul(x.dl(i, j), _quotient_projection(b_next, p), p)
        vnum = kernel_basis(np.hstack([x.d(i, j), to_quotient]), p)
    else:
        vnum = z_row
    if i >= 1 and x.dim(i - 1, j):
        z_prev = kernel_basis(x.d(i - 1, j), p)
        vden = b_row.sum(Subspace.span(mat_mul(z_prev.basis, x.dl(i - 1, j), p), p, x.dim(i, j)))
    else:
        vden = b_row
    return restrict(ent.quotient.num) == vnum and restrict(ent.quotient.den) == vden


def _quotient_projection(sub: Subspace, p: int) -> FpMatrix:
    """V → V/sub in quotient coordinates."""
    return Subquotient(Subspace.full(sub.ambient_dim, p), sub).coords(identity(sub.ambient_dim))


# ---------------------------------------------------------------------------
# Proper spectral sequences
# ---------------------------------------------------------------------------

def dotted_indices(values: Sequence[int], shifts: Iterable[int]) -> List[EntryIndex]:
    """
    Dotted entry indices δ/β ≽ γ/α with α, β, γ at level 0 and δ at level 0
    or 1, built from `values` and ±∞, shifted by each k in `shifts`.
    """
    vals = [-INF] + sorted(set(int(v) for v in values)) + [INF]
    base: List[EntryIndex] = []
    pts = [PosetIndex(v) for v in vals]
    for ai, a in enumerate(pts):
        for b in pts[ai:]:
            if not _dotted(a, b):
                continue
            for g in pts:
                if g < b:
                    continue
                for d in pts:
                    if d >= g and _dotted(g, d):
                        base.append(EntryIndex(QuotientIndex(d, b), QuotientIndex(g, a)))
                for dv in vals:
                    d = PosetIndex(dv, 1)
                    if d.shifted(-1) <= a:
                        base.append(EntryIndex(QuotientIndex(d, b), QuotientIndex(g, a)))
    return [e.shifted(k) if k else e for k in shifts for e in base]


@dataclass
class ProperSS:
    filtered: FilteredComplex
    indices: List[EntryIndex]

    def dims(self) -> Dict[EntryIndex, int]:
        return {e: entry_dim(self.filtered, e) for e in self.indices}


def _trusted(x: FilteredComplex, e: EntryIndex) -> bool:
    s, t = homology_degrees(e)
    return max(s, t) <= x.trusted_degree


def proper_restriction(x: FilteredComplex, values: Optional[Sequence[int]] = None,
                       shifts: Optional[Iterable[int]] = None) -> ProperSS:
    """Dotted entries within the trusted region."""
    if values is None:
        values = range(max(x.smin - 1, -x.trusted_degree - 2), x.smax + 1)
    if shifts is None:
        shifts = range(0, x.trusted_degree + 1)
    return ProperSS(x, [e for e in dotted_indices(values, shifts) if _trusted(x, e)])


def _is_iso(m: FpMatrix, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def second_page_criterion(f: FilteredMap, values: Sequence[int], shifts: Iterable[int]) -> bool:
    """Isomorphism at every E(α+1/α−1 ≽ α/α−2)^{+k}."""
    for k in shifts:
        for a in values:
            e = EntryIndex.make(a + 1, a - 1, a, a - 2, k)
            if _trusted(f.src, e) and _trusted(f.tgt, e) and not _is_iso(entry_map(f, e), f.p):
                return False
    return True


@dataclass
class ProperIsoReport:
    iso: bool
    criterion: bool
    checked: int
    failures: List[str]

    @property
    def consistent(self) -> bool:
        return self.iso or not self.criterion


def proper_iso_check(f: FilteredMap, values: Optional[Sequence[int]] = None,
                     shifts: Optional[Iterable[int]] = None, full: bool = True) -> ProperIsoReport:
    """
    Whether E(f) is invertible at every trusted dotted index in the window,
    together with the second-page sufficient criterion.
    """
    x, y = f.src, f.tgt
    trusted = min(x.trusted_degree, y.trusted_degree)
    if values is None:
        values = range(min(x.smin, y.smin) - 1, max(x.smax, y.smax) + 1)
    shifts = list(range(0, trusted + 1) if shifts is None else shifts)
    criterion = second_page_criterion(f, values, shifts)
    failures: List[str] = []
    checked = 0
    if full:
        for e in dotted_indices(values, shifts):
            if not (_trusted(x, e) and _trusted(y, e)):
                continue
            checked += 1
            if not _is_iso(entry_map(f, e), f.p):
                failures.append(str(e))
    iso = not failures if full else criterion
    report = ProperIsoReport(iso, criterion, checked, failures)
    if not report.consistent:
        logger.warning(f"second-page criterion holds but {len(failures)} dotted entries are not isomorphic")
    logger.debug(f"proper iso check: {checked} dotted entries, iso={iso}, criterion={criterion}")
    return report


def rowwise_quasiiso_check(f: DoubleComplexMap) -> bool:
    """Whether every row map of f is a quasiisomorphism."""
    return all(is_quasiiso(f.row_map(i)) for i in range(min(f.src.n1, f.tgt.n1) + 1))
