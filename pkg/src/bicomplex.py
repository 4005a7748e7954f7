"""
bicomplex.py — Double and triple complexes, total complexes, Horseshoe and
Cartan–Eilenberg resolutions

Orientation: the first index i is the row index (resolution direction,
filtration direction of the first spectral sequence), the second index j the
position inside the resolved complex.
  d(i, j):  X^{i,j} → X^{i,j+1}   (horizontal)
  dl(i, j): X^{i,j} → X^{i+1,j}   (vertical)
The total complex orders each (tX)^n = ⊕_{i+j=n} X^{i,j} by increasing i and
lets X^{i,j} contribute (−1)^i d and (−1)^i dl.

CE-resolutions are built per column: resolve B^k and H^k, Horseshoe
B^k ↣ Z^k ↠ H^k and then Z^k ↣ X^k ↠ B^{k+1}, so that
  J^{i,k} = I_B^{k,i} ⊕ I_H^{k,i} ⊕ I_B^{k+1,i}
and the horizontal differential carries the third summand identically onto
the first summand of J^{i,k+1}. Rows are split by construction.

Usage:
  ce = ce_resolution(x, InjResProvider("local-socle"), length=5)
  ce.validate()
  t = total(ce.carrier)
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.algebra import (
    FdModule,
    direct_sum,
    extend_into_injective,
    quotient_module,
    submodule,
    zero_module,
)
from src.complexes import (
    CochainComplex,
    ComplexMap,
    boundaries,
    cycles,
)
from src.errors import (
    DimensionMismatch,
    InvalidStructure,
    LiftFailed,
    NotShortExact,
    ProviderFailure,
    SignCheckFailed,
)
from src.linalg import (
    FpMatrix,
    Modulus,
    Solver,
    Subquotient,
    Subspace,
    as_matrix,
    block_matrix,
    identity,
    image_basis,
    induced_map_on_subquotients as induced,
    kernel_basis,
    mat_mul,
    modulus,
    rank,
    zeros,
)
from src.resolutions import InjResProvider, InjectiveResolution, zero_resolution

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


# ---------------------------------------------------------------------------
# Double complexes
# ---------------------------------------------------------------------------

class DoubleComplex:
    """First-quadrant double complex on the window [0, n1] × [0, n2]."""

    def __init__(
        self,
        p: Modulus,
        dims: Sequence[Sequence[int]],
        d: Optional[Mapping[Index, FpMatrix]] = None,
        dl: Optional[Mapping[Index, FpMatrix]] = None,
        modules: Optional[Mapping[Index, FdModule]] = None,
        check: bool = True,
    ):
        self.p = modulus(p)
        self._dims = [[int(v) for v in row] for row in dims]
        self.n1 = len(self._dims) - 1
        self.n2 = len(self._dims[0]) - 1 if self._dims else -1
        if any(len(row) != self.n2 + 1 for row in self._dims):
            raise DimensionMismatch("double complex rows of unequal length")
        self.modules: Dict[Index, FdModule] = dict(modules or {})
        self._d = self._coerce(d or {}, horizontal=True)
        self._dl = self._coerce(dl or {}, horizontal=False)
        if check:
            self.check()

    def _coerce(self, maps: Mapping[Index, FpMatrix], horizontal: bool) -> Dict[Index, FpMatrix]:
        out = {}
        for (i, j), m in maps.items():
            tgt = (i, j + 1) if horizontal else (i + 1, j)
            mat = as_matrix(m, self.p, cols=self.dim(*tgt)).reshape(self.dim(i, j), self.dim(*tgt))
            if self.dim(i, j) and self.dim(*tgt):
                out[(i, j)] = mat
        return out

    @property
    def window(self) -> Tuple[int, int]:
        return self.n1, self.n2

    def dim(self, i: int, j: int) -> int:
        if 0 <= i <= self.n1 and 0 <= j <= self.n2:
            return self._dims[i][j]
        return 0

    def d(self, i: int, j: int) -> FpMatrix:
        return self._d.get((i, j), zeros(self.dim(i, j), self.dim(i, j + 1)))

    def dl(self, i: int, j: int) -> FpMatrix:
        return self._dl.get((i, j), zeros(self.dim(i, j), self.dim(i + 1, j)))

    def module(self, i: int, j: int) -> Optional[FdModule]:
        return self.modules.get((i, j))

    def check(self) -> None:
        p = self.p
        for i in range(self.n1 + 1):
            for j in range(self.n2 + 1):
                if np.any(mat_mul(self.d(i, j), self.d(i, j + 1), p)):
                    raise InvalidStructure(f"dd ≠ 0 at ({i}, {j})")
                if np.any(mat_mul(self.dl(i, j), self.dl(i + 1, j), p)):
                    raise InvalidStructure(f"δδ ≠ 0 at ({i}, {j})")
                if not np.array_equal(mat_mul(self.d(i, j), self.dl(i, j + 1), p),
                                      mat_mul(self.dl(i, j), self.d(i + 1, j), p)):
                    raise InvalidStructure(f"dδ ≠ δd at ({i}, {j})")

    def row(self, i: int) -> CochainComplex:
        """X^{i,*} with the horizontal differential."""
        return CochainComplex(self.p, 0, [self.dim(i, j) for j in range(self.n2 + 1)],
                              {j: self.d(i, j) for j in range(self.n2)},
                              {j: m for (a, j), m in self.modules.items() if a == i}, check=False)

    def column(self, j: int) -> CochainComplex:
        """X^{*,j} with the vertical differential."""
        return CochainComplex(self.p, 0, [self.dim(i, j) for i in range(self.n1 + 1)],
                              {i: self.dl(i, j) for i in range(self.n1)},
                              {i: m for (i, b), m in self.modules.items() if b == j}, check=False)

    def transpose(self) -> "DoubleComplex":
        dims = [[self.dim(i, j) for i in range(self.n1 + 1)] for j in range(self.n2 + 1)]
        return DoubleComplex(
            self.p, dims,
            {(j, i): m for (i, j), m in self._dl.items()},
            {(j, i): m for (i, j), m in self._d.items()},
            {(j, i): m for (i, j), m in self.modules.items()}, check=False,
        )

    def truncate(self, n1: int, n2: int, total_degree: Optional[int] = None) -> "DoubleComplex":
        """Restrict to rows ≤ n1, columns ≤ n2 and optionally i + j ≤ total_degree."""
        n1, n2 = min(n1, self.n1), min(n2, self.n2)

        def keep(i, j):
            return i <= n1 and j <= n2 and (total_degree is None or i + j <= total_degree)

        dims = [[self.dim(i, j) if keep(i, j) else 0 for j in range(n2 + 1)] for i in range(n1 + 1)]
        return DoubleComplex(
            self.p, dims,
            {k: m for k, m in self._d.items() if keep(*k) and keep(k[0], k[1] + 1)},
            {k: m for k, m in self._dl.items() if keep(*k) and keep(k[0] + 1, k[1])},
            {k: m for k, m in self.modules.items() if keep(*k)}, check=False,
        )

    def __repr__(self) -> str:
        return f"DoubleComplex([0,{self.n1}]×[0,{self.n2}], p={self.p})"


class DoubleComplexMap:
    def __init__(self, src: DoubleComplex, tgt: DoubleComplex,
                 components: Mapping[Index, FpMatrix], check: bool = True):
        self.src, self.tgt, self.p = src, tgt, src.p
        self._comps: Dict[Index, FpMatrix] = {}
        for (i, j), m in components.items():
            self._comps[(i, j)] = as_matrix(m, self.p, cols=tgt.dim(i, j)).reshape(src.dim(i, j), tgt.dim(i, j))
        if check:
            self.check()

    def component(self, i: int, j: int) -> FpMatrix:
        return self._comps.get((i, j), zeros(self.src.dim(i, j), self.tgt.dim(i, j)))

    def check(self) -> None:
        p = self.p
        for i in range(max(self.src.n1, self.tgt.n1) + 1):
            for j in range(max(self.src.n2, self.tgt.n2) + 1):
                f = self.component(i, j)
                if not np.array_equal(mat_mul(self.src.d(i, j), self.component(i, j + 1), p),
                                      mat_mul(f, self.tgt.d(i, j), p)):
                    raise InvalidStructure(f"map does not commute with d at ({i}, {j})")
                if not np.array_equal(mat_mul(self.src.dl(i, j), self.component(i + 1, j), p),
                                      mat_mul(f, self.tgt.dl(i, j), p)):
                    raise InvalidStructure(f"map does not commute with δ at ({i}, {j})")

    def row_map(self, i: int) -> ComplexMap:
        return ComplexMap(self.src.row(i), self.tgt.row(i),
                          {j: self.component(i, j) for j in range(self.src.n2 + 1)}, check=False)


# ---------------------------------------------------------------------------
# Total complexes
# ---------------------------------------------------------------------------

def total_components(x: DoubleComplex, n: int) -> List[Tuple[int, int, int]]:
    """(i, j, offset) of the summands of (tX)^n, increasing i."""
    out, offset = [], 0
    for i in range(max(0, n - x.n2), min(n, x.n1) + 1):
        j = n - i
        out.append((i, j, offset))
        offset += x.dim(i, j)
    return out


def total(x: DoubleComplex, check: bool = True) -> CochainComplex:
    p = x.p
    top = x.n1 + x.n2
    dims, diffs = [], {}
    layouts = [total_components(x, n) for n in range(top + 1)]
    for n in range(top + 1):
        dims.append(sum(x.dim(i, j) for i, j, _ in layouts[n]))
    for n in range(top):
        out = zeros(dims[n], dims[n + 1])
        tgt_off = {(i, j): off for i, j, off in layouts[n + 1]}
        for i, j, off in layouts[n]:
            sign = -1 if i % 2 else 1
            rows = slice(off, off + x.dim(i, j))
            if (i, j + 1) in tgt_off:
                c = tgt_off[(i, j + 1)]
                out[rows, c:c + x.dim(i, j + 1)] = sign * x.d(i, j)
            if (i + 1, j) in tgt_off:
                c = tgt_off[(i + 1, j)]
                out[rows, c:c + x.dim(i + 1, j)] = sign * x.dl(i, j)
        diffs[n] = out % p
    # module structure only where every summand carries one
    modules = {}
    for n in range(top + 1):
        parts = [x.module(i, j) for i, j, _ in layouts[n]]
        if parts and all(m is not None for m in parts):
            modules[n] = parts[0] if len(parts) == 1 else direct_sum(parts)[0]
    t = CochainComplex(p, 0, dims if dims else [], diffs, modules, check=False)
    if check:
        for n in range(top - 1):
            if np.any(mat_mul(t.d(n), t.d(n + 1), p)):
                raise SignCheckFailed(f"total differential does not square to zero at degree {n}")
    return t


def total_map(f: DoubleComplexMap) -> ComplexMap:
    src, tgt = total(f.src, check=False), total(f.tgt, check=False)
    comps = {}
    for n in range(src.hi + 1):
        out = zeros(src.dim(n), tgt.dim(n))
        tgt_off = {(i, j): off for i, j, off in total_components(f.tgt, n)}
        for i, j, off in total_components(f.src, n):
            if (i, j) in tgt_off and f.src.dim(i, j):
                c = tgt_off[(i, j)]
                out[off:off + f.src.dim(i, j), c:c + f.tgt.dim(i, j)] = f.component(i, j)
        comps[n] = out
    return ComplexMap(src, tgt, comps, check=False)


def conc1(u: CochainComplex) -> DoubleComplex:
    """u in column 0 (X^{i,0} = u^i, vertical differential from u)."""
    n = max(u.hi, 0)
    dims = [[u.dim(i)] for i in range(n + 1)]
    return DoubleComplex(u.p, dims, {}, {(i, 0): u.d(i) for i in range(n)},
                         {(i, 0): m for i, m in u.modules.items()}, check=False)


def conc2(u: CochainComplex) -> DoubleComplex:
    """u in row 0 (X^{0,j} = u^j, horizontal differential from u)."""
    n = max(u.hi, 0)
    dims = [[u.dim(j) for j in range(n + 1)]]
    return DoubleComplex(u.p, dims, {(0, j): u.d(j) for j in range(n)}, {},
                         {(0, j): m for j, m in u.modules.items()}, check=False)


def conc1_sign(i: int) -> int:
    """Signs 1, 1, −1, −1, … of the isomorphism U → t(Conc₁ U)."""
    return -1 if (i // 2) % 2 else 1


def conc1_iso(u: CochainComplex) -> ComplexMap:
    t = total(conc1(u), check=False)
    return ComplexMap(u, t, {i: (conc1_sign(i) * identity(u.dim(i))) % u.p for i in u.degrees})


# ---------------------------------------------------------------------------
# Triple complexes
# ---------------------------------------------------------------------------

Index3 = Tuple[int, int, int]


class TripleComplex:
    """Y^{i,j,l} with d1 (i+1), d2 (j+1), d3 (l+1), pairwise commuting."""

    def __init__(self, p: Modulus, dims: Mapping[Index3, int], n: Tuple[int, int, int],
                 d1: Mapping[Index3, FpMatrix], d2: Mapping[Index3, FpMatrix],
                 d3: Mapping[Index3, FpMatrix], check: bool = True):
        self.p = modulus(p)
        self.n = n
        self._dims = {k: int(v) for k, v in dims.items()}
        self._maps = [dict(d1), dict(d2), dict(d3)]
        if check:
            self.check()

    def dim(self, i: int, j: int, l: int) -> int:
        return self._dims.get((i, j, l), 0)

    def diff(self, axis: int, i: int, j: int, l: int) -> FpMatrix:
        tgt = [i, j, l]
        tgt[axis] += 1
        m = self._maps[axis].get((i, j, l))
        if m is None:
            return zeros(self.dim(i, j, l), self.dim(*tgt))
        return as_matrix(m, self.p, cols=self.dim(*tgt)).reshape(self.dim(i, j, l), self.dim(*tgt))

    def indices(self):
        n1, n2, n3 = self.n
        for i in range(n1 + 1):
            for j in range(n2 + 1):
                for l in range(n3 + 1):
                    yield i, j, l

    def check(self) -> None:
        p = self.p
        for idx in self.indices():
            for a in range(3):
                nxt = list(idx)
                nxt[a] += 1
                if np.any(mat_mul(self.diff(a, *idx), self.diff(a, *nxt), p)):
                    raise InvalidStructure(f"d{a + 1}² ≠ 0 at {idx}")
                for b in range(a + 1, 3):
                    via_a = list(idx)
                    via_a[a] += 1
                    via_b = list(idx)
                    via_b[b] += 1
                    lhs = mat_mul(self.diff(a, *idx), self.diff(b, *via_a), p)
                    rhs = mat_mul(self.diff(b, *idx), self.diff(a, *via_b), p)
                    if not np.array_equal(lhs, rhs):
                        raise InvalidStructure(f"d{a + 1} and d{b + 1} do not commute at {idx}")

    def plane(self, l: int) -> DoubleComplex:
        """The (1,2)-plane at third index l."""
        n1, n2, _ = self.n
        dims = [[self.dim(i, j, l) for j in range(n2 + 1)] for i in range(n1 + 1)]
        return DoubleComplex(
            self.p, dims,
            {(i, j): self.diff(1, i, j, l) for i in range(n1 + 1) for j in range(n2)},
            {(i, j): self.diff(0, i, j, l) for i in range(n1) for j in range(n2 + 1)}, check=False,
        )

    def total_dims(self) -> List[int]:
        n1, n2, n3 = self.n
        out = [0] * (n1 + n2 + n3 + 1)
        for i, j, l in self.indices():
            out[i + j + l] += self.dim(i, j, l)
        return out


def t12(y: TripleComplex) -> DoubleComplex:
    """
    Planewise total complex: (t₁,₂Y)^{k,l} = ⊕_{i+j=k} Y^{i,j,l}. The vertical
    differential is the total differential of the (1,2)-planes, the horizontal
    one is induced by d3 without sign.
    """
    n1, n2, n3 = y.n
    planes = [y.plane(l) for l in range(n3 + 1)]
    totals = [total(pl, check=False) for pl in planes]
    kmax = n1 + n2
    dims = [[totals[l].dim(k) for l in range(n3 + 1)] for k in range(kmax + 1)]
    dl = {(k, l): totals[l].d(k) for k in range(kmax) for l in range(n3 + 1)}
    d = {}
    for l in range(n3):
        for k in range(kmax + 1):
            src = total_components(planes[l], k)
            tgt = {(i, j): off for i, j, off in total_components(planes[l + 1], k)}
            out = zeros(totals[l].dim(k), totals[l + 1].dim(k))
            for i, j, off in src:
                if (i, j) in tgt and y.dim(i, j, l):
                    c = tgt[(i, j)]
                    out[off:off + y.dim(i, j, l), c:c + y.dim(i, j, l + 1)] = y.diff(2, i, j, l)
            d[(k, l)] = out
    return DoubleComplex(y.p, dims, d, dl)


def planewise_homology_identity(y: TripleComplex, l: int) -> bool:
    """
    Literal equality of t(H^l(Y) along the third index) and H^l of the rows
    of t₁,₂Y (along the horizontal direction), with canonical bases.
    """
    p = y.p
    n1, n2, n3 = y.n
    z = t12(y)

    def hom_sq(src_mat: FpMatrix, out_mat: FpMatrix) -> Subquotient:
        num = kernel_basis(out_mat, p)
        den = image_basis(src_mat, p) if src_mat.shape[0] else Subspace.zero(out_mat.shape[0], p)
        return Subquotient(num, den)

    # H^l along d3, entrywise, as a double complex with induced d1, d2
    hq = {}
    for i in range(n1 + 1):
        for j in range(n2 + 1):
            hq[(i, j)] = hom_sq(y.diff(2, i, j, l - 1), y.diff(2, i, j, l))
    hdims = [[hq[(i, j)].dim for j in range(n2 + 1)] for i in range(n1 + 1)]
    hd = {(i, j): induced(y.diff(1, i, j, l), hq[(i, j)], hq[(i, j + 1)])
          for i in range(n1 + 1) for j in range(n2)}
    hdl = {(i, j): induced(y.diff(0, i, j, l), hq[(i, j)], hq[(i + 1, j)])
           for i in range(n1) for j in range(n2 + 1)}
    left = total(DoubleComplex(p, hdims, hd, hdl, check=False), check=False)

    # H^l of the rows of t₁,₂Y, with the induced vertical differential
    cols = {k: hom_sq(z.d(k, l - 1), z.d(k, l)) for k in range(z.n1 + 1)}
    for k in range(z.n1 + 1):
        if left.dim(k) != cols[k].dim:
            return False
    for k in range(z.n1):
        right_d = induced(z.dl(k, l), cols[k], cols[k + 1])
        if not np.array_equal(right_d, left.d(k)):
            return False
    return True


# ---------------------------------------------------------------------------
# Horseshoe
# ---------------------------------------------------------------------------

def _section(pi: FpMatrix, p: int) -> FpMatrix:
    """A linear section s of a surjection π (s @ π = id)."""
    n = pi.shape[1]
    if n == 0:
        return zeros(0, pi.shape[0])
    s = Solver(pi, p).solve(identity(n))
    if s is None:
        raise NotShortExact("quotient map is not surjective")
    return s


@dataclass
class ShortExactSequence:
    """M′ ↣ M ↠ M″ of modules with ι (M′ → M) and π (M → M″)."""

    sub: FdModule
    mid: FdModule
    quo: FdModule
    inc: FpMatrix
    proj: FpMatrix

    def check(self) -> None:
        p = self.mid.p
        if rank(self.inc, p) != self.sub.dim or rank(self.proj, p) != self.quo.dim:
            raise NotShortExact("ι is not injective or π is not surjective")
        if np.any(mat_mul(self.inc, self.proj, p)) or self.sub.dim + self.quo.dim != self.mid.dim:
            raise NotShortExact("sequence is not exact in the middle")


@dataclass
class Horseshoe:
    """Middle resolution with entries I′ ⊕ I″ and δ = [[d′, 0], [σ, d″]]."""

    ses: ShortExactSequence
    left: InjectiveResolution
    right: InjectiveResolution
    resolution: InjectiveResolution
    lam: FpMatrix
    sigmas: List[FpMatrix]

    def inclusion(self, i: int) -> FpMatrix:
        a, b = self.left.terms[i].dim, self.right.terms[i].dim
        return np.hstack([identity(a), zeros(a, b)])

    def projection(self, i: int) -> FpMatrix:
        a, b = self.left.terms[i].dim, self.right.terms[i].dim
        return np.vstack([zeros(a, b), identity(b)])


def horseshoe(ses: ShortExactSequence, left: InjectiveResolution, right: InjectiveResolution) -> Horseshoe:
    ses.check()
    p = ses.mid.p
    length = min(left.length, right.length)
    lam = extend_into_injective(ses.inc, left.augmentation, ses.mid, left.terms[0])
    section = _section(ses.proj, p)
    pi_eps = mat_mul(ses.proj, right.augmentation, p)
    aug = np.hstack([lam, pi_eps])

    sigmas: List[FpMatrix] = []
    if length >= 1:
        rhs = (-mat_mul(lam, left.diffs[0], p)) % p
        psi = mat_mul(section, rhs, p)
        sigmas.append(extend_into_injective(right.augmentation, psi, right.terms[0], left.terms[1]))
    for i in range(length - 1):
        psi = (-mat_mul(sigmas[i], left.diffs[i + 1], p)) % p
        sigmas.append(extend_into_injective(right.diffs[i], psi, right.terms[i + 1], left.terms[i + 2]))

    terms = [direct_sum([left.terms[i], right.terms[i]])[0] for i in range(length + 1)]
    diffs = [block_matrix([[left.diffs[i], zeros(left.terms[i].dim, right.terms[i + 1].dim)],
                           [sigmas[i], right.diffs[i]]]) for i in range(length)]
    mid = InjectiveResolution(ses.mid, terms, diffs, aug, provider="horseshoe")
    try:
        mid.validate()
    except ProviderFailure as exc:
        raise LiftFailed(f"Horseshoe resolution fails validation: {exc}") from exc
    return Horseshoe(ses, left, right, mid, lam, sigmas)


# ---------------------------------------------------------------------------
# Lifting maps to resolutions
# ---------------------------------------------------------------------------

def lift_map_to_resolutions(f: FpMatrix, src: InjectiveResolution, tgt: InjectiveResolution) -> List[FpMatrix]:
    """
    Components g^i: I^i → Ĩ^i of a chain map over f: M → M̃, i.e.
    ε g^0 = f ε̃ and d^i g^{i+1} = g^i d̃^i.
    """
    p = src.module.p
    length = min(src.length, tgt.length)
    gs = [extend_into_injective(src.augmentation, mat_mul(f, tgt.augmentation, p), src.terms[0], tgt.terms[0])]
    for i in range(length):
        psi = mat_mul(gs[i], tgt.diffs[i], p)
        gs.append(extend_into_injective(src.diffs[i], psi, src.terms[i + 1], tgt.terms[i + 1]))
    return gs


def resolution_map(f: FpMatrix, src: InjectiveResolution, tgt: InjectiveResolution) -> ComplexMap:
    gs = lift_map_to_resolutions(f, src, tgt)
    return ComplexMap(src.complex, tgt.complex, {i: g for i, g in enumerate(gs)})


def lift_map_to_horseshoe(
    src: Horseshoe,
    tgt: Horseshoe,
    f_sub: FpMatrix,
    f_mid: FpMatrix,
    f_quo: FpMatrix,
    g_left: List[FpMatrix],
    g_right: List[FpMatrix],
) -> List[FpMatrix]:
    """g = [[g′, 0], [θ, g″]] between Horseshoe resolutions over a map of sequences."""
    p = src.ses.mid.p
    length = min(src.resolution.length, tgt.resolution.length, len(g_left) - 1, len(g_right) - 1)
    section = _section(src.ses.proj, p)
    rhs = (mat_mul(f_mid, tgt.lam, p) - mat_mul(src.lam, g_left[0], p)) % p
    thetas = [extend_into_injective(src.right.augmentation, mat_mul(section, rhs, p),
                                    src.right.terms[0], tgt.left.terms[0])]
    for i in range(length):
        psi = (mat_mul(thetas[i], tgt.left.diffs[i], p)
               + mat_mul(g_right[i], tgt.sigmas[i], p)
               - mat_mul(src.sigmas[i], g_left[i + 1], p)) % p
        thetas.append(extend_into_injective(src.right.diffs[i], psi, src.right.terms[i + 1],
                                            tgt.left.terms[i + 1]))
    out = []
    for i in range(length + 1):
        zero_block = zeros(src.left.terms[i].dim, tgt.right.terms[i].dim)
        out.append(block_matrix([[g_left[i], zero_block], [thetas[i], g_right[i]]]))
    return out


# ---------------------------------------------------------------------------
# Cartan–Eilenberg resolutions
# ---------------------------------------------------------------------------

@dataclass
class CEColumn:
    """The B/Z/H data of one column k and its two Horseshoes."""

    k: int
    z_basis: FpMatrix
    b_basis: FpMatrix
    z_mod: FdModule
    b_mod: FdModule
    h_mod: FdModule
    b_in_z: FpMatrix
    z_to_h: FpMatrix
    h_quotient: Subquotient
    res_b: InjectiveResolution
    res_h: InjectiveResolution
    shoe_z: Horseshoe
    shoe_x: Optional[Horseshoe] = None


@dataclass
class CEResolution:
    source: CochainComplex
    carrier: DoubleComplex
    augmentation: Dict[int, FpMatrix]
    columns: List[CEColumn]
    length: int
    provider: str = ""
    trusted_columns: int = field(default=-1)

    def block_dims(self, i: int, k: int) -> Tuple[int, int, int]:
        col = self.columns[k]
        nb = self.columns[k + 1].res_b.terms[i].dim if k + 1 < len(self.columns) else 0
        return col.res_b.terms[i].dim, col.res_h.terms[i].dim, nb

    def validate(self) -> None:
        """Double complex axioms, augmentation, column exactness and the rowwise B/Z/H shape."""
        p = self.carrier.p
        j = self.carrier
        j.check()
        x = self.source
        for k in range(x.hi + 1):
            aug = self.augmentation[k]
            if k < x.hi and not np.array_equal(mat_mul(x.d(k), self.augmentation[k + 1], p),
                                               mat_mul(aug, j.d(0, k), p)):
                raise InvalidStructure(f"CE augmentation does not commute with d at column {k}")
            col = [aug] + [j.dl(i, k) for i in range(j.n1)]
            if rank(aug, p) != x.dim(k):
                raise InvalidStructure(f"CE augmentation not injective at column {k}")
            for i in range(len(col) - 1):
                if rank(col[i], p) + rank(col[i + 1], p) != j.dim(i, k):
                    raise InvalidStructure(f"CE column {k} not exact at row {i}")
        for i in range(j.n1 + 1):
            row = j.row(i)
            for k in range(j.n2 + 1):
                nb, nh, _ = self.block_dims(i, k)
                z = cycles(row, k)
                b = boundaries(row, k)
                first = Subspace.span(identity(j.dim(i, k))[:nb], p, j.dim(i, k))
                first_two = Subspace.span(identity(j.dim(i, k))[:nb + nh], p, j.dim(i, k))
                if b != first or z != first_two:
                    raise InvalidStructure(f"row {i} of the CE-resolution is not split at column {k}")
        logger.debug(f"CE-resolution validated on [0,{j.n1}]×[0,{j.n2}]")


def _column_modules(x: CochainComplex, k: int) -> Tuple[FpMatrix, FpMatrix, FdModule, FdModule]:
    mod = x.module(k)
    z = cycles(x, k)
    b = boundaries(x, k)
    z_mod, _ = submodule(mod, z, name=f"Z^{k}")
    b_mod, _ = submodule(mod, b, name=f"B^{k}")
    return z.basis, b.basis, z_mod, b_mod


def ce_resolution(x: CochainComplex, provider: InjResProvider, length: int) -> CEResolution:
    """CE-resolution of a complex of modules on [0, hi], rows 0..length."""
    if x.lo != 0:
        raise DimensionMismatch(f"CE-resolutions need complexes starting in degree 0, got {x.window}")
    p = x.p
    hi = x.hi
    algebra = next(iter(x.modules.values())).algebra if x.modules else None
    if algebra is None or any(x.module(k) is None for k in range(hi + 1)):
        raise ProviderFailure("every object of the complex needs module structure")

    def resolve(m: FdModule) -> InjectiveResolution:
        if m.dim == 0:
            return zero_resolution(algebra, length)
        return provider.resolve(m, length)

    columns: List[CEColumn] = []
    for k in range(hi + 2):
        if k <= hi:
            z_basis, b_basis, z_mod, b_mod = _column_modules(x, k)
        else:
            z_basis = b_basis = zeros(0, 0)
            z_mod = b_mod = zero_module(algebra)
        # z_basis is in reduced echelon form, so coordinates are taken against its rows
        z_space = Subspace.span(z_basis, p, x.dim(k))
        b_in_z = z_space.coordinates(b_basis) if b_basis.shape[0] else zeros(0, z_mod.dim)
        b_sub = Subspace.span(b_in_z, p, z_mod.dim)
        h_mod, z_to_h, hq = quotient_module(z_mod, b_sub, name=f"H^{k}")
        res_b, res_h = resolve(b_mod), resolve(h_mod)
        ses = ShortExactSequence(b_mod, z_mod, h_mod, b_in_z, z_to_h)
        shoe_z = horseshoe(ses, res_b, res_h)
        columns.append(CEColumn(k, z_basis, b_basis, z_mod, b_mod, h_mod, b_in_z, z_to_h, hq,
                                res_b, res_h, shoe_z))

    for k in range(hi + 1):
        col, nxt = columns[k], columns[k + 1]
        if k < hi:
            b_next = Subspace.span(nxt.b_basis, p, x.dim(k + 1)) if nxt.b_basis.shape[0] \
                else Subspace.zero(x.dim(k + 1), p)
            to_b = b_next.coordinates(x.d(k)) if nxt.b_basis.shape[0] else zeros(x.dim(k), 0)
        else:
            to_b = zeros(x.dim(k), 0)
        ses = ShortExactSequence(col.z_mod, x.module(k), nxt.b_mod, col.z_basis, to_b)
        col.shoe_x = horseshoe(ses, col.shoe_z.resolution, nxt.res_b)

    dims = [[columns[k].shoe_x.resolution.terms[i].dim for k in range(hi + 1)] for i in range(length + 1)]
    modules = {(i, k): columns[k].shoe_x.resolution.terms[i] for i in range(length + 1) for k in range(hi + 1)}
    dl = {(i, k): columns[k].shoe_x.resolution.diffs[i] for i in range(length) for k in range(hi + 1)}
    d = {}
    for i in range(length + 1):
        for k in range(hi):
            nb, nh, nb1 = (columns[k].res_b.terms[i].dim, columns[k].res_h.terms[i].dim,
                           columns[k + 1].res_b.terms[i].dim)
            out = zeros(dims[i][k], dims[i][k + 1])
            out[nb + nh:nb + nh + nb1, :nb1] = identity(nb1)
            d[(i, k)] = out
    carrier = DoubleComplex(p, dims, d, dl, modules, check=False)
    aug = {k: columns[k].shoe_x.resolution.augmentation for k in range(hi + 1)}
    ce = CEResolution(x, carrier, aug, columns, length, provider.strategy, trusted_columns=hi - 1)
    logger.info(f"CE-resolution: {hi + 1} columns × {length + 1} rows ({provider.strategy})")
    return ce


def _induced_on_subspaces(f: FpMatrix, src_basis: FpMatrix, tgt_basis: FpMatrix, p: int) -> FpMatrix:
    if src_basis.shape[0] == 0:
        return zeros(0, tgt_basis.shape[0])
    tgt = Subspace.span(tgt_basis, p, f.shape[1])
    return tgt.coordinates(mat_mul(src_basis, f, p))


def lift_map_to_ce(f: ComplexMap, src: CEResolution, tgt: CEResolution) -> DoubleComplexMap:
    """
    Lift a map of complexes to a map of CE-resolutions, through the induced
    maps on B, Z and H; the same lift on B^{k+1} serves columns k and k+1.
    """
    p = f.p
    x, y = f.src, f.tgt
    if x.hi != y.hi or src.length != tgt.length:
        raise DimensionMismatch(f"CE-resolutions on different windows: {x.window}, {y.window}")
    n = len(src.columns)
    g_b: Dict[int, List[FpMatrix]] = {}
    g_z: Dict[int, List[FpMatrix]] = {}
    f_b: Dict[int, FpMatrix] = {}
    f_z: Dict[int, FpMatrix] = {}
    for k in range(n):
        sc, tc = src.columns[k], tgt.columns[k]
        fk = f.component(k)
        if k <= x.hi:
            f_z[k] = _induced_on_subspaces(fk, sc.z_basis, tc.z_basis, p)
            f_b[k] = _induced_on_subspaces(fk, sc.b_basis, tc.b_basis, p)
        else:
            f_z[k] = zeros(sc.z_mod.dim, tc.z_mod.dim)
            f_b[k] = zeros(sc.b_mod.dim, tc.b_mod.dim)
        f_h = tc.h_quotient.coords(mat_mul(sc.h_quotient.complement, f_z[k], p)) \
            if sc.h_mod.dim else zeros(0, tc.h_mod.dim)
        g_b[k] = lift_map_to_resolutions(f_b[k], sc.res_b, tc.res_b)
        g_h = lift_map_to_resolutions(f_h, sc.res_h, tc.res_h)
        g_z[k] = lift_map_to_horseshoe(sc.shoe_z, tc.shoe_z, f_b[k], f_z[k], f_h, g_b[k], g_h)

    comps = {}
    for k in range(x.hi + 1):
        sc, tc = src.columns[k], tgt.columns[k]
        g_x = lift_map_to_horseshoe(sc.shoe_x, tc.shoe_x, f_z[k], f.component(k), f_b[k + 1],
                                    g_z[k], g_b[k + 1])
        for i, g in enumerate(g_x):
            comps[(i, k)] = g
    out = DoubleComplexMap(src.carrier, tgt.carrier, comps)
    logger.debug(f"lifted complex map to CE-resolutions ({len(comps)} components)")
    return out
