"""
resolutions.py — Injective and projective resolutions of finite-dimensional modules

Injective side: every injective term is a coinduced module
⊕ Hom_k(A, V_t), so each term carries `injective_blocks` and every lifting
problem into it reduces to a linear solve (see algebra.extend_into_injective).
Two providers:
  - "coinduced":   M ↣ Hom_k(A, M), valid over any algebra
  - "local-socle": M ↣ Hom_k(A, soc M), minimal; needs a local algebra

Projective side: free resolutions A^{t_0} ← A^{t_1} ← … with coordinates
(generator, algebra basis) row-major. Minimal covers use the top M/rad M
of a local algebra; free covers use a greedy generating set.

Usage:
  res = InjResProvider("local-socle").resolve(trivial_module(A), length=4)
  res.complex.dims()          # [2, 2, 2, 2, 2] over F2C2
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.algebra import (
    FdAlgebra,
    FdModule,
    coinduced,
    coinduced_space,
    direct_sum,
    local_radical,
    quotient_module,
    regular_module,
    socle,
    submodule,
    top,
    trivial_module,
    unit_adjoint,
    zero_module,
)
from src.complexes import CochainComplex, homology_dims
from src.config import BAR_DIMENSION_BUDGET, PROVIDERS, RESOLUTION_KINDS
from src.errors import BudgetExceeded, LiftFailed, NotLocal, ProviderFailure
from src.linalg import (
    FpMatrix,
    Solver,
    Subspace,
    identity,
    kernel_basis,
    image_basis,
    mat_mul,
    rank,
    zeros,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Injective resolutions
# ---------------------------------------------------------------------------

@dataclass
class InjectiveResolution:
    """0 → M → I^0 → I^1 → … → I^length; diffs[i] is d^i: I^i → I^{i+1}."""

    module: FdModule
    terms: List[FdModule]
    diffs: List[FpMatrix]
    augmentation: FpMatrix
    provider: str = ""

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def complex(self) -> CochainComplex:
        if not hasattr(self, "_complex"):
            self._complex = CochainComplex.from_modules(
                self.terms, {i: d for i, d in enumerate(self.diffs)}, check=False)
        return self._complex

    def dims(self) -> List[int]:
        return [t.dim for t in self.terms]

    def validate(self) -> None:
        """Exactness of 0 → M → I^0 → … up to I^{length−1}; raises ProviderFailure."""
        p = self.module.p
        maps = [self.augmentation] + list(self.diffs)
        if rank(self.augmentation, p) != self.module.dim:
            raise ProviderFailure(f"augmentation of {self.module!r} is not injective")
        for i in range(len(maps) - 1):
            inc, out = maps[i], maps[i + 1]
            if np.any(mat_mul(inc, out, p)):
                raise ProviderFailure(f"d∘d ≠ 0 at I^{i}")
            if rank(inc, p) + rank(out, p) != self.terms[i].dim:
                raise ProviderFailure(f"resolution of {self.module!r} is not exact at I^{i}")
        for t in self.terms:
            if not t.is_injective_by_construction:
                raise ProviderFailure(f"term {t!r} is not injective by construction")


def minimal_hull(m: FdModule, radical_gens: np.ndarray) -> Tuple[FdModule, FpMatrix]:
    """M ↣ Hom_k(A, k^s), s = dim soc M, adjoint to a functional that is injective on the socle."""
    p = m.p
    soc = socle(m, radical_gens)
    target = coinduced_space(m.algebra, soc.dim)
    if soc.dim == 0:
        return target, zeros(m.dim, 0)
    lam_t = Solver(soc.basis.T, p).solve(identity(soc.dim))
    if lam_t is None:
        raise ProviderFailure("socle basis admits no dual functional")
    emb = unit_adjoint(m, lam_t.T, target)
    return target, emb


class InjResProvider:
    """Builds injective hulls and resolutions by one of the named strategies."""

    def __init__(self, strategy: str = "local-socle"):
        if strategy not in PROVIDERS:
            raise ValueError(f"Unknown provider {strategy!r}; expected one of {PROVIDERS}")
        self.strategy = strategy
        self._radicals = {}

    def _radical(self, algebra: FdAlgebra) -> np.ndarray:
        key = id(algebra)
        if key not in self._radicals:
            self._radicals[key] = (algebra, local_radical(algebra))
        return self._radicals[key][1]

    def hull(self, m: FdModule) -> Tuple[FdModule, FpMatrix]:
        if m.dim == 0:
            return coinduced_space(m.algebra, 0), zeros(0, 0)
        if self.strategy == "coinduced":
            return coinduced(m)
        return minimal_hull(m, self._radical(m.algebra))

    def resolve(self, m: FdModule, length: int) -> InjectiveResolution:
        p = m.p
        terms: List[FdModule] = []
        diffs: List[FpMatrix] = []
        target, aug = self.hull(m)
        terms.append(target)
        image = image_basis(aug, p) if m.dim else Subspace.zero(target.dim, p)
        for i in range(length):
            coker, proj, _ = quotient_module(terms[-1], image, name=f"Ω^{-(i + 1)}")
            nxt, emb = self.hull(coker)
            d = mat_mul(proj, emb, p) if coker.dim else zeros(terms[-1].dim, nxt.dim)
            diffs.append(d)
            terms.append(nxt)
            image = image_basis(d, p) if d.shape[0] else Subspace.zero(nxt.dim, p)
        res = InjectiveResolution(m, terms, diffs, aug, provider=self.strategy)
        res.validate()
        logger.debug(f"{self.strategy} resolution of {m.name or 'module'}: dims {res.dims()}")
        return res


def injective_resolution(m: FdModule, provider: "InjResProvider | str" = "local-socle",
                         length: int = 4) -> InjectiveResolution:
    if isinstance(provider, str):
        provider = InjResProvider(provider)
    if length < 1:
        raise ValueError("resolution length must be at least 1")
    return provider.resolve(m, length)


def zero_resolution(algebra: FdAlgebra, length: int) -> InjectiveResolution:
    zero = zero_module(algebra)
    terms = [coinduced_space(algebra, 0) for _ in range(length + 1)]
    return InjectiveResolution(zero, terms, [zeros(0, 0) for _ in range(length)], zeros(0, 0), "zero")


# ---------------------------------------------------------------------------
# Projective (free) resolutions
# ---------------------------------------------------------------------------

@dataclass
class FreeResolution:
    """
    … → A^{t_1} → A^{t_0} → M; boundaries[i] is ∂_{i+1}: A^{t_{i+1}} → A^{t_i}
    and augmentation is A^{t_0} → M.
    """

    module: FdModule
    ranks: List[int]
    boundaries: List[FpMatrix]
    augmentation: FpMatrix
    kind: str = "free"
    _terms: dict = field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> FdAlgebra:
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def term(self, i: int) -> FdModule:
        if i not in self._terms:
            self._terms[i] = free_module(self.algebra, self.ranks[i])
        return self._terms[i]

    def generator_images(self, i: int) -> FpMatrix:
        """Rows ∂_{i+1}(1_k) for the generators 1_k of A^{t_{i+1}}."""
        d = self.algebra.dim
        b = self.boundaries[i]
        return np.stack([mat_mul(self.algebra.unit.reshape(1, -1), b[k * d:(k + 1) * d], self.module.p)[0]
                         for k in range(self.ranks[i + 1])]) if self.ranks[i + 1] else zeros(0, b.shape[1])

    def validate(self) -> None:
        p = self.module.p
        aug = self.augmentation
        if rank(aug, p) != self.module.dim:
            raise ProviderFailure(f"augmentation onto {self.module!r} is not surjective")
        maps = list(reversed(self.boundaries))
        chain = maps + [aug]
        for i in range(len(chain) - 1):
            if np.any(mat_mul(chain[i], chain[i + 1], p)):
                raise ProviderFailure("∂∘∂ ≠ 0 in free resolution")
        outs = [aug] + list(self.boundaries)
        for i in range(self.length):
            mid = self.algebra.dim * self.ranks[i]
            if rank(self.boundaries[i], p) + rank(outs[i], p) != mid:
                raise ProviderFailure(f"free resolution of {self.module!r} is not exact at term {i}")


def free_module(algebra: FdAlgebra, t: int) -> FdModule:
    if t == 0:
        return zero_module(algebra)
    reg = regular_module(algebra)
    if t == 1:
        return reg
    return direct_sum([reg] * t)[0]


def free_cover_map(m: FdModule, generators: np.ndarray) -> FpMatrix:
    """A^t → M sending b_j in block i to b_j·m_i."""
    rows = [mat_mul(g.reshape(1, -1), m.action[j], m.p)[0] for g in generators for j in range(m.algebra.dim)]
    return np.array(rows, dtype=np.int64).reshape(len(generators) * m.algebra.dim, m.dim)


def _greedy_generators(m: FdModule) -> np.ndarray:
    p = m.p
    gens: List[np.ndarray] = []
    generated = Subspace.zero(m.dim, p)
    for v in identity(m.dim):
        if generated.contains_vectors(v):
            continue
        gens.append(v)
        generated = image_basis(free_cover_map(m, np.array(gens)), p)
        if generated.dim == m.dim:
            break
    return np.array(gens, dtype=np.int64).reshape(len(gens), m.dim)


def _top_generators(m: FdModule, radical_gens: np.ndarray) -> np.ndarray:
    return top(m, radical_gens).complement


def projective_resolution(m: FdModule, length: int, kind: str = "minimal") -> FreeResolution:
    """Minimal (local algebras), free-cover or bar resolution of length `length`."""
    if kind not in RESOLUTION_KINDS:
        raise ValueError(f"Unknown resolution kind {kind!r}; expected one of {RESOLUTION_KINDS}")
    if kind == "bar":
        if m.algebra.group is None or m.dim != 1 or not np.array_equal(
                m.action.reshape(-1), m.algebra.augmentation):
            raise ValueError("bar resolutions resolve the trivial module of a group algebra")
        return bar_resolution(m.algebra, length, module=m)
    p = m.p
    rad = None
    if kind == "minimal":
        try:
            rad = local_radical(m.algebra)
        except NotLocal:
            logger.warning(f"{m.algebra.name} is not local; using free covers")
            kind = "free"

    def cover(mod: FdModule) -> np.ndarray:
        if mod.dim == 0:
            return zeros(0, 0)
        return _top_generators(mod, rad) if rad is not None else _greedy_generators(mod)

    gens = cover(m)
    aug = free_cover_map(m, gens) if m.dim else zeros(0, 0)
    ranks = [len(gens)]
    boundaries: List[FpMatrix] = []
    current = aug
    for _ in range(length):
        ker = kernel_basis(current, p) if current.shape[0] else Subspace.zero(0, p)
        kmod, inc = submodule(free_module(m.algebra, ranks[-1]), ker)
        g = cover(kmod)
        to_kernel = free_cover_map(kmod, g) if kmod.dim else zeros(0, 0)
        bnd = mat_mul(to_kernel, inc, p) if kmod.dim else zeros(0, current.shape[0])
        boundaries.append(bnd)
        ranks.append(len(g))
        current = bnd
    res = FreeResolution(m, ranks, boundaries, aug, kind=kind)
    res.validate()
    logger.debug(f"{kind} projective resolution of {m.name or 'module'}: ranks {ranks}")
    return res


def _extend_from_generators(images: FpMatrix, tgt: FdModule) -> FpMatrix:
    """The A-linear map A^t → tgt sending the k-th generator to images[k]."""
    d = tgt.algebra.dim
    rows = [mat_mul(y.reshape(1, -1), tgt.action[j], tgt.p)[0] for y in images for j in range(d)]
    return np.array(rows, dtype=np.int64).reshape(len(images) * d, tgt.dim)


def lift_map_to_free_resolutions(f: FpMatrix, src: FreeResolution, tgt: FreeResolution) -> List[FpMatrix]:
    """
    Components h_i: P_i → P̃_i over f: M → M̃, i.e. h_0 ε̃ = ε f and
    ∂_{i+1} h_i = h_{i+1} ∂̃_{i+1}.
    """
    p = src.module.p
    length = min(src.length, tgt.length)
    unit = src.algebra.unit.reshape(1, -1)
    d = src.algebra.dim

    def generator_rows(mat: FpMatrix, t: int) -> FpMatrix:
        if t == 0:
            return zeros(0, mat.shape[1])
        return np.vstack([mat_mul(unit, mat[k * d:(k + 1) * d], p) for k in range(t)])

    def solve_on(target_map: FpMatrix, wanted: FpMatrix, what: str) -> FpMatrix:
        if wanted.shape[0] == 0:
            return zeros(0, target_map.shape[0])
        if target_map.shape[0] == 0:
            if np.any(wanted):
                raise LiftFailed(f"no lift of {what}: target term is zero")
            return zeros(wanted.shape[0], 0)
        y = Solver(target_map, p).solve(wanted)
        if y is None:
            raise LiftFailed(f"no lift of {what} through the target resolution")
        return y

    wanted = mat_mul(generator_rows(src.augmentation, src.ranks[0]), f, p) if src.ranks[0] \
        else zeros(0, tgt.module.dim)
    gens = solve_on(tgt.augmentation, wanted, "the augmentation")
    hs = [_extend_from_generators(gens, tgt.term(0))]
    for i in range(length):
        images = mat_mul(generator_rows(src.boundaries[i], src.ranks[i + 1]), hs[i], p) \
            if src.ranks[i + 1] else zeros(0, tgt.term(i).dim)
        gens = solve_on(tgt.boundaries[i], images, f"∂_{i + 1}")
        hs.append(_extend_from_generators(gens, tgt.term(i + 1)))
    return hs


def minimal_projective_resolution(m: FdModule, length: int) -> FreeResolution:
    local_radical(m.algebra)
    return projective_resolution(m, length, kind="minimal")


def free_projective_resolution(m: FdModule, length: int) -> FreeResolution:
    return projective_resolution(m, length, kind="free")


def _bar_index(word: Tuple[int, ...], n: int) -> int:
    out = 0
    for g in word:
        out = out * n + g
    return out


def bar_resolution(algebra: FdAlgebra, length: int, module: Optional[FdModule] = None) -> FreeResolution:
    """
    Bar resolution of the trivial module over a group algebra RG: term i is
    free on the words [g_1|…|g_i] and

      ∂[g_1|…|g_i] = g_1[g_2|…|g_i] + Σ_k (−1)^k [g_1|…|g_k g_{k+1}|…|g_i] + (−1)^i [g_1|…|g_{i−1}]
    """
    g = algebra.group
    if g is None:
        raise ValueError(f"{algebra.name} is not a group algebra")
    n, p, e = g.order, algebra.p, g.identity
    if n ** (length + 1) > BAR_DIMENSION_BUDGET:
        raise BudgetExceeded(f"bar resolution of length {length} over {algebra.name} "
                             f"needs {n ** (length + 1)} dimensions (budget {BAR_DIMENSION_BUDGET})")
    m = module if module is not None else trivial_module(algebra)
    ranks = [n ** i for i in range(length + 1)]
    boundaries: List[FpMatrix] = []
    for i in range(1, length + 1):
        # generator images: (source word, target word, algebra element) → coefficient
        gens = np.zeros((ranks[i], ranks[i - 1], n), dtype=np.int64)
        for idx in range(ranks[i]):
            word = tuple((idx // n ** (i - 1 - k)) % n for k in range(i))
            gens[idx, _bar_index(word[1:], n), word[0]] += 1
            for k in range(i - 1):
                merged = word[:k] + (g.mul(word[k], word[k + 1]),) + word[k + 2:]
                gens[idx, _bar_index(merged, n), e] += (-1) ** (k + 1)
            gens[idx, _bar_index(word[:-1], n), e] += (-1) ** i
        # b·(c·[w]) = (bc)·[w]
        bnd = np.zeros((ranks[i], n, ranks[i - 1], n), dtype=np.int64)
        for b in range(n):
            for c in range(n):
                bnd[:, b, :, g.mul(b, c)] += gens[:, :, c]
        boundaries.append(bnd.reshape(ranks[i] * n, ranks[i - 1] * n) % p)
    aug = np.ones((n, 1), dtype=np.int64)
    res = FreeResolution(m, ranks, boundaries, aug, kind="bar")
    res.validate()
    logger.debug(f"bar resolution over {algebra.name}: term dims {[r * n for r in ranks]}")
    return res


# ---------------------------------------------------------------------------
# Hom out of a free resolution
# ---------------------------------------------------------------------------

def hom_from_free_differential(res: FreeResolution, i: int, n: FdModule) -> FpMatrix:
    """
    Hom_A(A^{t_i}, N) → Hom_A(A^{t_{i+1}}, N) with Hom_A(A^t, N) = N^t
    (a map is recorded by the images of its generators).
    """
    p = n.p
    d = res.algebra.dim
    ti, tj = res.ranks[i], res.ranks[i + 1]
    out = zeros(ti * n.dim, tj * n.dim)
    images = res.generator_images(i)
    for k in range(tj):
        for i0 in range(ti):
            coeffs = images[k, i0 * d:(i0 + 1) * d]
            if np.any(coeffs):
                out[i0 * n.dim:(i0 + 1) * n.dim, k * n.dim:(k + 1) * n.dim] = n.act(coeffs)
    return out % p


def hom_complex(res: FreeResolution, n: FdModule) -> CochainComplex:
    """Hom_A(P_•, N) as a cochain complex in degrees 0..length."""
    dims = [t * n.dim for t in res.ranks]
    diffs = {i: hom_from_free_differential(res, i, n) for i in range(res.length)}
    return CochainComplex(n.p, 0, dims, diffs, check=False)


def ext_dims(res: FreeResolution, n: FdModule) -> List[int]:
    """dim Ext^i_A(M, N) for i < length (the last degree is not trusted)."""
    hd = homology_dims(hom_complex(res, n))
    return [hd[i] for i in range(res.length)]
