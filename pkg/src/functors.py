"""
functors.py — Additive functors and bifunctors between module categories

A FunctorHandle acts on modules (returns an FdModule) and on module maps
(returns the matrix of the induced map). Covariant handles send f: M → N to
F(M) → F(N); contravariant handles send it to F(N) → F(M). Everything a
spectral-sequence pipeline needs is derived from these two actions:
complexes, free resolutions, double complexes and their maps.

Vector-space valued functors land in modules over the shared field algebra
`scalars(p)`, so that Hom spaces between their values can be formed.

Usage:
  fk = FixedPoints(nk)                       # (−)^K : H-Mod → H̄-Mod
  g = Invariants(nk.quotient.hbar.algebra)   # (−)^{H̄}
  fa = fk.on_complex(res.complex)
  hom = HomBifunctor(A); f = hom.fix_second(M)   # Hom_A(−, M)
"""

import logging
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import (
    FdAlgebra,
    FdModule,
    direct_sum,
    field_algebra,
    fixed_points,
    hom_module_space,
    random_module_map,
    regular_module,
    restrict_along,
    tensor_over_field,
    trivial_module,
)
from src.bicomplex import DoubleComplex, DoubleComplexMap
from src.checks import CheckResult
from src.complexes import CochainComplex, ComplexMap
from src.errors import DimensionMismatch, InvalidStructure
from src.hopf import FixedPointModule, HomKModule, NormalHopfSubalgebra, _batched
from src.linalg import FieldSpec, FpMatrix, Subspace, identity, mat_mul, zeros
from src.resolutions import FreeResolution

logger = logging.getLogger(__name__)

CO = "co"
CONTRA = "contra"


@lru_cache(maxsize=None)
def scalars(p: int) -> FdAlgebra:
    """The one field algebra GF(p) shared by every vector-space valued functor."""
    return field_algebra(FieldSpec(p))


def space(p: int, n: int) -> FdModule:
    alg = scalars(p)
    return FdModule(alg, identity(n).reshape(1, n, n), name=f"F{p}^{n}", check=False)


def _hom_maps(carrier: Subspace, src_dim: int, tgt_dim: int) -> np.ndarray:
    return carrier.basis.reshape(carrier.dim, src_dim, tgt_dim)


def _coords(carrier: Subspace, maps: np.ndarray) -> FpMatrix:
    if maps.shape[0] == 0:
        return zeros(0, carrier.dim)
    if carrier.dim == 0:
        return zeros(maps.shape[0], 0)
    return carrier.coordinates(maps.reshape(maps.shape[0], -1))


class _Cache:
    """Per-object cache keyed by id, guarded against id reuse."""

    def __init__(self):
        self._store: Dict[Tuple[int, ...], Tuple[Tuple[Any, ...], Any]] = {}

    def get(self, *objs):
        hit = self._store.get(tuple(id(o) for o in objs))
        if hit is not None and all(a is b for a, b in zip(hit[0], objs)):
            return hit[1]
        return None

    def put(self, value, *objs):
        self._store[tuple(id(o) for o in objs)] = (objs, value)
        return value


# ---------------------------------------------------------------------------
# Functor handles
# ---------------------------------------------------------------------------

class FunctorHandle:
    """
    Base class. Subclasses implement `_object` and `_morphism`.

    `left_exact` and `exact` are declarations; `check_functor_laws` samples
    identities, composition and additivity on given modules.
    """

    variance = CO
    left_exact = True
    exact = False

    def __init__(self, name: str):
        self.name = name
        self._objects = _Cache()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

    @property
    def is_contravariant(self) -> bool:
        return self.variance == CONTRA

    def _object(self, m: FdModule) -> FdModule:
        raise NotImplementedError

    def _morphism(self, f: FpMatrix, src: FdModule, tgt: FdModule) -> FpMatrix:
        raise NotImplementedError

    def on_module(self, m: FdModule) -> FdModule:
        hit = self._objects.get(m)
        if hit is None:
            hit = self._objects.put(self._object(m), m)
        return hit

    def on_map(self, f: FpMatrix, src: FdModule, tgt: FdModule) -> FpMatrix:
        """F(f) for f: src → tgt; direction reversed for contravariant handles."""
        f = np.asarray(f, dtype=np.int64).reshape(src.dim, tgt.dim)
        out = self._morphism(f, src, tgt)
        a, b = (self.on_module(tgt), self.on_module(src)) if self.is_contravariant \
            else (self.on_module(src), self.on_module(tgt))
        return np.asarray(out, dtype=np.int64).reshape(a.dim, b.dim) % a.p

    def on_complex(self, x: CochainComplex) -> CochainComplex:
        """Entrywise image of a complex of modules (covariant handles)."""
        if self.is_contravariant:
            raise InvalidStructure(f"{self!r} is contravariant; use on_free_resolution")
        mods = [x.module(i) for i in x.degrees]
        if any(m is None for m in mods):
            raise InvalidStructure(f"{self!r} needs module structure on every object")
        out = [self.on_module(m) for m in mods]
        diffs = {x.lo + k: self.on_map(x.d(x.lo + k), mods[k], mods[k + 1]) for k in range(len(mods) - 1)}
        return CochainComplex.from_modules(out, diffs, lo=x.lo)

    def on_free_resolution(self, res: FreeResolution) -> CochainComplex:
        """F(P_0) → F(P_1) → … for a contravariant handle."""
        if not self.is_contravariant:
            raise InvalidStructure(f"{self!r} is covariant; use on_complex")
        terms = [res.term(i) for i in range(res.length + 1)]
        out = [self.on_module(t) for t in terms]
        diffs = {i: self.on_map(res.boundaries[i], terms[i + 1], terms[i]) for i in range(res.length)}
        return CochainComplex.from_modules(out, diffs)

    def on_complex_map(self, f: ComplexMap, src: CochainComplex, tgt: CochainComplex) -> ComplexMap:
        """F(f) between already computed images src = F(f.src), tgt = F(f.tgt)."""
        comps = {i: self.on_map(f.component(i), f.src.module(i), f.tgt.module(i)) for i in f.src.degrees}
        return ComplexMap(src, tgt, comps)

    def on_double_complex(self, x: DoubleComplex) -> DoubleComplex:
        if self.is_contravariant:
            raise InvalidStructure(f"{self!r} is contravariant")
        mods = {}
        for i in range(x.n1 + 1):
            for j in range(x.n2 + 1):
                m = x.module(i, j)
                if m is None:
                    raise InvalidStructure(f"entry ({i}, {j}) of {x!r} has no module structure")
                mods[(i, j)] = m
        images = {k: self.on_module(m) for k, m in mods.items()}
        d = {(i, j): self.on_map(x.d(i, j), mods[(i, j)], mods[(i, j + 1)])
             for i in range(x.n1 + 1) for j in range(x.n2)}
        dl = {(i, j): self.on_map(x.dl(i, j), mods[(i, j)], mods[(i + 1, j)])
              for i in range(x.n1) for j in range(x.n2 + 1)}
        dims = [[images[(i, j)].dim for j in range(x.n2 + 1)] for i in range(x.n1 + 1)]
        out = DoubleComplex(x.p, dims, d, dl, images)
        logger.debug(f"{self.name} applied to {x!r}: {sum(map(sum, dims))} total dims")
        return out

    def on_double_map(self, f: DoubleComplexMap, src: DoubleComplex, tgt: DoubleComplex) -> DoubleComplexMap:
        comps = {}
        for i in range(f.src.n1 + 1):
            for j in range(f.src.n2 + 1):
                comps[(i, j)] = self.on_map(f.component(i, j), f.src.module(i, j), f.tgt.module(i, j))
        return DoubleComplexMap(src, tgt, comps)

    def check_functor_laws(self, modules: Sequence[FdModule], rng: np.random.Generator,
                           samples: int = 2) -> List[CheckResult]:
        """Identities, composition of sampled endomorphisms, additivity on M ⊕ N."""
        results = []
        for m in modules:
            fm = self.on_module(m)
            p = m.p
            ok_id = np.array_equal(self.on_map(identity(m.dim), m, m), identity(fm.dim))
            ok_comp = True
            for _ in range(samples):
                a, b = random_module_map(m, m, rng), random_module_map(m, m, rng)
                fa, fb = self.on_map(a, m, m), self.on_map(b, m, m)
                want = mat_mul(fb, fa, p) if self.is_contravariant else mat_mul(fa, fb, p)
                ok_comp &= np.array_equal(self.on_map(mat_mul(a, b, p), m, m), want)
            results.append(CheckResult(name="preserves-identity", passed=bool(ok_id), module="functors",
                                       details={"functor": self.name, "dim": m.dim}))
            results.append(CheckResult(name="preserves-composition", passed=bool(ok_comp), module="functors",
                                       details={"functor": self.name, "dim": m.dim}))
        for m, n in zip(modules, modules[1:]):
            total = direct_sum([m, n])[0]
            ranks = [self.on_module(m).dim, self.on_module(n).dim]
            ok = self.on_module(total).dim == sum(ranks)
            results.append(CheckResult(name="additive", passed=bool(ok), module="functors",
                                       details={"functor": self.name, "dims": ranks}))
        return results


class Identity(FunctorHandle):
    exact = True

    def __init__(self):
        super().__init__("identity")

    def _object(self, m):
        return m

    def _morphism(self, f, src, tgt):
        return f


class Restriction(FunctorHandle):
    """Pull back along an algebra map φ: source → target."""

    exact = True

    def __init__(self, phi: FpMatrix, source: FdAlgebra):
        super().__init__(f"restrict to {source.name}")
        self.phi, self.source = phi, source

    def _object(self, m):
        return restrict_along(m, self.phi, self.source)

    def _morphism(self, f, src, tgt):
        return f


class Invariants(FunctorHandle):
    """M ↦ M^A = {m : b·m = ε(b) m}, a vector space."""

    def __init__(self, algebra: FdAlgebra):
        super().__init__(f"(−)^{algebra.name}")
        if algebra.augmentation is None:
            raise InvalidStructure(f"{algebra.name} has no augmentation")
        self.algebra = algebra
        self._carriers = _Cache()

    def carrier(self, m: FdModule) -> Subspace:
        hit = self._carriers.get(m)
        if hit is None:
            basis = np.eye(self.algebra.dim, dtype=np.int64)
            hit = self._carriers.put(fixed_points(m, basis, self.algebra.augmentation), m)
        return hit

    def _object(self, m):
        return space(m.p, self.carrier(m).dim)

    def _morphism(self, f, src, tgt):
        a, b = self.carrier(src), self.carrier(tgt)
        if a.dim == 0:
            return zeros(0, b.dim)
        return b.coordinates(mat_mul(a.basis, f, src.p)) if b.dim else zeros(a.dim, 0)


class FixedPoints(FunctorHandle):
    """(−)^K : H-Mod → H̄-Mod for a normal Hopf subalgebra K."""

    def __init__(self, nk: NormalHopfSubalgebra):
        super().__init__("(−)^K")
        self.nk = nk
        self._fpm = _Cache()

    def fixed(self, m: FdModule) -> FixedPointModule:
        hit = self._fpm.get(m)
        if hit is None:
            hit = self._fpm.put(FixedPointModule(m, self.nk), m)
        return hit

    def _object(self, m):
        return self.fixed(m).module

    def _morphism(self, f, src, tgt):
        a, b = self.fixed(src), self.fixed(tgt)
        if a.module.dim == 0:
            return zeros(0, b.module.dim)
        return a.induced(f, b) if b.module.dim else zeros(a.module.dim, 0)


class HomFrom(FunctorHandle):
    """Hom_A(N, −), vector-space valued."""

    def __init__(self, n: FdModule):
        super().__init__(f"Hom({n.name or 'N'}, −)")
        self.n = n
        self._carriers = _Cache()

    def carrier(self, m: FdModule) -> Subspace:
        hit = self._carriers.get(m)
        if hit is None:
            hit = self._carriers.put(hom_module_space(self.n, m), m)
        return hit

    def _object(self, m):
        return space(m.p, self.carrier(m).dim)

    def _morphism(self, f, src, tgt):
        a, b = self.carrier(src), self.carrier(tgt)
        maps = _hom_maps(a, self.n.dim, src.dim)
        moved = _batched(identity(self.n.dim), maps, f, src.p)
        return _coords(b, moved.reshape(a.dim, self.n.dim, tgt.dim))


class HomInto(FunctorHandle):
    """Hom_A(−, N), contravariant, vector-space valued."""

    variance = CONTRA

    def __init__(self, n: FdModule):
        super().__init__(f"Hom(−, {n.name or 'N'})")
        self.n = n
        self._carriers = _Cache()

    def carrier(self, m: FdModule) -> Subspace:
        hit = self._carriers.get(m)
        if hit is None:
            hit = self._carriers.put(hom_module_space(m, self.n), m)
        return hit

    def _object(self, m):
        return space(m.p, self.carrier(m).dim)

    def _morphism(self, f, src, tgt):
        a, b = self.carrier(tgt), self.carrier(src)
        maps = _hom_maps(a, tgt.dim, self.n.dim)
        moved = _batched(f, maps, identity(self.n.dim), src.p)
        return _coords(b, moved.reshape(a.dim, src.dim, self.n.dim))


class HomK(FunctorHandle):
    """U(N, −) = Hom_K(N, −) : H-Mod → H̄-Mod."""

    def __init__(self, n: FdModule, nk: NormalHopfSubalgebra):
        super().__init__(f"Hom_K({n.name or 'N'}, −)")
        self.n, self.nk = n, nk
        self._homs = _Cache()

    def hom(self, m: FdModule) -> HomKModule:
        hit = self._homs.get(m)
        if hit is None:
            hit = self._homs.put(HomKModule(self.n, m, self.nk), m)
        return hit

    def _object(self, m):
        return self.hom(m).module

    def _morphism(self, f, src, tgt):
        return self.hom(src).postcompose(f, self.hom(tgt))


class CoHomK(FunctorHandle):
    """U(−, M) = Hom_K(−, M), contravariant."""

    variance = CONTRA

    def __init__(self, m: FdModule, nk: NormalHopfSubalgebra):
        super().__init__(f"Hom_K(−, {m.name or 'M'})")
        self.m, self.nk = m, nk
        self._homs = _Cache()

    def hom(self, n: FdModule) -> HomKModule:
        hit = self._homs.get(n)
        if hit is None:
            hit = self._homs.put(HomKModule(n, self.m, self.nk), n)
        return hit

    def _object(self, n):
        return self.hom(n).module

    def _morphism(self, f, src, tgt):
        return self.hom(tgt).precompose(f, self.hom(src))


class Tensor(FunctorHandle):
    """− ⊗ N with the diagonal action through the coproduct."""

    exact = True

    def __init__(self, n: FdModule, coproduct: np.ndarray):
        super().__init__(f"− ⊗ {n.name or 'N'}")
        self.n, self.coproduct = n, coproduct

    def _object(self, m):
        return tensor_over_field(m, self.n, self.coproduct)

    def _morphism(self, f, src, tgt):
        return np.kron(f, identity(self.n.dim))


class CoinducedAlong(FunctorHandle):
    """
    Hom_A(B, −) : A-Mod → B-Mod along an algebra map φ: A → B, with
    [x](b·f) = [x b]f. Right adjoint to restriction, so it keeps injectives.
    """

    def __init__(self, phi: FpMatrix, source: FdAlgebra, target: FdAlgebra):
        super().__init__(f"Hom_{source.name}({target.name}, −)")
        self.phi, self.source, self.target = phi, source, target
        self.b_as_a = restrict_along(regular_module(target), phi, source)
        self._carriers = _Cache()

    def carrier(self, m: FdModule) -> Subspace:
        hit = self._carriers.get(m)
        if hit is None:
            hit = self._carriers.put(hom_module_space(self.b_as_a, m), m)
        return hit

    def _object(self, m):
        c = self.carrier(m)
        p, b = m.p, self.target
        if c.dim == 0:
            return FdModule(b, np.zeros((b.dim, 0, 0), dtype=np.int64), name="0", check=False)
        acts = []
        for x in range(b.dim):
            right = b.right_mult(b.basis_vector(x))
            acts.append(c.coordinates(mat_mul(c.basis, np.kron(right.T, identity(m.dim)) % p, p)))
        return FdModule(b, np.stack(acts), name=f"Hom({b.name}, {m.name})")

    def _morphism(self, f, src, tgt):
        a, c = self.carrier(src), self.carrier(tgt)
        maps = _hom_maps(a, self.target.dim, src.dim)
        moved = _batched(identity(self.target.dim), maps, f, src.p)
        return _coords(c, moved.reshape(a.dim, self.target.dim, tgt.dim))


class Composite(FunctorHandle):
    """G ∘ F; contravariant exactly when one of the two is."""

    def __init__(self, f: FunctorHandle, g: FunctorHandle):
        super().__init__(f"{g.name} ∘ {f.name}")
        if g.is_contravariant:
            raise InvalidStructure("the outer functor of a composite must be covariant")
        self.f, self.g = f, g
        self.variance = f.variance
        self.left_exact = f.left_exact and g.left_exact
        self.exact = f.exact and g.exact

    def _object(self, m):
        return self.g.on_module(self.f.on_module(m))

    def _morphism(self, f, src, tgt):
        inner = self.f.on_map(f, src, tgt)
        a, b = (self.f.on_module(tgt), self.f.on_module(src)) if self.f.is_contravariant \
            else (self.f.on_module(src), self.f.on_module(tgt))
        return self.g.on_map(inner, a, b)


# ---------------------------------------------------------------------------
# Bifunctors
# ---------------------------------------------------------------------------

class BifunctorHandle:
    """
    F(X, X′), contravariant in X and covariant in X′. `fix_first(X)` and
    `fix_second(X′)` return the partial functors F(X, −) and F(−, X′).
    """

    def __init__(self, name: str):
        self.name = name
        self._objects = _Cache()
        self._partials = _Cache()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

    def _object(self, x: FdModule, y: FdModule) -> Tuple[FdModule, Subspace]:
        raise NotImplementedError

    def _carrier(self, x: FdModule, y: FdModule) -> Tuple[FdModule, Subspace]:
        hit = self._objects.get(x, y)
        if hit is None:
            hit = self._objects.put(self._object(x, y), x, y)
        return hit

    def on_objects(self, x: FdModule, y: FdModule) -> FdModule:
        return self._carrier(x, y)[0]

    def carrier(self, x: FdModule, y: FdModule) -> Subspace:
        """F(X, Y) as a subspace of vec Hom_k(X, Y)."""
        return self._carrier(x, y)[1]

    def _move(self, left: FpMatrix, right: FpMatrix, src: Tuple[FdModule, FdModule],
              tgt: Tuple[FdModule, FdModule]) -> FpMatrix:
        """Coordinates of maps h ↦ left @ h @ right from F(src) into F(tgt)."""
        (x, y), (x2, y2) = src, tgt
        a = self._carrier(x, y)[1]
        b = self._carrier(x2, y2)[1]
        if a.dim == 0:
            return zeros(0, b.dim)
        maps = _hom_maps(a, x.dim, y.dim)
        return _coords(b, _batched(left, maps, right, x.p).reshape(a.dim, x2.dim, y2.dim))

    def on_first(self, f: FpMatrix, src: FdModule, tgt: FdModule, y: FdModule) -> FpMatrix:
        """F(f, Y): F(tgt, Y) → F(src, Y) for f: src → tgt."""
        return self._move(f, identity(y.dim), (tgt, y), (src, y))

    def on_second(self, g: FpMatrix, x: FdModule, src: FdModule, tgt: FdModule) -> FpMatrix:
        """F(X, g): F(X, src) → F(X, tgt) for g: src → tgt."""
        return self._move(identity(x.dim), g, (x, src), (x, tgt))

    def fix_first(self, x: FdModule) -> FunctorHandle:
        hit = self._partials.get(x, self)
        if hit is None:
            hit = self._partials.put(_FirstFixed(self, x), x, self)
        return hit

    def fix_second(self, y: FdModule) -> FunctorHandle:
        hit = self._partials.get(self, y)
        if hit is None:
            hit = self._partials.put(_SecondFixed(self, y), self, y)
        return hit

    def check_biadditivity(self, firsts: Sequence[FdModule], seconds: Sequence[FdModule],
                           rng: np.random.Generator) -> List[CheckResult]:
        """F(f, Y) and F(X, g) commute for sampled endomorphisms; dims are additive in each slot."""
        results = []
        for x in firsts:
            for y in seconds:
                p = x.p
                f = random_module_map(x, x, rng)
                g = random_module_map(y, y, rng)
                one = mat_mul(self.on_first(f, x, x, y), self.on_second(g, x, y, y), p)
                two = mat_mul(self.on_second(g, x, y, y), self.on_first(f, x, x, y), p)
                results.append(CheckResult(name="interchange", passed=bool(np.array_equal(one, two)),
                                           module="functors", details={"bifunctor": self.name}))
        for x in firsts:
            for y, y2 in zip(seconds, seconds[1:]):
                total = direct_sum([y, y2])[0]
                ok = self.on_objects(x, total).dim == self.on_objects(x, y).dim + self.on_objects(x, y2).dim
                results.append(CheckResult(name="additive-second", passed=bool(ok), module="functors",
                                           details={"bifunctor": self.name}))
        for y in seconds:
            for x, x2 in zip(firsts, firsts[1:]):
                total = direct_sum([x, x2])[0]
                ok = self.on_objects(total, y).dim == self.on_objects(x, y).dim + self.on_objects(x2, y).dim
                results.append(CheckResult(name="additive-first", passed=bool(ok), module="functors",
                                           details={"bifunctor": self.name}))
        return results


class _FirstFixed(FunctorHandle):
    def __init__(self, b: BifunctorHandle, x: FdModule):
        super().__init__(f"{b.name}({x.name or 'X'}, −)")
        self.b, self.x = b, x

    def _object(self, m):
        return self.b.on_objects(self.x, m)

    def _morphism(self, f, src, tgt):
        return self.b.on_second(f, self.x, src, tgt)


class _SecondFixed(FunctorHandle):
    variance = CONTRA

    def __init__(self, b: BifunctorHandle, y: FdModule):
        super().__init__(f"{b.name}(−, {y.name or 'Y'})")
        self.b, self.y = b, y

    def _object(self, m):
        return self.b.on_objects(m, self.y)

    def _morphism(self, f, src, tgt):
        return self.b.on_first(f, src, tgt, self.y)


class HomBifunctor(BifunctorHandle):
    """Hom_A(−, =), vector-space valued; with `over`, Hom over the subalgebra K it spans."""

    def __init__(self, algebra: FdAlgebra, over: Optional[np.ndarray] = None, name: Optional[str] = None):
        super().__init__(name or (f"Hom_{algebra.name}" if over is None else f"Hom_{algebra.name}|K"))
        self.algebra = algebra
        self.over = over

    def _object(self, x, y):
        if x.algebra is not self.algebra or y.algebra is not self.algebra:
            raise DimensionMismatch(f"{x!r}, {y!r} are not both {self.algebra.name}-modules")
        c = hom_module_space(x, y, over=self.over)
        return space(x.p, c.dim), c


class HomKBifunctor(BifunctorHandle):
    """U(−, =) = Hom_K(−, =) with values in H̄-modules."""

    def __init__(self, nk: NormalHopfSubalgebra):
        super().__init__("Hom_K")
        self.nk = nk

    def _object(self, x, y):
        hk = HomKModule(x, y, self.nk)
        return hk.module, hk.carrier


# ---------------------------------------------------------------------------
# Natural transformations of bifunctors
# ---------------------------------------------------------------------------

class BifunctorTransformation:
    """η: F → F̃ between bifunctors on the same categories, by its components η_{X,Y}."""

    def __init__(self, src: BifunctorHandle, tgt: BifunctorHandle, name: Optional[str] = None):
        self.src, self.tgt = src, tgt
        self.name = name or f"{src.name} → {tgt.name}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

    def component(self, x: FdModule, y: FdModule) -> FpMatrix:
        raise NotImplementedError

    def check_naturality(self, firsts: Sequence[FdModule], seconds: Sequence[FdModule],
                         rng: np.random.Generator) -> List[CheckResult]:
        """η commutes with F(f, Y) and F(X, g) for sampled endomorphisms f, g."""
        results = []
        for x in firsts:
            for y in seconds:
                p = x.p
                eta = self.component(x, y)
                f = random_module_map(x, x, rng)
                g = random_module_map(y, y, rng)
                first = np.array_equal(mat_mul(self.src.on_first(f, x, x, y), eta, p),
                                       mat_mul(eta, self.tgt.on_first(f, x, x, y), p))
                second = np.array_equal(mat_mul(self.src.on_second(g, x, y, y), eta, p),
                                        mat_mul(eta, self.tgt.on_second(g, x, y, y), p))
                results.append(CheckResult(name="transformation-natural", passed=bool(first and second),
                                           module="functors", details={"transformation": self.name}))
        return results


class HomInclusion(BifunctorTransformation):
    """
    Hom_A(−, =) → Hom_K(−, =) for K ⊆ A. Both carriers sit in vec Hom_k(X, Y),
    so each component is the inclusion of one carrier in the other.
    """

    def component(self, x, y):
        a = self.src.carrier(x, y)
        b = self.tgt.carrier(x, y)
        return _coords(b, _hom_maps(a, x.dim, y.dim))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

FUNCTOR_NAMES = ("identity", "invariants", "fixed_points", "quotient_invariants",
                 "hom_from", "hom_into", "tensor")


def functor_from_name(name: str, algebra: FdAlgebra, nk: Optional[NormalHopfSubalgebra] = None,
                      module: Optional[FdModule] = None, coproduct: Optional[np.ndarray] = None) -> FunctorHandle:
    """
    Named functors for run descriptors. `hom_from`, `hom_into` and `tensor`
    take `module` (default: the trivial module); `fixed_points` and
    `quotient_invariants` need the normal subalgebra.
    """
    key = name.split(":", 1)[0]
    if key not in FUNCTOR_NAMES:
        raise ValueError(f"Unknown functor {name!r}; expected one of {FUNCTOR_NAMES}")
    if key in ("fixed_points", "quotient_invariants") and nk is None:
        raise ValueError(f"functor {name!r} needs a subgroup")
    n = module if module is not None else trivial_module(algebra)
    if key == "identity":
        return Identity()
    if key == "invariants":
        return Invariants(algebra)
    if key == "fixed_points":
        return FixedPoints(nk)
    if key == "quotient_invariants":
        return Invariants(nk.quotient.hbar.algebra)
    if key == "hom_from":
        return HomFrom(n)
    if key == "hom_into":
        return HomInto(n)
    if coproduct is None:
        raise ValueError("tensor functor needs a coproduct")
    return Tensor(n, coproduct)
