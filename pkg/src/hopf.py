"""
hopf.py — Hopf algebras, normal Hopf subalgebras, quotients and the
module structures on Hom spaces

Structure maps are stored in coordinates:
  counit[x]        = ε(b_x)
  coproduct[x,a,b] = coefficient of b_a ⊗ b_b in Δ(b_x)
  antipode[x, :]   = coordinates of S(b_x)
Sweedler sums Σ u_i ⊗ v_i are never split into components; every formula
below is a contraction against coproduct[x].

Usage:
  H = group_hopf(cyclic_group(4), FieldSpec(2))
  nk = NormalHopfSubalgebra(H, subgroup_span(H, [0, 2]))
  hk = hom_k_module(regular_module(H.algebra), trivial_module(H.algebra), nk)
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import (
    FdAlgebra,
    FdModule,
    GroupTable,
    check_subalgebra,
    fixed_points,
    group_algebra,
    hom_module_space,
    random_module_map,
    regular_module,
    restrict_along,
    tensor_over_field,
)
from src.checks import CheckResult
from src.errors import (
    ActionNotWellDefined,
    InvalidStructure,
    InverseCheckFailed,
    NotContained,
    NotNormal,
    NotStable,
)
from src.linalg import (
    FieldSpec,
    FpMatrix,
    Subquotient,
    Subspace,
    identity,
    kernel_basis,
    mat_mul,
    zeros,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------

class HopfAlgebra:
    def __init__(
        self,
        algebra: FdAlgebra,
        counit: np.ndarray,
        coproduct: np.ndarray,
        antipode: np.ndarray,
        check: bool = True,
    ):
        p = algebra.p
        d = algebra.dim
        self.algebra = algebra
        self.p = p
        self.counit = np.mod(np.asarray(counit, dtype=np.int64).reshape(d), p)
        self.coproduct = np.mod(np.asarray(coproduct, dtype=np.int64).reshape(d, d, d), p)
        self.antipode = np.mod(np.asarray(antipode, dtype=np.int64).reshape(d, d), p)
        if check:
            failed = [r for r in HopfAxiomChecker(self).check_axioms() if not r.passed]
            if failed:
                raise InvalidStructure(f"Hopf axioms fail for {algebra.name}: {', '.join(r.name for r in failed)}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def coproduct_of(self, x: np.ndarray) -> np.ndarray:
        """Δ of an element, as a dim × dim coefficient matrix."""
        return np.einsum("x,xab->ab", x, self.coproduct) % self.p

    def antipode_of(self, x: np.ndarray) -> np.ndarray:
        return mat_mul(np.atleast_2d(x), self.antipode, self.p)[0]


def group_hopf(g: GroupTable, field: FieldSpec, algebra: Optional[FdAlgebra] = None) -> HopfAlgebra:
    """RG with Δg = g⊗g, Sg = g⁻¹, εg = 1; `algebra` reuses an existing RG."""
    algebra = algebra if algebra is not None else group_algebra(g, field)
    n = g.order
    coproduct = np.zeros((n, n, n), dtype=np.int64)
    antipode = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        coproduct[x, x, x] = 1
        antipode[x, g.inverse(x)] = 1
    return HopfAlgebra(algebra, np.ones(n, dtype=np.int64), coproduct, antipode)


class HopfAxiomChecker:
    """
    Exhaustive checks on basis elements; linearity extends them.

    check_axioms covers the defining axioms (counit on both sides,
    coassociativity, antipode on both sides, S² = id, Δ and ε
    multiplicative); check_identities covers the derived identities.
    """

    def __init__(self, hopf: HopfAlgebra):
        self.h = hopf
        self.p = hopf.p
        self.C = hopf.algebra.mult
        self.D = hopf.coproduct
        self.S = hopf.antipode
        self.eps = hopf.counit
        self.unit = hopf.algebra.unit

    def _result(self, name: str, ok: bool, description: str) -> CheckResult:
        return CheckResult(name=name, passed=bool(ok), description=description, module="hopf")

    def _eq(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(np.array_equal(np.mod(a, self.p), np.mod(b, self.p)))

    # -----------------------------------------------------------------------
    # Axioms
    # -----------------------------------------------------------------------

    def check_axioms(self) -> List[CheckResult]:
        D, C, S, eps, p = self.D, self.C, self.S, self.eps, self.p
        d = self.h.dim
        eye = identity(d)
        eps_one = np.outer(eps, self.unit)
        out = [
            self._result("counit-left", self._eq(np.einsum("xab,a->xb", D, eps), eye),
                         "Σ ε(u_i) v_i = x"),
            self._result("counit-right", self._eq(np.einsum("xab,b->xa", D, eps), eye),
                         "Σ u_i ε(v_i) = x"),
            self._result("coassociativity",
                         self._eq(np.einsum("xab,acd->xcdb", D, D), np.einsum("xab,bcd->xacd", D, D)),
                         "(Δ⊗1)Δ = (1⊗Δ)Δ"),
            self._result("antipode-left", self._eq(np.einsum("xab,as,sbl->xl", D, S, C), eps_one),
                         "Σ S(u_i) v_i = ε(x)1"),
            self._result("antipode-right", self._eq(np.einsum("xab,bs,asl->xl", D, S, C), eps_one),
                         "Σ u_i S(v_i) = ε(x)1"),
            self._result("involutive", self._eq(mat_mul(S, S, p), eye), "S² = id"),
            self._result("coproduct-multiplicative", self._coproduct_multiplicative(),
                         "Δ(xy) = Δx·Δy and Δ1 = 1⊗1"),
            self._result("counit-multiplicative",
                         self._eq(np.einsum("ijl,l->ij", C, eps), np.outer(eps, eps))
                         and int(eps @ self.unit) % p == 1,
                         "ε(xy) = ε(x)ε(y) and ε(1) = 1"),
        ]
        return out

    def _coproduct_multiplicative(self) -> bool:
        D, C = self.D, self.C
        lhs = np.einsum("ijl,lef->ijef", C, D)
        rhs = np.einsum("iab,jcd,ace,bdf->ijef", D, D, C, C, optimize=True)
        unit_ok = self._eq(np.einsum("x,xab->ab", self.unit, D), np.outer(self.unit, self.unit))
        return self._eq(lhs, rhs) and unit_ok

    # -----------------------------------------------------------------------
    # Derived identities
    # -----------------------------------------------------------------------

    def check_identities(self) -> List[CheckResult]:
        D, C, S, eps, p = self.D, self.C, self.S, self.eps, self.p
        eps_one = np.outer(eps, self.unit)
        # (b_a · b_y · S(b_b) · b_c) for all a, y, b, c
        chain = np.einsum("ayl,bs,lsm->aybm", C, S, C, optimize=True) % p
        chain = np.einsum("aybm,mcn->aybcn", chain, C, optimize=True) % p
        # (b_a · S(b_b) · b_y · b_c)
        chain2 = np.einsum("abl,lym->abym", np.einsum("bs,asl->abl", S, C), C, optimize=True) % p
        chain2 = np.einsum("abym,mcn->abycn", chain2, C, optimize=True) % p
        left_iter = np.einsum("xmc,mab->xabc", D, D)
        right_iter = np.einsum("xam,mbc->xabc", D, D)
        return [
            self._result("(1) coproduct-multiplicative", self._coproduct_multiplicative(), "Δ(xy) = Δx·Δy"),
            self._result("(2) antipode-unit", self._eq(mat_mul(self.unit.reshape(1, -1), S, p)[0], self.unit),
                         "S(1) = 1"),
            self._result("(3) antipode-antimultiplicative",
                         self._eq(np.einsum("ijl,ls->ijs", C, S),
                                  np.einsum("ja,ib,abs->ijs", S, S, C, optimize=True)),
                         "S(xy) = S(y)S(x)"),
            self._result("(4) counit-antipode", self._eq(S @ eps, eps), "ε∘S = ε"),
            self._result("(5) antipode-coproduct",
                         self._eq(np.einsum("xab,ac,bd->xcd", D, S, S, optimize=True),
                                  np.einsum("xy,ydc->xcd", S, D)),
                         "Σ S(u_i)⊗S(v_i) = Σ S(x)v_i ⊗ S(x)u_i"),
            self._result("(6) adjoint-left", self._eq(np.einsum("xabc,aybcn->xyn", left_iter, chain, optimize=True), C),
                         "x·y = Σ u_j(u_i)·y·S(v_j(u_i))·v_i"),
            self._result("(6') adjoint-right",
                         self._eq(np.einsum("xabc,abycn->yxn", right_iter, chain2, optimize=True), C),
                         "y·x = Σ u_i·S(u_j(v_i))·y·v_j(v_i)"),
            self._result("(7) twisted-antipode-left", self._eq(np.einsum("xab,as,bsl->xl", D, S, C), eps_one),
                         "Σ v_i·S(u_i) = ε(x)1"),
            self._result("(7') twisted-antipode-right", self._eq(np.einsum("xab,bs,sal->xl", D, S, C), eps_one),
                         "Σ S(v_i)·u_i = ε(x)1"),
        ]

    def check_all(self) -> List[CheckResult]:
        return self.check_axioms() + self.check_identities()


def check_basic_identities(h: HopfAlgebra) -> List[CheckResult]:
    return HopfAxiomChecker(h).check_identities()


# ---------------------------------------------------------------------------
# Normal Hopf subalgebras and quotients
# ---------------------------------------------------------------------------

def subgroup_span(h: HopfAlgebra, elements: Sequence[int]) -> np.ndarray:
    """Coordinates of the group elements spanning RN inside RG."""
    return np.stack([h.algebra.basis_vector(g) for g in elements])


def _tensor_subspace(left: np.ndarray, right: np.ndarray, p: int) -> Subspace:
    vecs = np.stack([np.kron(a, b) for a in left for b in right]) if len(left) and len(right) \
        else np.zeros((0, left.shape[1] * right.shape[1]), dtype=np.int64)
    return Subspace.span(vecs, p, left.shape[1] * right.shape[1])


def adjoint_actions(h: HopfAlgebra, x: np.ndarray, a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(Σ u_i a S(v_i), Σ S(u_i) a v_i) for Δx = Σ u_i ⊗ v_i."""
    p, C, S = h.p, h.algebra.mult, h.antipode
    dx = h.coproduct_of(x)
    left_a = np.einsum("j,cjl->cl", a, C) % p              # b_c · a
    first = np.einsum("cm,ds,msl->cdl", left_a, S, C) % p   # b_c · a · S(b_d)
    right_a = np.einsum("j,jdl->dl", a, C) % p             # a · b_d
    second = np.einsum("cs,dm,sml->cdl", S, right_a, C) % p  # S(b_c) · a · b_d
    return (np.einsum("cd,cdl->l", dx, first) % p, np.einsum("cd,cdl->l", dx, second) % p)


class NormalHopfSubalgebra:
    """K ⊆ H given by a spanning set; closure, KΔ ⊆ K⊗K, KS ⊆ K and normality verified."""

    def __init__(self, hopf: HopfAlgebra, span: np.ndarray):
        self.hopf = hopf
        p = hopf.p
        self.sub = check_subalgebra(hopf.algebra, span)
        basis = self.sub.basis
        kk = _tensor_subspace(basis, basis, p)
        for k in basis:
            if not kk.contains_vectors(hopf.coproduct_of(k).reshape(1, -1)):
                raise NotNormal("K is not closed under the coproduct")
        if not self.sub.contains_vectors(mat_mul(basis, hopf.antipode, p)):
            raise NotNormal("K is not closed under the antipode")
        for x in range(hopf.dim):
            ex = hopf.algebra.basis_vector(x)
            for a in basis:
                first, second = adjoint_actions(hopf, ex, a)
                if not (self.sub.contains_vectors(first) and self.sub.contains_vectors(second)):
                    raise NotNormal(f"adjoint action of basis element {x} leaves K")
        self.verified = True
        logger.debug(f"normal Hopf subalgebra of dim {self.sub.dim} in {hopf.algebra.name}")

    @property
    def span(self) -> np.ndarray:
        return self.sub.basis

    @property
    def dim(self) -> int:
        return self.sub.dim

    def augmentation_ideal(self) -> Subspace:
        """K⁺ = ker ε restricted to K."""
        eps_vals = (self.sub.basis @ self.hopf.counit) % self.hopf.p
        rel = kernel_basis(eps_vals.reshape(-1, 1), self.hopf.p)
        return Subspace.span(mat_mul(rel.basis, self.sub.basis, self.hopf.p), self.hopf.p, self.hopf.dim)

    @property
    def quotient(self) -> "QuotientHopf":
        if not hasattr(self, "_quotient"):
            self._quotient = QuotientHopf(self)
        return self._quotient


def _group_from_structure(mult: np.ndarray, unit: np.ndarray, name: str) -> Optional[GroupTable]:
    """Group table when every basis product is a basis element."""
    d = mult.shape[0]
    if not np.all((mult.sum(axis=2) == 1) & (mult.max(axis=2) == 1)):
        return None
    if unit.sum() != 1:
        return None
    table = tuple(tuple(int(np.argmax(mult[i, j])) for j in range(d)) for i in range(d))
    try:
        return GroupTable(table, int(np.argmax(unit)), name)
    except InvalidStructure:
        return None


class QuotientHopf:
    """
    H̄ = H/HK⁺ with lifts of the quotient basis and the projection H → H̄.

    The quotient basis is the deterministic complement of HK⁺ in H made of
    earliest standard basis vectors; for group algebras these are coset
    representatives.
    """

    def __init__(self, nk: NormalHopfSubalgebra):
        h = nk.hopf
        p = h.p
        self.source = h
        kplus = nk.augmentation_ideal()
        prods = [h.algebra.multiply(h.algebra.basis_vector(x), k) for x in range(h.dim) for k in kplus.basis]
        self.ideal = Subspace.span(np.array(prods).reshape(-1, h.dim), p, h.dim) if prods \
            else Subspace.zero(h.dim, p)
        self._check_hopf_ideal(kplus)
        sq = Subquotient(Subspace.full(h.dim, p), self.ideal)
        self.lifts = sq.complement                      # dim H̄ × dim H
        self.projection = sq.coords(identity(h.dim))    # dim H × dim H̄
        self._subquotient = sq
        n = self.lifts.shape[0]

        mult = np.zeros((n, n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                prod = h.algebra.multiply(self.lifts[a], self.lifts[b])
                mult[a, b] = mat_mul(prod.reshape(1, -1), self.projection, p)[0]
        unit = mat_mul(h.algebra.unit.reshape(1, -1), self.projection, p)[0]
        counit = (self.lifts @ h.counit) % p
        coproduct = np.stack([
            mat_mul(mat_mul(self.projection.T, h.coproduct_of(self.lifts[a]), p), self.projection, p)
            for a in range(n)
        ])
        antipode = mat_mul(mat_mul(self.lifts, h.antipode, p), self.projection, p)
        name = f"{h.algebra.name}//K"
        group = _group_from_structure(mult, unit, name)
        algebra = FdAlgebra(h.algebra.field, mult, unit, name=name, augmentation=counit, group=group)
        self.hbar = HopfAlgebra(algebra, counit, coproduct, antipode)
        logger.info(f"quotient Hopf algebra {name}: dim {n} (ideal HK⁺ of dim {self.ideal.dim})")

    def _check_hopf_ideal(self, kplus: Subspace) -> None:
        h, p, ideal = self.source, self.source.p, self.ideal
        right = [h.algebra.multiply(k, h.algebra.basis_vector(x)) for k in kplus.basis for x in range(h.dim)]
        if right and Subspace.span(np.array(right), p, h.dim) != ideal:
            raise NotNormal("HK⁺ differs from K⁺H")
        eye = identity(h.dim)
        both = _tensor_subspace(ideal.basis, eye, p).sum(_tensor_subspace(eye, ideal.basis, p)) \
            if ideal.dim else Subspace.zero(h.dim ** 2, p)
        for v in ideal.basis:
            if not both.contains_vectors(h.coproduct_of(v).reshape(1, -1)):
                raise NotNormal("HK⁺ is not a coideal")
        if ideal.dim and np.any((ideal.basis @ h.counit) % p):
            raise NotNormal("ε does not vanish on HK⁺")
        if ideal.dim and not ideal.contains_vectors(mat_mul(ideal.basis, h.antipode, p)):
            raise NotNormal("HK⁺ is not stable under S")

    def project(self, x: np.ndarray) -> np.ndarray:
        return mat_mul(np.atleast_2d(x), self.projection, self.source.p)[0]


# ---------------------------------------------------------------------------
# Module structures
# ---------------------------------------------------------------------------

def _batched(left: FpMatrix, mats: np.ndarray, right: FpMatrix, p: int) -> np.ndarray:
    """left @ M @ right for a stack of matrices M."""
    if mats.shape[0] == 0:
        return np.zeros((0, left.shape[0], right.shape[1]), dtype=np.int64)
    k, n, m = mats.shape
    step = np.mod(np.rint(np.matmul(left.astype(np.float64), mats.astype(np.float64))).astype(np.int64), p)
    step = np.mod(np.rint(np.matmul(step.astype(np.float64), right.astype(np.float64))).astype(np.int64), p)
    return step


def hom_action(h: HopfAlgebra, n: FdModule, m: FdModule, x: np.ndarray, homs: np.ndarray) -> np.ndarray:
    """
    x·f for a stack of linear maps f: n → m (shape k × dim n × dim m),
    with [v](x·f) = Σ u_i·[S(v_i)·v]f, i.e. Σ L_n(S b_b) @ F @ L_m(b_a).
    """
    p = h.p
    dx = h.coproduct_of(x)
    out = np.zeros_like(homs)
    for a, b in zip(*np.nonzero(dx)):
        s_b = h.antipode[b]
        out = (out + int(dx[a, b]) * _batched(n.act(s_b), homs, m.action[a], p)) % p
    return out


class HomKModule:
    """
    Hom_K(n, m) with its H̄-module structure.

    `carrier` is the subspace of vec Hom_k(n, m); `module` is the H̄-module
    whose coordinates are taken against carrier.basis.
    """

    def __init__(self, n: FdModule, m: FdModule, nk: NormalHopfSubalgebra):
        self.n, self.m, self.nk = n, m, nk
        h = nk.hopf
        p = h.p
        quotient = nk.quotient
        self.carrier = hom_module_space(n, m, over=nk.span)
        basis3 = self.basis_maps()
        acts = []
        for lift in quotient.lifts:
            moved = hom_action(h, n, m, lift, basis3).reshape(self.carrier.dim, n.dim * m.dim)
            try:
                acts.append(self.carrier.coordinates(moved))
            except NotContained as exc:
                raise ActionNotWellDefined("H does not preserve Hom_K; K is not normal") from exc
        for v in quotient.ideal.basis:
            if np.any(hom_action(h, n, m, v, basis3)):
                raise ActionNotWellDefined("HK⁺ acts nontrivially on Hom_K")
        k = self.carrier.dim
        action = np.stack(acts) if acts else np.zeros((quotient.hbar.dim, k, k), dtype=np.int64)
        self.module = FdModule(quotient.hbar.algebra, action, name=f"Hom_K({n.name}, {m.name})", check=False)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def basis_maps(self) -> np.ndarray:
        return self.carrier.basis.reshape(self.carrier.dim, self.n.dim, self.m.dim)

    def coordinates(self, maps: np.ndarray) -> FpMatrix:
        return self.carrier.coordinates(np.asarray(maps).reshape(len(maps), self.n.dim * self.m.dim))

    def postcompose(self, mu: FpMatrix, target: "HomKModule") -> FpMatrix:
        """Matrix of f ↦ f μ for μ: m → target.m."""
        p = self.m.p
        moved = _batched(identity(self.n.dim), self.basis_maps(), mu, p)
        return target.coordinates(moved) if self.dim else np.zeros((0, target.dim), dtype=np.int64)

    def precompose(self, nu: FpMatrix, target: "HomKModule") -> FpMatrix:
        """Matrix of f ↦ ν f for ν: target.n → n."""
        p = self.m.p
        moved = _batched(nu, self.basis_maps(), identity(self.m.dim), p)
        return target.coordinates(moved) if self.dim else np.zeros((0, target.dim), dtype=np.int64)


def hom_k_module(n: FdModule, m: FdModule, nk: NormalHopfSubalgebra) -> HomKModule:
    return HomKModule(n, m, nk)


class FixedPointModule:
    """M^K with its H̄-module structure; `inclusion` maps M^K into M."""

    def __init__(self, m: FdModule, nk: NormalHopfSubalgebra):
        quotient = nk.quotient
        p = m.p
        self.m, self.nk = m, nk
        self.carrier = fixed_points(m, nk.span, nk.hopf.counit)
        self.inclusion = self.carrier.basis.copy()
        acts = []
        for lift in quotient.lifts:
            moved = mat_mul(self.carrier.basis, m.act(lift), p)
            if not self.carrier.contains_vectors(moved):
                raise NotStable("M^K is not stable under H; K is not normal")
            acts.append(self.carrier.coordinates(moved))
        for v in quotient.ideal.basis:
            if np.any(mat_mul(self.carrier.basis, m.act(v), p)):
                raise NotStable("HK⁺ does not annihilate M^K")
        k = self.carrier.dim
        action = np.stack(acts) if acts else np.zeros((quotient.hbar.dim, k, k), dtype=np.int64)
        self.module = FdModule(quotient.hbar.algebra, action, name=f"{m.name}^K", check=False)

    def induced(self, f: FpMatrix, target: "FixedPointModule") -> FpMatrix:
        return target.carrier.coordinates(mat_mul(self.inclusion, f, self.m.p))


def fixed_points_module(m: FdModule, nk: NormalHopfSubalgebra) -> FixedPointModule:
    return FixedPointModule(m, nk)


# ---------------------------------------------------------------------------
# Φ / Ψ and α / β
# ---------------------------------------------------------------------------

def phi_psi(m: FdModule, nk: NormalHopfSubalgebra) -> Tuple[FpMatrix, FpMatrix]:
    """
    Φ: Hom_K(H, M) → Hom_R(H̄, M), Φ(f)(x̄) = Σ u_i·f(S(v_i)), and its
    inverse Ψ(g)(x) = Σ v_j·g(S(u_j)‾). Matrices act on carrier
    coordinates (Hom_K side) and on row-major vec coordinates (Hom_R side).
    """
    h = nk.hopf
    p = h.p
    q = nk.quotient
    hk = HomKModule(regular_module(h.algebra), m, nk)
    nbar, dm = q.hbar.dim, m.dim
    d_lifts = np.einsum("ax,xbc->abc", q.lifts, h.coproduct) % p

    rows = []
    for F in hk.basis_maps():
        sf = mat_mul(h.antipode, F, p)
        tmp = np.einsum("abc,cm->abm", d_lifts, sf) % p
        rows.append((np.einsum("abm,bmk->ak", tmp, m.action) % p).reshape(-1))
    phi = np.array(rows, dtype=np.int64).reshape(hk.dim, nbar * dm)

    s_proj = mat_mul(h.antipode, q.projection, p)
    images = []
    for idx in range(nbar * dm):
        G = np.zeros(nbar * dm, dtype=np.int64)
        G[idx] = 1
        G = G.reshape(nbar, dm)
        sg = mat_mul(s_proj, G, p)
        tmp = np.einsum("ebc,bm->ecm", h.coproduct, sg) % p
        images.append((np.einsum("ecm,cmk->ek", tmp, m.action) % p).reshape(-1))
    try:
        psi = hk.carrier.coordinates(np.array(images, dtype=np.int64).reshape(nbar * dm, h.dim * dm))
    except NotContained as exc:
        raise InverseCheckFailed("Ψ(g) is not K-linear") from exc

    if not (np.array_equal(mat_mul(phi, psi, p), identity(hk.dim))
            and np.array_equal(mat_mul(psi, phi, p), identity(nbar * dm))):
        raise InverseCheckFailed(f"Φ and Ψ are not mutually inverse (dims {hk.dim}, {nbar * dm})")

    # H̄-linearity: (ȳ·g)(x̄) = g(x̄ȳ)
    for a in range(nbar):
        right = q.hbar.algebra.right_mult(q.hbar.algebra.basis_vector(a))
        act_r = np.kron(right.T, identity(dm)) % p
        if not np.array_equal(mat_mul(hk.module.action[a], phi, p), mat_mul(phi, act_r, p)):
            raise InverseCheckFailed(f"Φ is not H̄-linear at basis element {a}")
    logger.debug(f"Φ/Ψ verified on Hom_K(H, {m.name}) of dim {hk.dim}")
    return phi, psi


@dataclass
class AdjunctionData:
    alpha: FpMatrix
    beta: FpMatrix
    left_dim: int
    right_dim: int
    naturality: List[CheckResult]
    left_space: Optional[Subspace] = None
    right_space: Optional[Subspace] = None


def _tensor_with_quotient(pmod: FdModule, q: FdModule, nk: NormalHopfSubalgebra) -> FdModule:
    h = nk.hopf
    p_as_h = restrict_along(pmod, nk.quotient.projection, h.algebra)
    return tensor_over_field(p_as_h, q, h.coproduct)


def adjunction_alpha_beta(
    pmod: FdModule,
    q: FdModule,
    m: FdModule,
    nk: NormalHopfSubalgebra,
    rng: Optional[np.random.Generator] = None,
    samples: int = 5,
) -> AdjunctionData:
    """
    α: Hom_H̄(P, Hom_K(Q, M)) → Hom_H(P ⊗ Q, M), α(f)(p⊗q) = (pf)(q), with
    inverse β; naturality squares are checked for sampled maps in each slot.
    """
    p = m.p
    rng = rng if rng is not None else np.random.default_rng(0)
    hk = HomKModule(q, m, nk)
    left = hom_module_space(pmod, hk.module)
    pq = _tensor_with_quotient(pmod, q, nk)
    right = hom_module_space(pq, m)
    dp, dq, dm = pmod.dim, q.dim, m.dim
    W = hk.basis_maps()

    def alpha_of(f: np.ndarray) -> np.ndarray:
        return (np.einsum("pt,tqm->pqm", f, W) % p).reshape(dp * dq, dm)

    def beta_of(g: np.ndarray) -> np.ndarray:
        return hk.coordinates(g.reshape(dp, dq, dm)) if dp else np.zeros((0, hk.dim), dtype=np.int64)

    left_maps = left.basis.reshape(left.dim, dp, hk.dim)
    right_maps = right.basis.reshape(right.dim, dp * dq, dm)
    try:
        alpha = right.coordinates(
            np.array([alpha_of(f).reshape(-1) for f in left_maps]).reshape(left.dim, dp * dq * dm))
        beta = left.coordinates(np.array([beta_of(g).reshape(-1) for g in right_maps]).reshape(right.dim, dp * hk.dim))
    except NotContained as exc:
        raise InverseCheckFailed("α or β leaves the target Hom space") from exc
    if not (np.array_equal(mat_mul(alpha, beta, p), identity(left.dim))
            and np.array_equal(mat_mul(beta, alpha, p), identity(right.dim))):
        raise InverseCheckFailed(f"α and β are not mutually inverse (dims {left.dim}, {right.dim})")

    checks: List[CheckResult] = []
    for s in range(samples):
        h_p = random_module_map(pmod, pmod, rng)
        nu = random_module_map(q, q, rng)
        mu = random_module_map(m, m, rng)
        ok_p = ok_q = ok_m = True
        for f in left_maps:
            g = alpha_of(f)
            # P slot: precompose with h
            ok_p &= np.array_equal(alpha_of(mat_mul(h_p, f, p)), mat_mul(np.kron(h_p, identity(dq)), g, p))
            # Q slot: f ↦ (p ↦ ν∘(pf))
            f_nu = hk.coordinates(_batched(nu, np.einsum("pt,tqm->pqm", f, W) % p, identity(dm), p)) \
                if dp else f
            ok_q &= np.array_equal(alpha_of(f_nu), mat_mul(np.kron(identity(dp), nu), g, p))
            # M slot: f ↦ (p ↦ (pf)∘μ)
            f_mu = hk.coordinates(_batched(identity(dq), np.einsum("pt,tqm->pqm", f, W) % p, mu, p)) \
                if dp else f
            ok_m &= np.array_equal(alpha_of(f_mu), mat_mul(g, mu, p))
        for slot, ok in (("P", ok_p), ("Q", ok_q), ("M", ok_m)):
            checks.append(CheckResult(name=f"naturality-{slot}", passed=bool(ok), module="hopf",
                                      details={"sample": s}))
    logger.debug(f"α/β verified: Hom spaces of dim {left.dim}")
    return AdjunctionData(alpha, beta, left.dim, right.dim, checks, left, right)
