"""
algebra.py — Finite-dimensional algebras, modules and module-level functors

Algebras are explicit bases with structure constants mult[i, j, :] = b_i·b_j.
Modules are LEFT modules given by one action matrix per basis element, in
the row convention of src.linalg: action[i] is the matrix of m ↦ b_i·m, so
(b_i b_j)·m has matrix action[j] @ action[i].

Injective modules only ever arise as coinduced modules Hom_k(A, V) (or
direct sums of them); such modules remember their blocks so that module
maps into them can be built from linear maps into V.

Usage:
  from src.algebra import group_algebra, regular_module, trivial_module
  A = group_algebra(cyclic_group(4), FieldSpec(2))
  M = trivial_module(A)
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.config import MODULE_CHECK_LIMIT
from src.errors import (
    DimensionMismatch,
    InvalidStructure,
    LiftFailed,
    NotLocal,
    NotNilpotent,
    NotStable,
    SubalgebraNotUnital,
)
from src.linalg import (
    FieldSpec,
    FpMatrix,
    Solver,
    Subquotient,
    Subspace,
    as_matrix,
    direct_sum_matrix,
    identity,
    image_basis,
    kernel_basis,
    mat_mul,
    zeros,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    """Cayley table on elements 0..n-1: table[g][h] = g·h."""

    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        t = np.array(self.table, dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), dtype=np.int64)
        if n == 0:
            raise InvalidStructure("a group needs at least one element")
        for row in list(t) + list(t.T):
            if sorted(row.tolist()) != list(range(n)):
                raise InvalidStructure(f"Cayley table of {self.name or 'group'} is not a Latin square")
        if not (np.array_equal(t[self.identity], np.arange(n)) and np.array_equal(t[:, self.identity], np.arange(n))):
            raise InvalidStructure(f"element {self.identity} is not neutral")
        # (gh)k = g(hk) for all triples
        if not np.array_equal(t[t, :], t[:, t]):
            raise InvalidStructure(f"Cayley table of {self.name or 'group'} is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.table[g].index(self.identity)

    def is_subgroup(self, elements: Sequence[int]) -> bool:
        s = set(elements)
        return self.identity in s and all(self.mul(g, self.inverse(h)) in s for g in s for h in s)

    def is_normal(self, elements: Sequence[int]) -> bool:
        s = set(elements)
        return self.is_subgroup(elements) and all(
            self.mul(self.mul(g, n), self.inverse(g)) in s for g in range(self.order) for n in s
        )

    def cosets(self, elements: Sequence[int]) -> List[Tuple[int, ...]]:
        """Left cosets gN, each sorted, listed by smallest representative."""
        seen, out = set(), []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mul(g, n) for n in elements))
            seen.update(coset)
            out.append(coset)
        return out


def cyclic_group(n: int) -> GroupTable:
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, f"C{n}")


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Elements (a, b) encoded as a·|h| + b."""
    m = h.order
    table = tuple(
        tuple(g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(g.order * m))
        for x in range(g.order * m)
    )
    return GroupTable(table, g.identity * m + h.identity, f"{g.name}x{h.name}")


def symmetric_group_3() -> GroupTable:
    perms = sorted(itertools.permutations(range(3)))
    index = {q: i for i, q in enumerate(perms)}
    # (σ·τ)(x) = σ(τ(x))
    table = tuple(
        tuple(index[tuple(s[t[x]] for x in range(3))] for t in perms) for s in perms
    )
    return GroupTable(table, index[(0, 1, 2)], "S3")


def quaternion_group() -> GroupTable:
    # elements (sign, unit) with units 1, i, j, k; index = 4·(sign<0) + unit
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def decode(x):
        return (-1 if x >= 4 else 1), x % 4

    def encode(sign, unit):
        return (4 if sign < 0 else 0) + unit

    table = []
    for x in range(8):
        row = []
        for y in range(8):
            (sx, ux), (sy, uy) = decode(x), decode(y)
            s, u = unit_mul[(ux, uy)]
            row.append(encode(sx * sy * s, u))
        table.append(tuple(row))
    return GroupTable(tuple(table), 0, "Q8")


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

class FdAlgebra:
    """
    Finite-dimensional associative unital algebra over GF(p).

    mult has shape (dim, dim, dim); unit is the coordinate vector of 1.
    `augmentation` (optional) is an algebra map to the field, used for
    trivial modules and radicals of group algebras.
    """

    def __init__(
        self,
        field: FieldSpec,
        mult: np.ndarray,
        unit: np.ndarray,
        name: str = "",
        augmentation: Optional[np.ndarray] = None,
        group: Optional[GroupTable] = None,
    ):
        self.field = field
        self.p = field.p
        self.mult = np.mod(np.asarray(mult, dtype=np.int64), self.p)
        self.unit = np.mod(np.asarray(unit, dtype=np.int64), self.p)
        self.name = name
        self.augmentation = None if augmentation is None else np.mod(np.asarray(augmentation, dtype=np.int64), self.p)
        self.group = group
        d = self.dim
        if self.mult.shape != (d, d, d) or self.unit.shape != (d,):
            raise DimensionMismatch(f"structure constants {self.mult.shape} / unit {self.unit.shape}")
        self._check_axioms()

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def _check_axioms(self) -> None:
        c, p, d = self.mult, self.p, self.dim
        left = np.einsum("ijm,mkl->ijkl", c, c) % p
        right = np.einsum("jkm,iml->ijkl", c, c) % p
        if not np.array_equal(left, right):
            raise InvalidStructure(f"algebra {self.name} is not associative")
        eye = identity(d)
        if not (np.array_equal(np.einsum("i,ijl->jl", self.unit, c) % p, eye)
                and np.array_equal(np.einsum("j,ijl->il", self.unit, c) % p, eye)):
            raise InvalidStructure(f"unit of {self.name} is not two-sided")
        if self.augmentation is not None:
            aug = self.augmentation
            prod = np.einsum("ijl,l->ij", c, aug) % p
            if not np.array_equal(prod, np.outer(aug, aug) % p) or int(aug @ self.unit) % p != 1:
                raise InvalidStructure(f"augmentation of {self.name} is not an algebra map")

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijl->l", a, b, self.mult) % self.p

    def left_mult(self, a: np.ndarray) -> FpMatrix:
        """Matrix of x ↦ a·x."""
        return np.einsum("i,ijl->jl", a, self.mult) % self.p

    def right_mult(self, a: np.ndarray) -> FpMatrix:
        """Matrix of x ↦ x·a."""
        return np.einsum("i,jil->jl", a, self.mult) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.transpose(1, 0, 2)))

    def __repr__(self) -> str:
        return f"FdAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"


def group_algebra(g: GroupTable, field: FieldSpec) -> FdAlgebra:
    n = g.order
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mult[i, j, g.mul(i, j)] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[g.identity] = 1
    return FdAlgebra(field, mult, unit, name=f"F{field.p}[{g.name}]",
                     augmentation=np.ones(n, dtype=np.int64), group=g)


def field_algebra(field: FieldSpec) -> FdAlgebra:
    return FdAlgebra(field, np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64),
                     name=f"F{field.p}", augmentation=np.ones(1, dtype=np.int64))


def check_subalgebra(algebra: FdAlgebra, span: np.ndarray) -> Subspace:
    """Validate a spanning set of a unital subalgebra; returns its span."""
    sub = Subspace.span(span, algebra.p, algebra.dim)
    if not sub.contains_vectors(algebra.unit):
        raise SubalgebraNotUnital(f"span of {sub.dim} elements misses the unit of {algebra.name}")
    products = np.einsum("ai,bj,ijl->abl", sub.basis, sub.basis, algebra.mult) % algebra.p
    if not sub.contains_vectors(products.reshape(-1, algebra.dim)):
        raise NotStable(f"span of {sub.dim} elements is not closed under multiplication")
    return sub


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

class FdModule:
    """
    Left module over `algebra`: action[i] is the matrix of m ↦ b_i·m.

    `injective_blocks`, when set, records that the module is
    ⊕_t Hom_k(A, V_t) with coordinates (a, v) row-major inside each block.
    """

    def __init__(
        self,
        algebra: FdAlgebra,
        action: np.ndarray,
        name: str = "",
        injective_blocks: Optional[Tuple[int, ...]] = None,
        check: bool = True,
    ):
        self.algebra = algebra
        self.p = algebra.p
        action = np.asarray(action, dtype=np.int64)
        if action.ndim != 3 or action.shape[0] != algebra.dim or action.shape[1] != action.shape[2]:
            raise DimensionMismatch(f"action array of shape {action.shape} for {algebra!r}")
        self.action = np.mod(action, self.p)
        self.name = name
        self.injective_blocks = injective_blocks
        if injective_blocks is not None and algebra.dim * sum(injective_blocks) != self.dim:
            raise DimensionMismatch(f"injective blocks {injective_blocks} do not fill dim {self.dim}")
        if check and self.dim <= MODULE_CHECK_LIMIT:
            self.check()

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def check(self) -> None:
        p, a = self.p, self.action
        unit_action = np.einsum("i,iab->ab", self.algebra.unit, a) % p
        if not np.array_equal(unit_action, identity(self.dim)):
            raise InvalidStructure(f"module {self.name} is not unital")
        lhs = np.einsum("ijl,lab->ijab", self.algebra.mult, a) % p
        rhs = np.einsum("jac,icb->ijab", a, a) % p
        if not np.array_equal(lhs, rhs):
            raise InvalidStructure(f"module {self.name} is not multiplicative")

    def act(self, element: np.ndarray) -> FpMatrix:
        """Matrix of m ↦ x·m for an algebra element x in coordinates."""
        return np.einsum("i,iab->ab", np.asarray(element, dtype=np.int64), self.action) % self.p

    @property
    def is_injective_by_construction(self) -> bool:
        return self.injective_blocks is not None

    def __repr__(self) -> str:
        return f"FdModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name})"


@dataclass
class ModuleMap:
    src: FdModule
    tgt: FdModule
    matrix: FpMatrix

    def __post_init__(self):
        self.matrix = as_matrix(self.matrix, self.src.p, cols=self.tgt.dim).reshape(self.src.dim, self.tgt.dim)

    def is_linear(self) -> bool:
        p = self.src.p
        for i in range(self.src.algebra.dim):
            if not np.array_equal(mat_mul(self.src.action[i], self.matrix, p),
                                  mat_mul(self.matrix, self.tgt.action[i], p)):
                return False
        return True

    def check(self) -> None:
        if not self.is_linear():
            raise InvalidStructure(f"map {self.src.name} → {self.tgt.name} is not a module map")


def regular_module(algebra: FdAlgebra) -> FdModule:
    action = np.stack([algebra.left_mult(algebra.basis_vector(i)) for i in range(algebra.dim)])
    return FdModule(algebra, action, name=f"{algebra.name} regular")


def trivial_module(algebra: FdAlgebra) -> FdModule:
    """The field with x acting through the augmentation."""
    if algebra.augmentation is None:
        raise InvalidStructure(f"{algebra.name} has no augmentation to define a trivial module")
    return FdModule(algebra, algebra.augmentation.reshape(-1, 1, 1), name="trivial")


def zero_module(algebra: FdAlgebra) -> FdModule:
    return FdModule(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), name="0",
                    injective_blocks=())


def vector_space(field: FieldSpec, n: int) -> FdModule:
    alg = field_algebra(field)
    return FdModule(alg, identity(n).reshape(1, n, n), name=f"F{field.p}^{n}")


def module_from_generators(algebra: FdAlgebra, generators: Dict[int, np.ndarray], name: str = "") -> FdModule:
    """
    Module over a group algebra from the matrices of some group elements.

    The given elements must generate the group; every other element's
    matrix is obtained by multiplying, following the Cayley table.
    """
    g = algebra.group
    if g is None:
        raise InvalidStructure("module_from_generators needs a group algebra")
    mats: Dict[int, np.ndarray] = {}
    first = np.asarray(next(iter(generators.values())))
    n = first.shape[0]
    mats[g.identity] = identity(n)
    frontier = [g.identity]
    while frontier:
        nxt = []
        for h in frontier:
            for s, ms in generators.items():
                # s·h acts as "first h, then s"
                sh = g.mul(s, h)
                if sh not in mats:
                    mats[sh] = mat_mul(mats[h], np.mod(np.asarray(ms, dtype=np.int64), algebra.p), algebra.p)
                    nxt.append(sh)
        frontier = nxt
    if len(mats) != g.order:
        raise InvalidStructure(f"generators reach only {len(mats)} of {g.order} group elements")
    return FdModule(algebra, np.stack([mats[i] for i in range(g.order)]), name=name)


def direct_sum(modules: Sequence[FdModule]) -> Tuple[FdModule, List[FpMatrix], List[FpMatrix]]:
    """⊕ modules with inclusion and projection matrices."""
    if not modules:
        raise DimensionMismatch("direct sum of an empty family needs an algebra")
    algebra = modules[0].algebra
    action = np.stack([direct_sum_matrix([m.action[i] for m in modules]) for i in range(algebra.dim)])
    blocks = None
    if all(m.injective_blocks is not None for m in modules):
        blocks = tuple(b for m in modules for b in m.injective_blocks)
    total = FdModule(algebra, action, name=" ⊕ ".join(m.name or "?" for m in modules),
                     injective_blocks=blocks, check=False)
    incs, projs, offset = [], [], 0
    for m in modules:
        inc = zeros(m.dim, total.dim)
        inc[:, offset:offset + m.dim] = identity(m.dim)
        incs.append(inc)
        projs.append(inc.T.copy())
        offset += m.dim
    return total, incs, projs


def submodule(m: FdModule, sub: Subspace, name: str = "") -> Tuple[FdModule, FpMatrix]:
    """Restriction of the action to a stable subspace; returns (module, inclusion)."""
    p = m.p
    acts = []
    for i in range(m.algebra.dim):
        image = mat_mul(sub.basis, m.action[i], p)
        if not sub.contains_vectors(image):
            raise NotStable(f"subspace of dim {sub.dim} is not stable under basis element {i} of {m.algebra.name}")
        acts.append(sub.coordinates(image))
    action = np.stack(acts) if acts else np.zeros((0, sub.dim, sub.dim), dtype=np.int64)
    return FdModule(m.algebra, action, name=name, check=False), sub.basis.copy()


def quotient_module(m: FdModule, sub: Subspace, name: str = "") -> Tuple[FdModule, FpMatrix, Subquotient]:
    """M/sub; returns (module, projection M → M/sub, the Subquotient used)."""
    p = m.p
    sq = Subquotient(Subspace.full(m.dim, p), sub)
    acts = []
    for i in range(m.algebra.dim):
        image = mat_mul(sq.complement, m.action[i], p)
        if not sub.contains_vectors(mat_mul(sub.basis, m.action[i], p)):
            raise NotStable(f"subspace of dim {sub.dim} is not a submodule")
        acts.append(sq.coords(image))
    action = np.stack(acts)
    return FdModule(m.algebra, action, name=name, check=False), sq.coords(identity(m.dim)), sq


def restrict_along(m: FdModule, phi: FpMatrix, source: FdAlgebra) -> FdModule:
    """Pull back along an algebra map φ: source → m.algebra (dim source × dim target)."""
    action = np.einsum("xb,bij->xij", phi, m.action) % m.p
    return FdModule(source, action, name=f"{m.name}|{source.name}", check=False)


# ---------------------------------------------------------------------------
# Hom, tensor, fixed points
# ---------------------------------------------------------------------------

def hom_module_space(m: FdModule, n: FdModule, over: Optional[np.ndarray] = None) -> Subspace:
    """
    Hom_K(m, n) inside vec Hom_k(m, n) (row-major dim m × dim n matrices).

    `over` spans a unital subalgebra K of the algebra; None means the whole
    algebra. The carrier is cut out by A_m(a) F = F A_n(a) for a in the span.
    """
    p = m.p
    if m.algebra is not n.algebra:
        raise DimensionMismatch(f"{m!r} and {n!r} are modules over different algebras")
    dm, dn = m.dim, n.dim
    if dm * dn == 0:
        return Subspace.zero(dm * dn, p)
    if over is None:
        elements = [m.algebra.basis_vector(i) for i in range(m.algebra.dim)]
    else:
        elements = list(check_subalgebra(m.algebra, over).basis)
    blocks = []
    for a in elements:
        am, an = m.act(a), n.act(a)
        blocks.append((np.kron(am.T, identity(dn)) - np.kron(identity(dm), an)) % p)
    return kernel_basis(np.hstack(blocks), p)


def hom_basis_matrices(space: Subspace, src_dim: int, tgt_dim: int) -> np.ndarray:
    return space.basis.reshape(space.dim, src_dim, tgt_dim)


def tensor_over_field(m: FdModule, n: FdModule, coproduct: Optional[np.ndarray] = None) -> FdModule:
    """
    m ⊗ n with coordinates (i, j) row-major.

    With a coproduct D[x, a, b] (Δb_x = Σ D[x,a,b] b_a ⊗ b_b) the basis
    element b_x acts by Σ D[x,a,b] A_m(b_a) ⊗ A_n(b_b); without one both
    factors must be vector spaces.
    """
    p = m.p
    if coproduct is None:
        if m.algebra.dim != 1 or n.algebra.dim != 1:
            raise InvalidStructure("tensor of modules over a non-trivial algebra needs a coproduct")
        return vector_space(m.algebra.field, m.dim * n.dim)
    acts = []
    for x in range(m.algebra.dim):
        total = zeros(m.dim * n.dim, m.dim * n.dim)
        for a, b in zip(*np.nonzero(coproduct[x])):
            total = (total + int(coproduct[x, a, b]) * np.kron(m.action[a], n.action[b])) % p
        acts.append(total)
    return FdModule(m.algebra, np.stack(acts), name=f"{m.name} ⊗ {n.name}", check=False)


def fixed_points(m: FdModule, sub: np.ndarray, counit: np.ndarray) -> Subspace:
    """M^K = {v : a·v = ε(a) v for a in the spanning set of K}."""
    p = m.p
    blocks = []
    for a in np.atleast_2d(sub):
        eps = int(np.dot(a, counit)) % p
        blocks.append((m.act(a) - eps * identity(m.dim)) % p)
    if not blocks or m.dim == 0:
        return Subspace.full(m.dim, p)
    return kernel_basis(np.hstack(blocks), p)


# ---------------------------------------------------------------------------
# Coinduced (injective) modules
# ---------------------------------------------------------------------------

def coinduced_space(algebra: FdAlgebra, vdim: int) -> FdModule:
    """Hom_k(A, V) with [a′](x·f) = [a′x]f; coordinates (a, v) row-major."""
    acts = [np.kron(algebra.right_mult(algebra.basis_vector(x)).T, identity(vdim)) % algebra.p
            for x in range(algebra.dim)]
    action = np.stack(acts) if vdim else np.zeros((algebra.dim, 0, 0), dtype=np.int64)
    return FdModule(algebra, action, name=f"Hom_k({algebra.name}, k^{vdim})",
                    injective_blocks=(vdim,) if vdim else (), check=False)


def coinduced(m: FdModule) -> Tuple[FdModule, FpMatrix]:
    """Hom_k(A, m) with the canonical embedding m ↦ (a ↦ a·m)."""
    target = coinduced_space(m.algebra, m.dim)
    return target, unit_adjoint(m, identity(m.dim), target)


def evaluation_at_unit(target: FdModule) -> FpMatrix:
    """f ↦ (f_t(1))_t for target = ⊕ Hom_k(A, V_t)."""
    if target.injective_blocks is None:
        raise InvalidStructure(f"{target!r} is not injective by construction")
    u = target.algebra.unit.reshape(-1, 1)
    return direct_sum_matrix([np.kron(u, identity(v)) for v in target.injective_blocks]) \
        if target.injective_blocks else zeros(target.dim, 0)


def unit_adjoint(src: FdModule, lam: FpMatrix, target: FdModule) -> FpMatrix:
    """
    The module map src → ⊕ Hom_k(A, V_t) adjoint to the linear map
    λ: src → ⊕ V_t, namely n ↦ (a ↦ λ(a·n)).
    """
    if target.injective_blocks is None:
        raise InvalidStructure(f"{target!r} is not injective by construction")
    p, d = src.p, src.algebra.dim
    parts, col = [], 0
    for v in target.injective_blocks:
        lam_t = lam[:, col:col + v]
        stacked = np.stack([mat_mul(src.action[a], lam_t, p) for a in range(d)], axis=1)
        parts.append(stacked.reshape(src.dim, d * v))
        col += v
    return np.hstack(parts) if parts else zeros(src.dim, 0)


def extend_into_injective(along: FpMatrix, psi: FpMatrix, q: FdModule, target: FdModule) -> FpMatrix:
    """
    Some module map σ: q → target with along @ σ = psi.

    `along` is a module map P → q and `psi` a module map P → target that
    vanishes on the kernel of `along`; target must be injective by
    construction. Solving happens on the adjoint side, in Hom_k(q, ⊕V_t).
    """
    p = q.p
    ev = evaluation_at_unit(target)
    psi_bar = mat_mul(psi, ev, p)
    if along.shape[0] == 0:
        lam = zeros(q.dim, ev.shape[1])
    else:
        x = Solver(along.T, p).solve(psi_bar.T)
        if x is None:
            raise LiftFailed(f"no extension along a {along.shape} map into {target!r}")
        lam = x.T
    sigma = unit_adjoint(q, lam, target)
    if not np.array_equal(mat_mul(along, sigma, p), np.mod(psi, p)):
        raise LiftFailed(f"extension into {target!r} does not restrict to the given map")
    return sigma


# ---------------------------------------------------------------------------
# Radical, socle, top
# ---------------------------------------------------------------------------

def augmentation_ideal(algebra: FdAlgebra) -> np.ndarray:
    """Spanning set {b − ε(b)·1} of ker ε."""
    if algebra.augmentation is None:
        raise NotLocal(f"{algebra.name} has no augmentation")
    gens = [algebra.basis_vector(i) - algebra.augmentation[i] * algebra.unit for i in range(algebra.dim)]
    return Subspace.span(np.mod(np.array(gens), algebra.p), algebra.p, algebra.dim).basis


def check_nilpotent(algebra: FdAlgebra, radical: np.ndarray) -> int:
    """Nilpotency index of the ideal spanned by `radical`; raises NotNilpotent."""
    p = algebra.p
    power = Subspace.span(radical, p, algebra.dim)
    for k in range(1, algebra.dim + 2):
        if power.dim == 0:
            return k
        prods = np.einsum("ai,bj,ijl->abl", power.basis, np.atleast_2d(radical), algebra.mult) % p
        power = Subspace.span(prods.reshape(-1, algebra.dim), p, algebra.dim)
    raise NotNilpotent(f"radical spanning set of {algebra.name} is not nilpotent")


def local_radical(algebra: FdAlgebra) -> np.ndarray:
    """Augmentation ideal, verified nilpotent (so the algebra is local)."""
    try:
        rad = augmentation_ideal(algebra)
        check_nilpotent(algebra, rad)
    except NotNilpotent as exc:
        raise NotLocal(f"{algebra.name} is not local: {exc}") from exc
    return rad


def socle(m: FdModule, radical: np.ndarray) -> Subspace:
    """Joint kernel of the radical generators."""
    if m.dim == 0 or len(radical) == 0:
        return Subspace.full(m.dim, m.p)
    return kernel_basis(np.hstack([m.act(r) for r in radical]), m.p)


def radical(m: FdModule, radical_gens: np.ndarray) -> Subspace:
    """rad·M, the span of all r·m."""
    if m.dim == 0 or len(radical_gens) == 0:
        return Subspace.zero(m.dim, m.p)
    return image_basis(np.vstack([m.act(r) for r in radical_gens]), m.p)


def top(m: FdModule, radical_gens: np.ndarray) -> Subquotient:
    return Subquotient(Subspace.full(m.dim, m.p), radical(m, radical_gens))


def random_module_map(src: FdModule, tgt: FdModule, rng: np.random.Generator) -> FpMatrix:
    space = hom_module_space(src, tgt)
    coeffs = rng.integers(0, src.p, size=(1, space.dim), dtype=np.int64)
    return mat_mul(coeffs, space.basis, src.p).reshape(src.dim, tgt.dim)
