"""
tests/test_algebra.py — Groups, finite-dimensional algebras and modules.

Tests: GroupTable validation and normality, group algebras, module axioms,
Hom spaces, fixed points, coinduced modules, radicals and socles.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import (
    FdAlgebra,
    GroupTable,
    ModuleMap,
    check_subalgebra,
    coinduced,
    cyclic_group,
    direct_product,
    direct_sum,
    extend_into_injective,
    fixed_points,
    group_algebra,
    hom_module_space,
    local_radical,
    module_from_generators,
    quaternion_group,
    quotient_module,
    random_module_map,
    regular_module,
    restrict_along,
    socle,
    submodule,
    symmetric_group_3,
    tensor_over_field,
    trivial_module,
    vector_space,
)
from src.config import RANDOM_SEED
from src.errors import InvalidStructure, NotLocal, NotStable, SubalgebraNotUnital
from src.linalg import FieldSpec, Subspace, identity


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def f2c2():
    return group_algebra(cyclic_group(2), FieldSpec(2))


@pytest.fixture(scope="module")
def f2c4():
    return group_algebra(cyclic_group(4), FieldSpec(2))


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(RANDOM_SEED)


def _group_coproduct(n: int) -> np.ndarray:
    d = np.zeros((n, n, n), dtype=np.int64)
    for x in range(n):
        d[x, x, x] = 1
    return d


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

class TestGroupTable:

    def test_cyclic(self):
        g = cyclic_group(4)
        assert g.order == 4
        assert g.inverse(1) == 3
        assert g.is_normal([0, 2])

    def test_not_latin_square(self):
        with pytest.raises(InvalidStructure):
            GroupTable(((0, 1), (0, 1)))

    def test_s3_subgroups(self):
        g = symmetric_group_3()
        assert g.order == 6
        assert g.is_subgroup([0, 1])
        assert not g.is_normal([0, 1])
        assert g.is_normal([0, 3, 4])
        assert not g.is_subgroup([0, 1, 2])

    def test_q8_center_normal(self):
        g = quaternion_group()
        assert g.order == 8
        assert g.is_normal([0, 4])

    def test_direct_product(self):
        g = direct_product(cyclic_group(2), cyclic_group(2))
        assert g.order == 4
        assert g.name == "C2xC2"
        assert all(g.mul(x, x) == g.identity for x in range(4))

    def test_cosets(self):
        assert cyclic_group(4).cosets([0, 2]) == [(0, 2), (1, 3)]


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

class TestAlgebra:

    def test_group_algebra(self, f2c4):
        assert f2c4.dim == 4
        assert f2c4.is_commutative()
        assert f2c4.group.order == 4

    def test_s3_not_commutative(self):
        assert not group_algebra(symmetric_group_3(), FieldSpec(3)).is_commutative()

    def test_bad_unit_rejected(self):
        with pytest.raises(InvalidStructure):
            FdAlgebra(FieldSpec(2), np.zeros((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64))

    def test_multiply_follows_group(self, f2c4):
        prod = f2c4.multiply(f2c4.basis_vector(1), f2c4.basis_vector(3))
        assert np.array_equal(prod, f2c4.basis_vector(0))

    def test_subalgebra(self, f2c4):
        sub = check_subalgebra(f2c4, np.array([[1, 0, 0, 0], [0, 0, 1, 0]]))
        assert sub.dim == 2
        with pytest.raises(SubalgebraNotUnital):
            check_subalgebra(f2c4, np.array([[0, 1, 0, 0]]))
        with pytest.raises(NotStable):
            check_subalgebra(f2c4, np.array([[1, 0, 0, 0], [0, 1, 0, 0]]))

    def test_local_radical(self, f2c4):
        assert local_radical(f2c4).shape[0] == 3

    def test_non_local(self):
        with pytest.raises(NotLocal):
            local_radical(group_algebra(cyclic_group(3), FieldSpec(2)))


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

class TestModules:

    def test_trivial_and_regular(self, f2c4):
        assert trivial_module(f2c4).dim == 1
        assert regular_module(f2c4).dim == 4

    def test_from_generators(self, f2c2):
        m = module_from_generators(f2c2, {1: np.array([[1, 1], [0, 1]])}, name="J2")
        assert m.dim == 2
        assert np.array_equal(m.action[1], np.array([[1, 1], [0, 1]]))
        assert np.array_equal(m.action[0], identity(2))

    def test_from_non_generating(self, f2c4):
        with pytest.raises(InvalidStructure):
            module_from_generators(f2c4, {2: identity(1)})

    def test_hom_dims(self, f2c4):
        r, k = regular_module(f2c4), trivial_module(f2c4)
        assert hom_module_space(r, k).dim == 1
        assert hom_module_space(k, r).dim == 1
        assert hom_module_space(r, r).dim == 4

    def test_random_map_is_linear(self, f2c4, rng):
        r = regular_module(f2c4)
        for _ in range(3):
            f = random_module_map(r, r, rng)
            assert ModuleMap(r, r, f).is_linear()

    def test_fixed_points(self, f2c4):
        r = regular_module(f2c4)
        span = np.array([[1, 0, 0, 0], [0, 0, 1, 0]])
        assert fixed_points(r, span, f2c4.augmentation).dim == 2

    def test_socle_of_regular(self, f2c4):
        assert socle(regular_module(f2c4), local_radical(f2c4)).dim == 1

    def test_submodule_and_quotient(self, f2c2):
        r = regular_module(f2c2)
        norm = Subspace.span([[1, 1]], 2)
        sub, inc = submodule(r, norm)
        assert sub.dim == 1
        assert ModuleMap(sub, r, inc).is_linear()
        q, proj, _ = quotient_module(r, norm)
        assert q.dim == 1
        assert ModuleMap(r, q, proj).is_linear()
        with pytest.raises(NotStable):
            submodule(r, Subspace.span([[1, 0]], 2))

    def test_direct_sum(self, f2c2):
        total, incs, projs = direct_sum([trivial_module(f2c2), regular_module(f2c2)])
        assert total.dim == 3
        for inc, proj in zip(incs, projs):
            assert np.array_equal(inc @ proj, identity(inc.shape[0]))

    def test_restrict_along_augmentation(self, f2c4):
        k = vector_space(FieldSpec(2), 1)
        phi = np.ones((4, 1), dtype=np.int64)
        m = restrict_along(k, phi, f2c4)
        assert np.array_equal(m.action, trivial_module(f2c4).action)

    def test_tensor_is_module(self, f2c4):
        t = tensor_over_field(trivial_module(f2c4), regular_module(f2c4), _group_coproduct(4))
        assert t.dim == 4
        t.check()


# ---------------------------------------------------------------------------
# Coinduced modules
# ---------------------------------------------------------------------------

class TestCoinduced:

    def test_embedding_is_module_map(self, f2c4):
        m = regular_module(f2c4)
        target, emb = coinduced(m)
        assert target.dim == 16
        assert target.injective_blocks == (4,)
        assert ModuleMap(m, target, emb).is_linear()

    def test_extension(self, f2c2):
        k, r = trivial_module(f2c2), regular_module(f2c2)
        target, emb = coinduced(k)
        norm = np.array([[1, 1]])
        sigma = extend_into_injective(norm, emb, r, target)
        assert np.array_equal(norm @ sigma % 2, emb)
        assert ModuleMap(r, target, sigma).is_linear()
