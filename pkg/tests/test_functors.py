"""
tests/test_functors.py — Functor and bifunctor handles.

Tests: values of the concrete functors on small modules, functor laws on
sampled maps, application to resolutions, composites, the Hom and Hom_K
bifunctors and the name registry.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, group_algebra, regular_module, trivial_module
from src.checks import all_passed, failures
from src.complexes import conc, homology_dims
from src.config import RANDOM_SEED
from src.errors import DimensionMismatch, InvalidStructure
from src.functors import (
    CoHomK,
    CoinducedAlong,
    Composite,
    FixedPoints,
    HomBifunctor,
    HomFrom,
    HomInclusion,
    HomInto,
    HomK,
    HomKBifunctor,
    Identity,
    Invariants,
    Restriction,
    Tensor,
    functor_from_name,
    scalars,
)
from src.hopf import NormalHopfSubalgebra, group_hopf, subgroup_span
from src.linalg import FieldSpec
from src.resolutions import minimal_projective_resolution


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def hopf():
    return group_hopf(cyclic_group(4), FieldSpec(2))


@pytest.fixture(scope="module")
def a(hopf):
    return hopf.algebra


@pytest.fixture(scope="module")
def nk(hopf):
    return NormalHopfSubalgebra(hopf, subgroup_span(hopf, [0, 2]))


@pytest.fixture(scope="module")
def modules(a):
    return [trivial_module(a), regular_module(a)]


@pytest.fixture
def rng():
    return np.random.default_rng(RANDOM_SEED)


@pytest.fixture(scope="module")
def c2_into_c4():
    """F2C2 → F2C4 sending the generator to the element of order two."""
    source = group_algebra(cyclic_group(2), FieldSpec(2))
    phi = np.zeros((2, 4), dtype=np.int64)
    phi[0, 0] = phi[1, 2] = 1
    return phi, source


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

class TestValues:

    def test_invariants(self, a, modules):
        inv = Invariants(a)
        assert [inv.on_module(m).dim for m in modules] == [1, 1]
        assert inv.on_module(modules[1]).algebra is scalars(2)

    def test_fixed_points(self, nk, modules):
        fk = FixedPoints(nk)
        assert fk.on_module(modules[1]).dim == 2
        assert fk.on_module(modules[1]).algebra is nk.quotient.hbar.algebra

    def test_hom_from_and_into(self, modules):
        k, r = modules
        assert HomFrom(k).on_module(r).dim == 1
        assert HomInto(k).on_module(r).dim == 1
        assert HomInto(k).is_contravariant

    def test_hom_k(self, nk, modules):
        k, r = modules
        assert HomK(r, nk).on_module(k).dim == 2
        assert CoHomK(k, nk).on_module(r).dim == 2

    def test_restriction(self, a, c2_into_c4):
        phi, source = c2_into_c4
        assert Restriction(phi, source).on_module(regular_module(a)).dim == 4

    def test_coinduced_along(self, a, c2_into_c4):
        phi, source = c2_into_c4
        out = CoinducedAlong(phi, source, a).on_module(trivial_module(source))
        assert out.dim == 2
        assert out.algebra is a

    def test_composite(self, nk, modules):
        comp = Composite(FixedPoints(nk), Invariants(nk.quotient.hbar.algebra))
        assert comp.on_module(modules[1]).dim == 1
        assert not comp.is_contravariant

    def test_contravariant_outer_rejected(self, modules):
        with pytest.raises(InvalidStructure):
            Composite(Identity(), HomInto(modules[0]))

    def test_cache(self, a, modules):
        inv = Invariants(a)
        assert inv.on_module(modules[1]) is inv.on_module(modules[1])


class TestLaws:

    def test_covariant(self, a, nk, modules, rng, hopf):
        for functor in (Identity(), Invariants(a), HomFrom(modules[0]), FixedPoints(nk),
                        HomK(modules[1], nk), Tensor(modules[0], hopf.coproduct)):
            results = functor.check_functor_laws(modules, rng)
            assert all_passed(results), (functor, [str(r) for r in failures(results)])

    def test_contravariant(self, nk, modules, rng):
        for functor in (HomInto(modules[0]), CoHomK(modules[0], nk)):
            assert all_passed(functor.check_functor_laws(modules, rng))

    def test_coinduced_laws(self, a, c2_into_c4, rng):
        phi, source = c2_into_c4
        fn = CoinducedAlong(phi, source, a)
        assert all_passed(fn.check_functor_laws([trivial_module(source), regular_module(source)], rng))


class TestResolutions:

    def test_hom_into_trivial(self, modules):
        k = modules[0]
        res = minimal_projective_resolution(k, 3)
        x = HomInto(k).on_free_resolution(res)
        assert x.dims() == [1, 1, 1, 1]
        assert [homology_dims(x)[i] for i in range(3)] == [1, 1, 1]

    def test_wrong_variance(self, modules):
        res = minimal_projective_resolution(modules[0], 2)
        with pytest.raises(InvalidStructure):
            HomFrom(modules[0]).on_free_resolution(res)
        with pytest.raises(InvalidStructure):
            HomInto(modules[0]).on_complex(conc(modules[0]))


# ---------------------------------------------------------------------------
# Bifunctors
# ---------------------------------------------------------------------------

class TestBifunctors:

    def test_hom_biadditive(self, a, modules, rng):
        hom = HomBifunctor(a)
        assert hom.on_objects(modules[1], modules[1]).dim == 4
        assert all_passed(hom.check_biadditivity(modules, modules, rng))

    def test_hom_k_biadditive(self, nk, modules, rng):
        assert all_passed(HomKBifunctor(nk).check_biadditivity(modules, modules, rng))

    def test_partials(self, a, modules):
        hom = HomBifunctor(a)
        second = hom.fix_second(modules[0])
        assert second.is_contravariant
        assert hom.fix_second(modules[0]) is second
        assert not hom.fix_first(modules[0]).is_contravariant
        assert second.on_module(modules[1]).dim == 1

    def test_mismatched_algebras(self, a, c2_into_c4):
        _, source = c2_into_c4
        with pytest.raises(DimensionMismatch):
            HomBifunctor(a).on_objects(trivial_module(source), trivial_module(a))

    def test_hom_over_unit_span(self, a, modules):
        hom_k = HomBifunctor(a, over=a.unit.reshape(1, -1))
        assert hom_k.name == f"Hom_{a.name}|K"
        assert hom_k.on_objects(modules[0], modules[1]).dim == 4
        assert hom_k.on_objects(modules[1], modules[1]).dim == 16

    def test_inclusion_components(self, a, modules, rng):
        forget = HomInclusion(HomBifunctor(a), HomBifunctor(a, over=a.unit.reshape(1, -1)))
        k, r = modules
        assert forget.component(k, r).shape == (1, 4)
        assert forget.component(r, r).shape == (4, 16)
        assert all_passed(forget.check_naturality(modules, modules, rng))


class TestRegistry:

    @pytest.mark.parametrize("name,cls", [("identity", Identity), ("invariants", Invariants),
                                          ("hom_from", HomFrom), ("hom_into", HomInto)])
    def test_lookup(self, a, name, cls):
        assert isinstance(functor_from_name(name, a), cls)

    def test_subgroup_functors(self, a, nk):
        assert isinstance(functor_from_name("fixed_points", a, nk=nk), FixedPoints)
        assert functor_from_name("quotient_invariants", a, nk=nk).algebra is nk.quotient.hbar.algebra

    @pytest.mark.parametrize("name", ["ext", "fixed_points", "tensor"])
    def test_rejected(self, a, name):
        with pytest.raises(ValueError):
            functor_from_name(name, a)
