"""
tests/test_resolutions.py — Injective and projective resolutions.

Tests: both injective providers, minimal/free/bar projective resolutions,
Ext dims of the trivial module for small groups, lifting maps between
free resolutions, and the guards on kinds, providers and budgets.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, direct_product, group_algebra, regular_module, symmetric_group_3, trivial_module
from src.errors import BudgetExceeded, NotLocal
from src.linalg import FieldSpec, identity, mat_mul
from src.resolutions import (
    InjResProvider,
    bar_resolution,
    ext_dims,
    free_projective_resolution,
    hom_complex,
    injective_resolution,
    lift_map_to_free_resolutions,
    minimal_projective_resolution,
    projective_resolution,
)


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
def klein():
    return group_algebra(direct_product(cyclic_group(2), cyclic_group(2)), FieldSpec(2))


# ---------------------------------------------------------------------------
# Injective resolutions
# ---------------------------------------------------------------------------

class TestInjective:

    @pytest.mark.parametrize("provider", ["local-socle", "coinduced"])
    def test_trivial_over_c2(self, f2c2, provider):
        res = injective_resolution(trivial_module(f2c2), provider, length=4)
        assert res.dims() == [2, 2, 2, 2, 2]
        assert res.provider == provider

    def test_minimal_over_c4(self, f2c4):
        res = InjResProvider("local-socle").resolve(trivial_module(f2c4), 3)
        assert res.dims() == [4, 4, 4, 4]

    def test_injective_module_stops(self, f2c2):
        res = injective_resolution(regular_module(f2c2), "local-socle", length=2)
        assert res.dims() == [2, 0, 0]

    def test_complex_is_exact_inside(self, f2c4):
        res = injective_resolution(trivial_module(f2c4), "coinduced", length=3)
        x = res.complex
        assert x.window == (0, 3)
        x.check()

    def test_unknown_provider(self):
        with pytest.raises(ValueError):
            InjResProvider("bogus")

    def test_length_guard(self, f2c2):
        with pytest.raises(ValueError):
            injective_resolution(trivial_module(f2c2), length=0)


# ---------------------------------------------------------------------------
# Projective resolutions
# ---------------------------------------------------------------------------

class TestProjective:

    def test_minimal_c4(self, f2c4):
        res = minimal_projective_resolution(trivial_module(f2c4), 4)
        assert res.ranks == [1, 1, 1, 1, 1]
        assert ext_dims(res, trivial_module(f2c4)) == [1, 1, 1, 1]

    def test_minimal_klein(self, klein):
        res = minimal_projective_resolution(trivial_module(klein), 3)
        assert res.ranks == [1, 2, 3, 4]
        assert ext_dims(res, trivial_module(klein)) == [1, 2, 3]

    def test_free_cover_agrees(self, f2c4):
        k = trivial_module(f2c4)
        assert ext_dims(free_projective_resolution(k, 3), k) == [1, 1, 1]

    def test_s3_mod_3(self):
        a = group_algebra(symmetric_group_3(), FieldSpec(3))
        k = trivial_module(a)
        with pytest.raises(NotLocal):
            minimal_projective_resolution(k, 2)
        res = projective_resolution(k, 5)
        assert res.kind == "free"
        assert ext_dims(res, k) == [1, 0, 0, 1, 1]

    def test_bar_c2(self, f2c2):
        res = bar_resolution(f2c2, 3)
        assert [res.term(i).dim for i in range(4)] == [2, 4, 8, 16]
        assert ext_dims(res, trivial_module(f2c2)) == [1, 1, 1]

    def test_bar_via_kind(self, f2c2):
        res = projective_resolution(trivial_module(f2c2), 2, kind="bar")
        assert res.kind == "bar"

    def test_bar_needs_trivial(self, f2c2):
        with pytest.raises(ValueError):
            projective_resolution(regular_module(f2c2), 2, kind="bar")

    def test_bar_budget(self, f2c4):
        with pytest.raises(BudgetExceeded):
            bar_resolution(f2c4, 6)

    def test_unknown_kind(self, f2c2):
        with pytest.raises(ValueError):
            projective_resolution(trivial_module(f2c2), 2, kind="cellular")

    def test_hom_complex_window(self, f2c4):
        res = minimal_projective_resolution(trivial_module(f2c4), 3)
        x = hom_complex(res, regular_module(f2c4))
        assert x.dims() == [4, 4, 4, 4]


class TestLifting:

    def test_identity_lift_is_chain_map(self, f2c4):
        k = trivial_module(f2c4)
        src = minimal_projective_resolution(k, 3)
        tgt = free_projective_resolution(k, 3)
        hs = lift_map_to_free_resolutions(identity(1), src, tgt)
        assert len(hs) == 4
        assert np.array_equal(mat_mul(hs[0], tgt.augmentation, 2), src.augmentation)
        for i in range(3):
            assert np.array_equal(mat_mul(src.boundaries[i], hs[i], 2),
                                  mat_mul(hs[i + 1], tgt.boundaries[i], 2))

    def test_lift_into_bar(self, f2c2):
        k = trivial_module(f2c2)
        src = minimal_projective_resolution(k, 2)
        tgt = bar_resolution(f2c2, 2)
        hs = lift_map_to_free_resolutions(identity(1), src, tgt)
        for i in range(2):
            assert np.array_equal(mat_mul(src.boundaries[i], hs[i], 2),
                                  mat_mul(hs[i + 1], tgt.boundaries[i], 2))
