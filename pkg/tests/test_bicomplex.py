"""
tests/test_bicomplex.py — Double/triple complexes, Horseshoe and CE-resolutions.

Tests: double complex axioms, total complex signs, Conc₁ comparison signs,
planewise totals of triple complexes, Horseshoe resolutions and
Cartan–Eilenberg resolutions with lifted maps.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, group_algebra, regular_module, trivial_module
from src.bicomplex import (
    DoubleComplex,
    DoubleComplexMap,
    ShortExactSequence,
    TripleComplex,
    ce_resolution,
    conc1,
    conc1_iso,
    conc1_sign,
    horseshoe,
    lift_map_to_ce,
    lift_map_to_resolutions,
    planewise_homology_identity,
    resolution_map,
    t12,
    total,
    total_map,
)
from src.complexes import CochainComplex, ComplexMap, homology_dims, is_acyclic, is_quasiiso
from src.errors import DimensionMismatch, InvalidStructure, NotShortExact, ProviderFailure
from src.linalg import FieldSpec, identity
from src.resolutions import InjResProvider, injective_resolution


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def f2c2():
    return group_algebra(cyclic_group(2), FieldSpec(2))


@pytest.fixture
def square():
    """k → k over k → k, all maps the identity, over GF(3)."""
    one = [[1]]
    return DoubleComplex(3, [[1, 1], [1, 1]], {(0, 0): one, (1, 0): one}, {(0, 0): one, (0, 1): one})


@pytest.fixture
def cube():
    """Y on [0,1]³ with d1 = d2 = id and d3 = 0, over GF(3)."""
    idx = [(i, j, l) for i in range(2) for j in range(2) for l in range(2)]
    dims = {k: 1 for k in idx}
    d1 = {(0, j, l): [[1]] for j in range(2) for l in range(2)}
    d2 = {(i, 0, l): [[1]] for i in range(2) for l in range(2)}
    return TripleComplex(3, dims, (1, 1, 1), d1, d2, {})


@pytest.fixture(scope="module")
def augmentation_complex(f2c2):
    """F2C2 → F2 (augmentation) as a complex of modules in degrees 0, 1."""
    return CochainComplex.from_modules([regular_module(f2c2), trivial_module(f2c2)], {0: [[1], [1]]})


# ---------------------------------------------------------------------------
# Double complexes and totals
# ---------------------------------------------------------------------------

class TestDoubleComplex:

    def test_square_total_is_acyclic(self, square):
        t = total(square)
        assert t.dims() == [1, 2, 1]
        assert is_acyclic(t)

    def test_total_sign(self, square):
        t = total(square)
        # (1, 0) contributes −d
        assert np.array_equal(t.d(1), np.array([[1], [2]]))

    def test_non_commuting_rejected(self):
        with pytest.raises(InvalidStructure):
            DoubleComplex(3, [[1, 1], [1, 1]], {(0, 0): [[1]], (1, 0): [[1]]}, {(0, 0): [[1]], (0, 1): [[2]]})

    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatch):
            DoubleComplex(2, [[1, 1], [1]])

    def test_rows_and_columns(self, square):
        assert square.row(0).dims() == [1, 1]
        assert square.column(1).dims() == [1, 1]
        assert square.transpose().window == (1, 1)

    def test_truncate_total_degree(self, square):
        t = square.truncate(1, 1, total_degree=1)
        assert t.dim(1, 1) == 0
        assert t.dim(0, 1) == 1

    def test_identity_map(self, square):
        ident = DoubleComplexMap(square, square, {(i, j): identity(1) for i in range(2) for j in range(2)})
        assert is_quasiiso(total_map(ident))


class TestConc1:

    def test_signs(self):
        assert [conc1_sign(i) for i in range(6)] == [1, 1, -1, -1, 1, 1]

    def test_iso_is_chain_map(self):
        u = CochainComplex(3, 0, [1, 1, 1, 1], {0: [[1]]})
        f = conc1_iso(u)
        assert is_quasiiso(f)
        assert conc1(u).window == (3, 0)


# ---------------------------------------------------------------------------
# Triple complexes
# ---------------------------------------------------------------------------

class TestTripleComplex:

    def test_total_dims(self, cube):
        assert cube.total_dims() == [1, 3, 3, 1]

    def test_t12_shape(self, cube):
        z = t12(cube)
        assert z.window == (2, 1)
        assert [z.dim(k, 0) for k in range(3)] == [1, 2, 1]

    @pytest.mark.parametrize("l", [0, 1])
    def test_planewise_identity(self, cube, l):
        assert planewise_homology_identity(cube, l)

    def test_non_commuting_rejected(self):
        dims = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1}
        with pytest.raises(InvalidStructure):
            TripleComplex(3, dims, (1, 1, 0), {(0, 0, 0): [[1]], (0, 1, 0): [[1]]},
                          {(0, 0, 0): [[1]], (1, 0, 0): [[2]]}, {})


# ---------------------------------------------------------------------------
# Horseshoe and CE-resolutions
# ---------------------------------------------------------------------------

class TestHorseshoe:

    def test_norm_sequence(self, f2c2):
        k, r = trivial_module(f2c2), regular_module(f2c2)
        ses = ShortExactSequence(k, r, k, np.array([[1, 1]]), np.array([[1], [1]]))
        res = injective_resolution(k, "local-socle", length=3)
        shoe = horseshoe(ses, res, res)
        assert shoe.resolution.dims() == [4, 4, 4, 4]
        assert shoe.inclusion(0).shape == (2, 4)
        assert shoe.projection(0).shape == (4, 2)

    def test_not_exact(self, f2c2):
        k, r = trivial_module(f2c2), regular_module(f2c2)
        ses = ShortExactSequence(k, r, k, np.array([[1, 0]]), np.array([[1], [1]]))
        with pytest.raises(NotShortExact):
            ses.check()

    def test_resolution_map_identity(self, f2c2):
        k = trivial_module(f2c2)
        src = injective_resolution(k, "local-socle", length=3)
        tgt = injective_resolution(k, "coinduced", length=3)
        assert len(lift_map_to_resolutions(identity(1), src, tgt)) == 4
        assert is_quasiiso(resolution_map(identity(1), src, tgt), degrees=[0, 1, 2])


class TestCEResolution:

    def test_validates(self, augmentation_complex):
        ce = ce_resolution(augmentation_complex, InjResProvider("local-socle"), 3)
        ce.validate()
        assert ce.carrier.window == (3, 1)

    def test_total_is_quasiisomorphic_to_source(self, augmentation_complex):
        ce = ce_resolution(augmentation_complex, InjResProvider("local-socle"), 4)
        hd = homology_dims(total(ce.carrier))
        assert [hd[n] for n in range(3)] == [1, 0, 0]

    def test_identity_lifts(self, augmentation_complex):
        ce = ce_resolution(augmentation_complex, InjResProvider("local-socle"), 3)
        f = lift_map_to_ce(ComplexMap.identity(augmentation_complex), ce, ce)
        assert f.component(0, 0).shape[0] == ce.carrier.dim(0, 0)

    def test_needs_modules(self):
        with pytest.raises(ProviderFailure):
            ce_resolution(CochainComplex(2, 0, [1, 1], {0: [[1]]}), InjResProvider("coinduced"), 2)
