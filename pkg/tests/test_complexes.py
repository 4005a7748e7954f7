"""
tests/test_complexes.py — Windowed cochain complexes, homology and purity.

Tests: construction guards, homology dims and modules, Euler characteristic,
shift signs, quasiisomorphisms, direct sums, connecting maps and the purity
conditions on split and non-split short exact sequences.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, group_algebra, regular_module, trivial_module
from src.complexes import (
    CochainComplex,
    ComplexMap,
    conc,
    connecting_map,
    direct_sum_complexes,
    euler_characteristic,
    homology,
    homology_dims,
    homology_module,
    is_acyclic,
    is_pure,
    is_quasiiso,
    purity_check,
    shift,
)
from src.errors import DimensionMismatch, InvalidStructure, NotShortExact
from src.linalg import FieldSpec


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def two_step():
    """k² → k² of rank one: H^0 = H^1 = k."""
    return CochainComplex(2, 0, [2, 2], {0: [[1, 0], [0, 0]]})


@pytest.fixture
def nonsplit():
    """0 → k[−1] → (k ≅ k) → k → 0 with a nonzero connector."""
    sub = CochainComplex(2, 1, [1])
    mid = CochainComplex(2, 0, [1, 1], {0: [[1]]})
    quo = CochainComplex(2, 0, [1])
    f = ComplexMap(sub, mid, {1: [[1]]})
    g = ComplexMap(mid, quo, {0: [[1]]})
    return f, g


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

class TestConstruction:

    def test_window(self, two_step):
        assert two_step.window == (0, 1)
        assert two_step.dim(5) == 0
        assert two_step.d(1).shape == (2, 0)

    def test_d_squared_rejected(self):
        with pytest.raises(InvalidStructure):
            CochainComplex(2, 0, [1, 1, 1], {0: [[1]], 1: [[1]]})

    def test_nonzero_outside_window_rejected(self):
        with pytest.raises(DimensionMismatch):
            CochainComplex(2, 0, [1], {0: [[1]]})

    def test_non_module_map_rejected(self):
        a = group_algebra(cyclic_group(2), FieldSpec(2))
        with pytest.raises(InvalidStructure):
            CochainComplex.from_modules([trivial_module(a), regular_module(a)], {0: [[1, 0]]})

    def test_truncate(self, two_step):
        t = two_step.truncate(1, 4)
        assert t.window == (1, 1)
        assert t.dims() == [2]


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

class TestHomology:

    def test_dims(self, two_step):
        assert homology_dims(two_step) == {0: 1, 1: 1}
        assert homology(two_step, 0).dim == 1

    def test_acyclic(self):
        assert is_acyclic(CochainComplex(3, 0, [1, 1], {0: [[2]]}))

    def test_euler(self, two_step):
        chi_x, chi_h = euler_characteristic(two_step)
        assert chi_x == chi_h == 0

    def test_homology_module(self):
        a = group_algebra(cyclic_group(2), FieldSpec(2))
        x = CochainComplex.from_modules([regular_module(a), trivial_module(a)], {0: [[1], [1]]})
        h0 = homology_module(x, 0)
        assert h0.dim == 1
        assert np.array_equal(h0.action, trivial_module(a).action)
        assert homology_dims(x)[1] == 0

    def test_homology_module_needs_modules(self, two_step):
        with pytest.raises(InvalidStructure):
            homology_module(two_step, 0)

    def test_shift_sign(self):
        x = CochainComplex(3, 0, [1, 1], {0: [[1]]})
        y = shift(x, 1)
        assert y.window == (-1, 0)
        assert y.d(-1)[0, 0] == 2
        assert shift(x, 2).d(-2)[0, 0] == 1

    def test_conc(self):
        c = conc(3, p=5)
        assert c.window == (0, 0)
        assert c.dim(0) == 3


class TestMaps:

    def test_identity_is_quasiiso(self, two_step):
        assert is_quasiiso(ComplexMap.identity(two_step))

    def test_zero_is_not_quasiiso(self, two_step):
        assert not is_quasiiso(ComplexMap.zero(two_step, two_step))

    def test_non_chain_map_rejected(self, two_step):
        with pytest.raises(InvalidStructure):
            ComplexMap(two_step, two_step, {0: [[1, 0], [0, 1]]})

    def test_direct_sum(self, two_step):
        total, incs, projs = direct_sum_complexes([two_step, two_step])
        assert total.dims() == [4, 4]
        assert homology_dims(total) == {0: 2, 1: 2}
        for inc, proj in zip(incs, projs):
            assert is_quasiiso(inc.then(proj))


# ---------------------------------------------------------------------------
# Short exact sequences
# ---------------------------------------------------------------------------

class TestPurity:

    def test_connector_nonzero(self, nonsplit):
        f, g = nonsplit
        assert connecting_map(f, g, 0).shape == (1, 1)
        assert connecting_map(f, g, 0)[0, 0] == 1

    def test_nonsplit_is_impure(self, nonsplit):
        f, g = nonsplit
        results = purity_check(f, g)
        assert not any(r.passed for r in results[:-1])
        assert results[-1].passed
        assert not is_pure(f, g)

    def test_split_is_pure(self, two_step):
        total, incs, projs = direct_sum_complexes([two_step, two_step])
        results = purity_check(incs[0], projs[1])
        assert all(r.passed for r in results)
        assert is_pure(incs[0], projs[1])

    def test_not_exact_rejected(self, two_step):
        with pytest.raises(NotShortExact):
            purity_check(ComplexMap.identity(two_step), ComplexMap.identity(two_step))
