"""
tests/test_spectral.py — Spectral objects of filtered complexes.

Tests: index validity and ordering, the first filtration of a double
complex, classical pages on a zigzag with a nonzero d₂, fundamental short
exact sequences, the exact couple, trust guards and proper isomorphisms.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.bicomplex import DoubleComplex, DoubleComplexMap
from src.checks import all_passed
from src.complexes import homology_dims
from src.errors import InvalidStructure, UntrustedRegionRequested
from src.linalg import identity, rank
from src.spectral import (
    INF,
    EntryIndex,
    FilteredComplex,
    FilteredMap,
    PosetIndex,
    QuotientIndex,
    classical_page,
    exact_couple_check,
    first_filtration,
    first_filtration_map,
    fundamental_ses_check,
    page_homology_dims,
    page_label,
    proper_iso_check,
    proper_restriction,
    rowwise_quasiiso_check,
    ssdc1_identification,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def zigzag():
    """
    X^{0,1} —δ→ X^{1,1} ←d— X^{1,0} —δ→ X^{2,0}, all k and all maps the
    identity: E₂ has k at (0,1) and (2,0), d₂ between them is invertible.
    """
    one = [[1]]
    return DoubleComplex(3, [[0, 1], [1, 1], [1, 0]], {(1, 0): one}, {(0, 1): one, (1, 0): one})


@pytest.fixture(scope="module")
def zigzag_filtered(zigzag):
    return first_filtration(zigzag, trusted_degree=3)


@pytest.fixture(scope="module")
def grid():
    """k in every position of [0,4]², all differentials zero."""
    return DoubleComplex(2, [[1] * 5 for _ in range(5)])


# ---------------------------------------------------------------------------
# Indices
# ---------------------------------------------------------------------------

class TestIndices:

    def test_poset_order(self):
        assert PosetIndex(5) < PosetIndex(-3, 1)
        assert PosetIndex(-INF) < PosetIndex(0) < PosetIndex(INF)
        assert str(PosetIndex(2, 1)) == "2^{+1}"

    def test_quotient_index_guard(self):
        with pytest.raises(InvalidStructure):
            QuotientIndex(PosetIndex(0), PosetIndex(2))

    def test_quotient_shift(self):
        q = QuotientIndex(PosetIndex(1), PosetIndex(0))
        assert q.shifted(1) == QuotientIndex(PosetIndex(0, 1), PosetIndex(1))
        assert q.shifted(2) == QuotientIndex(PosetIndex(1, 1), PosetIndex(0, 1))
        assert q.shifted(2).normalized() == (0, 1, 2)

    def test_entry_index_guard(self):
        with pytest.raises(InvalidStructure):
            EntryIndex.make(0, 1, 0, -1)

    def test_dotted(self):
        assert EntryIndex.make(1, -1, 0, -2).is_dotted
        assert not EntryIndex.make(0, 0, 0, -1).is_dotted

    def test_page_label(self):
        assert page_label(INF) == "inf"
        assert page_label(3) == "3"


# ---------------------------------------------------------------------------
# Filtered complexes
# ---------------------------------------------------------------------------

class TestFilteredComplex:

    def test_raising_filtration_rejected(self):
        with pytest.raises(InvalidStructure):
            FilteredComplex(2, 0, 1, {0: [(0, 1)], 1: [(1, 1)]}, {0: [[1]]})

    def test_underlying_is_total(self, zigzag_filtered):
        assert zigzag_filtered.underlying().dims() == [0, 2, 2, 0]
        assert homology_dims(zigzag_filtered.underlying()) == {0: 0, 1: 0, 2: 0, 3: 0}

    def test_default_trust(self, grid):
        assert first_filtration(grid).trusted_degree == 3


# ---------------------------------------------------------------------------
# Pages
# ---------------------------------------------------------------------------

class TestPages:

    def test_e1_and_e2(self, zigzag_filtered):
        for r in (1, 2):
            page = classical_page(zigzag_filtered, r, 2, differentials=False)
            assert {k: v for k, v in page.dims.items() if v} == {(0, 1): 1, (2, 0): 1}

    def test_d2_is_invertible(self, zigzag_filtered):
        page = classical_page(zigzag_filtered, 2, 2)
        d = page.differentials[(0, 1)]
        assert d.shape == (1, 1)
        assert rank(d, 3) == 1

    @pytest.mark.parametrize("r", [3, INF])
    def test_later_pages_vanish(self, zigzag_filtered, r):
        page = classical_page(zigzag_filtered, r, 2)
        assert not any(page.dims.values())

    def test_page_homology_is_next_page(self, zigzag_filtered):
        e2 = classical_page(zigzag_filtered, 2, 2)
        e3 = classical_page(zigzag_filtered, 3, 2)
        for key, v in page_homology_dims(e2, 3).items():
            assert v == e3.dim(*key)

    def test_grid_is_degenerate(self, grid):
        x = first_filtration(grid)
        e2 = classical_page(x, 2, 3)
        einf = classical_page(x, INF, 3)
        assert e2.dims == einf.dims
        assert einf.total_dims() == {0: 1, 1: 2, 2: 3, 3: 4}

    def test_untrusted_degree(self, grid):
        with pytest.raises(UntrustedRegionRequested):
            classical_page(first_filtration(grid), 2, 5)


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------

class TestStructure:

    def test_fundamental_sequences(self, zigzag_filtered):
        assert all_passed(fundamental_ses_check(zigzag_filtered, -2, -1, 0, 1, 2, k=1))

    def test_exact_couple(self, zigzag_filtered):
        assert all_passed(exact_couple_check(zigzag_filtered, 2, 1, 0))

    @pytest.mark.parametrize("alpha,k", [(0, 1), (-1, 1)])
    @pytest.mark.parametrize("which", ["E1", "E2"])
    def test_first_filtration_identification(self, zigzag, alpha, k, which):
        assert ssdc1_identification(zigzag, alpha, k, which)

    def test_unknown_identification(self, zigzag):
        with pytest.raises(ValueError):
            ssdc1_identification(zigzag, 0, 1, "E3")

    def test_proper_restriction_is_trusted(self, zigzag_filtered):
        pss = proper_restriction(zigzag_filtered, values=[-1, 0], shifts=[0, 1])
        assert pss.indices
        assert all(v >= 0 for v in pss.dims().values())


class TestMaps:

    def test_identity_is_proper_iso(self, zigzag, zigzag_filtered):
        n = zigzag_filtered.hi
        f = FilteredMap(zigzag_filtered, zigzag_filtered,
                        {i: identity(zigzag_filtered.dim(i)) for i in range(n + 1)})
        report = proper_iso_check(f, values=[-1, 0], shifts=[0, 1])
        assert report.iso
        assert report.criterion
        assert report.consistent
        assert report.checked > 0

    def test_first_filtration_map(self, zigzag, zigzag_filtered):
        comps = {(i, j): identity(zigzag.dim(i, j)) for i in range(3) for j in range(2)}
        f = DoubleComplexMap(zigzag, zigzag, comps)
        fm = first_filtration_map(f, zigzag_filtered, zigzag_filtered)
        assert np.array_equal(fm.component(1), identity(2))
        assert rowwise_quasiiso_check(f)
