"""
tests/test_linalg.py — Exact linear algebra over GF(p).

Tests: FieldSpec, rref/rank, solve, kernel/image, Subspace operations,
Subquotient coordinates and induced maps.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.config import RANDOM_SEED
from src.errors import DimensionMismatch, InvalidStructure, NotContained, NotWellDefined
from src.linalg import (
    FieldSpec,
    Subquotient,
    Subspace,
    identity,
    image_basis,
    induced_map_on_subquotients,
    kernel_basis,
    mat_mul,
    random_matrix,
    rank,
    rref,
    solve,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(RANDOM_SEED)


@pytest.fixture(scope="module")
def corpus(rng):
    """Random matrices over GF(2), GF(3) and GF(5)."""
    out = []
    for p in (2, 3, 5):
        for _ in range(15):
            rows, cols = rng.integers(1, 7, size=2)
            out.append((p, random_matrix(rng, int(rows), int(cols), p)))
    return out


# ---------------------------------------------------------------------------
# Fields and row reduction
# ---------------------------------------------------------------------------

class TestFieldSpec:

    def test_prime_accepted(self):
        assert FieldSpec(7).p == 7
        assert int(FieldSpec(3)) == 3

    @pytest.mark.parametrize("bad", [0, 1, 4, 9, 15])
    def test_non_prime_rejected(self, bad):
        with pytest.raises(InvalidStructure):
            FieldSpec(bad)

    def test_inverse(self):
        f = FieldSpec(5)
        assert all((a * f.inverse(a)) % 5 == 1 for a in range(1, 5))
        with pytest.raises(ZeroDivisionError):
            f.inverse(0)


class TestRowReduction:

    def test_rref_of_identity(self):
        r, piv = rref(identity(3), 3)
        assert np.array_equal(r, identity(3))
        assert piv == [0, 1, 2]

    def test_rank_known(self):
        m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert rank(m, 2) == 2
        assert rank(m, 3) == 3

    def test_rank_empty(self):
        assert rank(np.zeros((0, 4), dtype=np.int64), 2) == 0

    def test_rank_transpose_invariant(self, corpus):
        for p, m in corpus:
            assert rank(m, p) == rank(m.T, p)

    def test_mat_mul_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mat_mul(identity(2), identity(3), 2)

    def test_mat_mul_reduces(self):
        a = np.array([[2, 2]])
        b = np.array([[2], [2]])
        assert mat_mul(a, b, 3)[0, 0] == 8 % 3


class TestSolve:

    def test_solution_checks(self, corpus, rng):
        for p, a in corpus:
            x = random_matrix(rng, 2, a.shape[0], p)
            b = mat_mul(x, a, p)
            y = solve(a, b, p)
            assert y is not None
            assert np.array_equal(mat_mul(y, a, p), b)

    def test_no_solution_returns_none(self):
        a = np.array([[1, 0]])
        assert solve(a, np.array([[0, 1]]), 2) is None


# ---------------------------------------------------------------------------
# Kernels, images and subspaces
# ---------------------------------------------------------------------------

class TestKernelImage:

    def test_rank_nullity(self, corpus):
        for p, m in corpus:
            k = kernel_basis(m, p)
            assert k.dim + rank(m, p) == m.shape[0]
            assert not np.any(mat_mul(k.basis, m, p))

    def test_image_dim_is_rank(self, corpus):
        for p, m in corpus:
            assert image_basis(m, p).dim == rank(m, p)


class TestSubspace:

    def test_span_is_rref(self):
        s = Subspace.span([[1, 1, 0], [1, 0, 0]], 2)
        assert s.dim == 2
        assert np.array_equal(s.basis, np.array([[1, 0, 0], [0, 1, 0]]))

    def test_sum_and_intersection_dims(self, corpus, rng):
        for p, m in corpus:
            n = m.shape[1]
            u = Subspace.span(m, p, n)
            v = Subspace.span(random_matrix(rng, 3, n, p), p, n)
            assert u.sum(v).dim + u.intersect(v).dim == u.dim + v.dim

    def test_contains(self):
        full = Subspace.full(3, 2)
        line = Subspace.span([[1, 1, 0]], 2)
        assert full.contains(line)
        assert not line.contains(full)

    def test_coordinates_round_trip(self):
        s = Subspace.span([[1, 0, 1], [0, 1, 1]], 3)
        c = s.coordinates([[2, 1, 0]])
        assert np.array_equal(mat_mul(c, s.basis, 3), np.array([[2, 1, 0]]))

    def test_coordinates_outside_raises(self):
        s = Subspace.span([[1, 0, 0]], 2)
        with pytest.raises(NotContained):
            s.coordinates([[0, 1, 0]])

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Subspace.full(2, 2).sum(Subspace.full(3, 2))

    def test_equality_is_canonical(self):
        a = Subspace.span([[1, 1], [0, 1]], 2)
        b = Subspace.full(2, 2)
        assert a == b
        assert hash(a) == hash(b)


# ---------------------------------------------------------------------------
# Subquotients
# ---------------------------------------------------------------------------

class TestSubquotient:

    def test_dim(self):
        num = Subspace.full(3, 2)
        den = Subspace.span([[1, 1, 1]], 2)
        sq = Subquotient(num, den)
        assert sq.dim == 2

    def test_denominator_must_be_inside(self):
        with pytest.raises(NotContained):
            Subquotient(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2))

    def test_coords_kill_denominator(self):
        sq = Subquotient(Subspace.full(3, 3), Subspace.span([[1, 2, 0]], 3))
        assert not np.any(sq.coords([[1, 2, 0]]))
        assert np.array_equal(sq.coords(sq.lift(identity(2))), identity(2))

    def test_induced_identity(self):
        sq = Subquotient(Subspace.full(3, 2), Subspace.span([[0, 0, 1]], 2))
        assert np.array_equal(induced_map_on_subquotients(identity(3), sq, sq), identity(2))

    def test_induced_not_well_defined(self):
        src = Subquotient(Subspace.full(2, 2), Subspace.zero(2, 2))
        tgt = Subquotient(Subspace.span([[1, 0]], 2), Subspace.zero(2, 2))
        with pytest.raises(NotWellDefined):
            induced_map_on_subquotients(identity(2), src, tgt)
