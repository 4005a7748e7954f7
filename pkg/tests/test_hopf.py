"""
tests/test_hopf.py — Hopf algebras, normal subalgebras and the Hom_K adjunction.

Tests: axiom and identity suite on F2[C2], F2[C4], F3[S3]; normality
detection; quotient H̄; Φ/Ψ and α/β inverse pairs with naturality.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import (
    cyclic_group,
    group_algebra,
    regular_module,
    symmetric_group_3,
    trivial_module,
    zero_module,
)
from src.checks import all_passed, failures
from src.config import NATURALITY_SAMPLES, RANDOM_SEED
from src.errors import InvalidStructure, NotNormal
from src.hopf import (
    FixedPointModule,
    HomKModule,
    HopfAlgebra,
    HopfAxiomChecker,
    NormalHopfSubalgebra,
    adjunction_alpha_beta,
    group_hopf,
    phi_psi,
    subgroup_span,
)
from src.linalg import FieldSpec, identity, mat_mul


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def c4_hopf():
    return group_hopf(cyclic_group(4), FieldSpec(2))


@pytest.fixture(scope="module")
def c4_nk(c4_hopf):
    return NormalHopfSubalgebra(c4_hopf, subgroup_span(c4_hopf, [0, 2]))


@pytest.fixture(scope="module")
def s3_hopf():
    return group_hopf(symmetric_group_3(), FieldSpec(3))


# ---------------------------------------------------------------------------
# Axioms and identities
# ---------------------------------------------------------------------------

class TestHopfIdentities:

    @pytest.mark.parametrize("n", [2, 4])
    def test_cyclic_over_f2(self, n):
        results = HopfAxiomChecker(group_hopf(cyclic_group(n), FieldSpec(2))).check_all()
        assert all_passed(results), [str(r) for r in failures(results)]

    def test_s3_over_f3(self, s3_hopf):
        results = HopfAxiomChecker(s3_hopf).check_all()
        assert len(results) == 17
        assert all_passed(results), [str(r) for r in failures(results)]

    @pytest.mark.parametrize("p", [2, 3])
    def test_adjoint_identities_noncommutative(self, p):
        results = HopfAxiomChecker(group_hopf(symmetric_group_3(), FieldSpec(p))).check_identities()
        by_name = {r.name: r.passed for r in results}
        assert by_name["(6) adjoint-left"]
        assert by_name["(6') adjoint-right"]

    def test_wrong_antipode_rejected(self):
        algebra = group_algebra(cyclic_group(4), FieldSpec(2))
        d = np.zeros((4, 4, 4), dtype=np.int64)
        for x in range(4):
            d[x, x, x] = 1
        with pytest.raises(InvalidStructure):
            HopfAlgebra(algebra, np.ones(4, dtype=np.int64), d, identity(4))

    def test_wrong_antipode_reported(self):
        algebra = group_algebra(cyclic_group(4), FieldSpec(2))
        d = np.zeros((4, 4, 4), dtype=np.int64)
        for x in range(4):
            d[x, x, x] = 1
        h = HopfAlgebra(algebra, np.ones(4, dtype=np.int64), d, identity(4), check=False)
        failed = {r.name for r in failures(HopfAxiomChecker(h).check_axioms())}
        assert "antipode-left" in failed
        assert "antipode-right" in failed

    def test_group_hopf_reuses_algebra(self):
        algebra = group_algebra(cyclic_group(2), FieldSpec(2))
        assert group_hopf(cyclic_group(2), FieldSpec(2), algebra=algebra).algebra is algebra


# ---------------------------------------------------------------------------
# Normal Hopf subalgebras
# ---------------------------------------------------------------------------

class TestNormalSubalgebra:

    def test_c2_in_c4(self, c4_nk):
        assert c4_nk.dim == 2
        hbar = c4_nk.quotient.hbar
        assert hbar.dim == 2
        assert hbar.algebra.group is not None
        assert hbar.algebra.group.order == 2

    def test_quotient_is_hopf(self, c4_nk):
        assert all_passed(HopfAxiomChecker(c4_nk.quotient.hbar).check_all())

    def test_a3_in_s3(self, s3_hopf):
        nk = NormalHopfSubalgebra(s3_hopf, subgroup_span(s3_hopf, [0, 3, 4]))
        assert nk.quotient.hbar.dim == 2

    def test_transposition_not_normal(self, s3_hopf):
        with pytest.raises(NotNormal):
            NormalHopfSubalgebra(s3_hopf, subgroup_span(s3_hopf, [0, 1]))

    def test_augmentation_ideal(self, c4_nk):
        assert c4_nk.augmentation_ideal().dim == 1


# ---------------------------------------------------------------------------
# Module structures on Hom_K and fixed points
# ---------------------------------------------------------------------------

class TestHomK:

    def test_hom_k_dims(self, c4_hopf, c4_nk):
        h = c4_hopf.algebra
        hk = HomKModule(regular_module(h), trivial_module(h), c4_nk)
        assert hk.dim == 2
        assert hk.module.algebra is c4_nk.quotient.hbar.algebra

    @pytest.mark.parametrize("zero_first", [False, True])
    def test_hom_k_with_zero_module(self, c4_hopf, c4_nk, zero_first):
        h = c4_hopf.algebra
        n, m = (zero_module(h), trivial_module(h)) if zero_first else (trivial_module(h), zero_module(h))
        hk = HomKModule(n, m, c4_nk)
        assert hk.dim == 0
        assert hk.module.dim == 0
        assert hk.module.action.shape == (c4_nk.quotient.hbar.dim, 0, 0)
        assert hk.coordinates(np.zeros((0, n.dim, m.dim), dtype=np.int64)).shape == (0, 0)

    def test_fixed_points(self, c4_hopf, c4_nk):
        fp = FixedPointModule(regular_module(c4_hopf.algebra), c4_nk)
        assert fp.module.dim == 2
        fp.module.check()

    @pytest.mark.parametrize("which", ["trivial", "regular"])
    def test_phi_psi_inverse(self, c4_hopf, c4_nk, which):
        h = c4_hopf.algebra
        m = trivial_module(h) if which == "trivial" else regular_module(h)
        phi, psi = phi_psi(m, c4_nk)
        assert np.array_equal(mat_mul(phi, psi, 2), identity(phi.shape[0]))
        assert np.array_equal(mat_mul(psi, phi, 2), identity(psi.shape[0]))

    def test_adjunction(self, c4_hopf, c4_nk):
        h = c4_hopf.algebra
        hbar = c4_nk.quotient.hbar.algebra
        adj = adjunction_alpha_beta(regular_module(hbar), regular_module(h), trivial_module(h), c4_nk,
                                    rng=np.random.default_rng(RANDOM_SEED), samples=NATURALITY_SAMPLES)
        assert adj.left_dim == adj.right_dim
        assert np.array_equal(mat_mul(adj.alpha, adj.beta, 2), identity(adj.left_dim))
        assert len(adj.naturality) == 3 * NATURALITY_SAMPLES
        assert all_passed(adj.naturality)

    def test_adjunction_s3(self, s3_hopf):
        nk = NormalHopfSubalgebra(s3_hopf, subgroup_span(s3_hopf, [0, 3, 4]))
        h = s3_hopf.algebra
        hbar = nk.quotient.hbar.algebra
        adj = adjunction_alpha_beta(trivial_module(hbar), regular_module(h), trivial_module(h), nk,
                                    rng=np.random.default_rng(RANDOM_SEED), samples=2)
        assert all_passed(adj.naturality)
