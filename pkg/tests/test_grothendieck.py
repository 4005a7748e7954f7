"""
tests/test_grothendieck.py — Derived functors and the Grothendieck spectral sequence.

Tests: derived functor dims for small cyclic groups, acyclicity hypotheses
and waivers, the spectral sequence of ((−)^K, (−)^{H̄}) over C4 ⊇ C2 with
its E₂ and abutment identified, provider independence and induced maps.
"""

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, group_algebra, regular_module, trivial_module
from src.checks import CheckResult, all_passed, failures
from src.errors import HypothesisFailed
from src.functors import FixedPoints, HomInto, Identity, Invariants
from src.grothendieck import (
    check_acyclic_resolution,
    derived_dims,
    derived_functor,
    derived_module,
    enforce_hypotheses,
    grothendieck_ss,
    gss_map,
    identify_e2_and_abutment,
    provider_comparison,
)
from src.hopf import NormalHopfSubalgebra, group_hopf, subgroup_span
from src.linalg import FieldSpec, identity
from src.spectral import proper_iso_check


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def hopf():
    return group_hopf(cyclic_group(4), FieldSpec(2))


@pytest.fixture(scope="module")
def nk(hopf):
    return NormalHopfSubalgebra(hopf, subgroup_span(hopf, [0, 2]))


@pytest.fixture(scope="module")
def functors(nk):
    return FixedPoints(nk), Invariants(nk.quotient.hbar.algebra)


@pytest.fixture(scope="module")
def gss(hopf, functors):
    f, g = functors
    return grothendieck_ss(trivial_module(hopf.algebra), f, g, degree=1)


# ---------------------------------------------------------------------------
# Derived functors
# ---------------------------------------------------------------------------

class TestDerivedFunctors:

    @pytest.mark.parametrize("order", [2, 4])
    def test_invariants_of_trivial(self, order):
        a = group_algebra(cyclic_group(order), FieldSpec(2))
        assert derived_dims(Invariants(a), trivial_module(a), 2) == [1, 1, 1]

    def test_regular_is_acyclic(self, hopf):
        a = hopf.algebra
        assert derived_dims(Invariants(a), regular_module(a), 2) == [1, 0, 0]

    def test_contravariant_uses_projectives(self, hopf):
        k = trivial_module(hopf.algebra)
        assert derived_dims(HomInto(k), k, 2, kind="free") == [1, 1, 1]

    def test_single_degree(self, hopf):
        value = derived_functor(Invariants(hopf.algebra), trivial_module(hopf.algebra), 1)
        assert value.degree == 1
        assert value.dim == 1

    def test_negative_degree(self, hopf):
        with pytest.raises(ValueError):
            derived_functor(Identity(), trivial_module(hopf.algebra), -1)

    def test_derived_module_lands_in_quotient(self, hopf, nk, functors):
        f, _ = functors
        h1 = derived_module(f, trivial_module(hopf.algebra), 1)
        assert h1.dim == 1
        assert h1.algebra is nk.quotient.hbar.algebra


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------

class TestHypotheses:

    def test_trivial_entry_is_not_acyclic(self, hopf, functors):
        f, g = functors
        results = check_acyclic_resolution([trivial_module(hopf.algebra)], f, g)
        assert [r.name for r in failures(results)] == ["A1", "A2", "A3"]
        assert results[-1].name == "A1-and-A3-imply-A2"
        assert results[-1].passed

    def test_regular_entry_is_acyclic(self, hopf, functors):
        f, g = functors
        assert all_passed(check_acyclic_resolution([regular_module(hopf.algebra)], f, g))

    def test_enforce_raises(self):
        results = [CheckResult(name="A1", passed=True), CheckResult(name="A2", passed=False)]
        with pytest.raises(HypothesisFailed) as exc:
            enforce_hypotheses(results)
        assert exc.value.condition == "A2"

    @pytest.mark.parametrize("waive", [True, ["A2"]])
    def test_enforce_waives(self, waive):
        results = [CheckResult(name="A2", passed=False)]
        enforce_hypotheses(results, waive)
        assert results[0].waived

    def test_partial_waiver(self):
        results = [CheckResult(name="A2", passed=False), CheckResult(name="A3", passed=False)]
        with pytest.raises(HypothesisFailed):
            enforce_hypotheses(results, ["A2"])


# ---------------------------------------------------------------------------
# The spectral sequence
# ---------------------------------------------------------------------------

class TestSpectralSequence:

    def test_hypotheses_hold(self, gss):
        assert gss.hypotheses
        assert all_passed(gss.hypotheses)

    def test_provenance(self, gss):
        assert gss.provenance["resolution"] == "injective"
        assert gss.provenance["resolution_dims"] == [4] * 5
        assert gss.trusted_degree >= 1

    def test_e2_page(self, gss):
        page = gss.page(2, 1)
        assert [page.dim(0, 0), page.dim(1, 0), page.dim(0, 1)] == [1, 1, 1]

    def test_abutment(self, gss):
        assert gss.abutment_dims(1) == [1, 1]

    def test_identification(self, gss):
        results = identify_e2_and_abutment(gss, 1)
        assert len([r for r in results if r.name == "abutment"]) == 2
        assert all_passed(results)

    def test_contravariant_outer_rejected(self, hopf):
        k = trivial_module(hopf.algebra)
        with pytest.raises(ValueError):
            grothendieck_ss(k, Identity(), HomInto(k), 1)

    def test_provider_independence(self, hopf, functors):
        f, g = functors
        assert all_passed(provider_comparison(trivial_module(hopf.algebra), f, g, 1))

    def test_identity_induces_proper_iso(self, gss):
        fm = gss_map(identity(1), gss, gss)
        report = proper_iso_check(fm, values=[-1, 0], shifts=[0, 1])
        assert report.iso
