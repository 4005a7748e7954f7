"""
tests/test_comparison.py — First and second comparison pipelines.

Tests: report bookkeeping, the first comparison for Hom_A(−, =) checked
against Ext and for Hom_K over C4 ⊇ C2, the second comparison along two
changes of rings, and naturality in either slot, along Hom_A → Hom_k and
of the second comparison in X.
"""

import json
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import cyclic_group, group_algebra, regular_module, trivial_module
from src.checks import CheckResult
from src.comparison import (
    ComparisonReport,
    EntryRecord,
    build_second_chain,
    change_of_rings_instance,
    ext_instance,
    first_comparison,
    haas_naturality,
    second_naturality,
    second_report,
    transformation_naturality,
    window,
)
from src.functors import CoinducedAlong, HomBifunctor, HomFrom, HomInclusion, HomKBifunctor, scalars, space
from src.grothendieck import abutment_index
from src.hopf import NormalHopfSubalgebra, group_hopf, subgroup_span
from src.linalg import FieldSpec
from src.spectral import entry_dim


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def f2c2():
    return group_algebra(cyclic_group(2), FieldSpec(2))


@pytest.fixture(scope="module")
def ext_report(f2c2):
    k = trivial_module(f2c2)
    return ext_instance(f2c2, k, k, degree=1)


@pytest.fixture
def bookkeeping():
    return ComparisonReport(
        name="toy", instance={"degree": 1}, sides=["a", "b"], arrows=["f"],
        entries=[EntryRecord("e1", [1, 1], [True]), EntryRecord("e2", [0, 0], [True])],
    )


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class TestReport:

    def test_window(self):
        values, shifts = window(2)
        assert list(values) == [-3, -2, -1, 0]
        assert list(shifts) == [0, 1, 2]

    def test_verdict(self, bookkeeping):
        assert bookkeeping.arrows_hold
        assert bookkeeping.dims_agree()
        assert bookkeeping.verdict

    def test_broken_arrow(self, bookkeeping):
        bookkeeping.entries.append(EntryRecord("e3", [1, 2], [False]))
        assert not bookkeeping.arrows_hold
        assert not bookkeeping.dims_agree()
        assert bookkeeping.dims_agree(sides=[0])
        assert not bookkeeping.verdict

    def test_failed_check_spoils_verdict(self, bookkeeping):
        bookkeeping.checks.append(CheckResult(name="oracle", passed=False))
        assert bookkeeping.arrows_hold
        assert not bookkeeping.verdict

    def test_to_dict(self, bookkeeping):
        doc = bookkeeping.to_dict()
        assert doc["verdict"] is True
        assert doc["entries"][0] == {"index": "e1", "dims": [1, 1], "arrows": [True]}
        json.dumps(doc)


# ---------------------------------------------------------------------------
# First comparison
# ---------------------------------------------------------------------------

class TestFirstComparison:

    def test_sides(self, ext_report):
        assert ext_report.sides == ["F(X,-)", "middle", "F(-,X')"]
        assert ext_report.arrows == ["lambda", "rho"]

    def test_hypotheses_hold(self, ext_report):
        names = {r.name for r in ext_report.hypotheses}
        assert {"d-left-quasiiso", "d-right-quasiiso", "biadditive"} <= names
        assert all(r.passed for r in ext_report.hypotheses)

    def test_entries_are_isomorphic(self, ext_report):
        assert ext_report.entries
        assert ext_report.arrows_hold
        assert ext_report.dims_agree()

    def test_ext_oracle(self, ext_report):
        oracle = [r for r in ext_report.checks if r.name == "oracle"]
        assert len(oracle) == 4
        assert all(r.passed for r in oracle)
        assert ext_report.verdict

    def test_pages_attached(self, ext_report):
        assert set(ext_report.pages) == set(ext_report.sides)
        assert ext_report.pages["F(-,X')"].dim(0, 1) == 1

    def test_serializable(self, ext_report):
        doc = ext_report.to_dict()
        assert doc["name"] == "first-comparison"
        json.dumps(doc, default=str)


# ---------------------------------------------------------------------------
# Second comparison and naturality
# ---------------------------------------------------------------------------

class TestSecondComparison:

    def test_change_of_rings(self, f2c2):
        f2c4 = group_algebra(cyclic_group(4), FieldSpec(2))
        phi = np.zeros((2, 4), dtype=np.int64)
        phi[0, 0] = phi[1, 2] = 1
        report = change_of_rings_instance(phi, f2c2, f2c4, trivial_module(f2c2), trivial_module(f2c4), 1)
        assert report.sides == ["G(B,FA)", "t12", "GSS"]
        assert any(r.name == "planewise-homology" for r in report.checks)
        assert report.verdict

    def test_augmentation_to_field(self, f2c2):
        field_alg = scalars(2)
        phi = f2c2.augmentation.reshape(-1, 1)
        report = change_of_rings_instance(phi, f2c2, field_alg, trivial_module(f2c2), trivial_module(field_alg), 3)
        oracle = [r for r in report.checks if r.name == "oracle"]
        assert len(oracle) == 2 * 4
        assert [r.details["ext"] for r in oracle[:4]] == [1, 1, 1, 1]
        assert all(r.passed for r in oracle)
        assert report.dims_agree()
        assert report.verdict

    def test_chain_reuses_resolution(self, f2c2):
        field_alg = scalars(2)
        f = CoinducedAlong(f2c2.augmentation.reshape(-1, 1), f2c2, field_alg)
        g = HomBifunctor(field_alg)
        y = trivial_module(field_alg)
        one = build_second_chain(f, g, trivial_module(f2c2), y, 1)
        two = build_second_chain(f, g, regular_module(f2c2), y, 1, projective=one.bbar)
        assert two.bbar is one.bbar
        assert one.length == two.length
        report = second_report(two, 1)
        assert report.verdict


class TestNaturality:

    def test_norm_embedding(self, f2c2):
        k, r = trivial_module(f2c2), regular_module(f2c2)
        norm = np.ones((1, 2), dtype=np.int64)
        report = haas_naturality(HomBifunctor(f2c2), HomFrom(space(2, 1)), k, k, r, norm, 1)
        assert report.instance["map_rank"] == 1
        assert report.instance["along"] == "X'"
        assert report.entries
        assert report.verdict

    def test_first_slot(self, f2c2):
        k, r = trivial_module(f2c2), regular_module(f2c2)
        norm = np.ones((1, 2), dtype=np.int64)
        report = haas_naturality(HomBifunctor(f2c2), HomFrom(space(2, 1)), k, k, r, norm, 1, slot="first")
        assert report.instance["along"] == "X"
        assert report.arrows == ["lambda-square", "rho-square"]
        assert report.entries
        assert report.verdict

    def test_unknown_slot(self, f2c2):
        k = trivial_module(f2c2)
        with pytest.raises(ValueError):
            haas_naturality(HomBifunctor(f2c2), HomFrom(space(2, 1)), k, k, k, np.ones((1, 1)), 1, slot="third")

    def test_forgetful_transformation(self, f2c2):
        k = trivial_module(f2c2)
        forget = HomInclusion(HomBifunctor(f2c2), HomBifunctor(f2c2, over=f2c2.unit.reshape(1, -1), name="Hom_k"))
        report = transformation_naturality(forget, HomFrom(space(2, 1)), k, k, 1)
        assert report.instance["target"] == "Hom_k"
        assert any(r.name == "transformation-natural" for r in report.hypotheses)
        assert report.entries
        assert report.verdict

    def test_second_comparison_in_x(self, f2c2):
        field_alg = scalars(2)
        f = CoinducedAlong(f2c2.augmentation.reshape(-1, 1), f2c2, field_alg)
        norm = np.ones((1, 2), dtype=np.int64)
        report = second_naturality(f, HomBifunctor(field_alg), trivial_module(f2c2), regular_module(f2c2),
                                   trivial_module(field_alg), norm, 1)
        assert report.arrows == ["u-square", "v-square"]
        assert len(report.sides) == 6
        assert report.entries
        assert report.verdict


# ---------------------------------------------------------------------------
# Instances at deeper windows
# ---------------------------------------------------------------------------

class TestDeeperWindows:

    def test_ext_instance(self, f2c2):
        k = trivial_module(f2c2)
        report = ext_instance(f2c2, k, k, degree=3)
        oracle = [r for r in report.checks if r.name == "oracle"]
        assert [r.details["ext"] for r in oracle] == [1] * 8
        assert report.verdict

    def test_hopf_instance(self):
        hopf = group_hopf(cyclic_group(4), FieldSpec(2))
        nk = NormalHopfSubalgebra(hopf, subgroup_span(hopf, [0, 2]))
        hbar = nk.quotient.hbar.algebra
        r = trivial_module(hopf.algebra)
        v = HomBifunctor(hbar).fix_first(trivial_module(hbar))
        report = first_comparison(HomKBifunctor(nk), v, r, r, degree=3)
        assert report.verdict
        for side in ("F(X,-)", "F(-,X')"):
            assert [entry_dim(report.spectral[side], abutment_index(n)) for n in range(4)] == [1, 1, 1, 1]
