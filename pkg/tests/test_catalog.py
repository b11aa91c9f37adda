import pytest

from src.algebra_core import check_mvw, classify
from src.catalog import CATALOG, EXCLUDED, boolean, build, check_entry, get_entry, luk, with_product
from src.exceptions import ParseError, PreconditionError
from src.report import Report


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_catalog_entry_classification(entry):
    algebra = entry.build()
    verdict = classify(algebra)
    assert algebra.name == entry.name
    assert verdict.label == entry.label
    if entry.rejected is not None:
        assert verdict.rejected[entry.rejected] == (entry.axiom, entry.witness)
    assert verdict.tower_violations == ()


def test_check_entry_reports_pass():
    report = Report("catalog")
    verdict = check_entry(get_entry("z_rig(10)"), report)
    assert verdict.label == "MVWRig"
    assert report.passed
    assert report.get("catalog.z_rig(10).witness").passed


def test_check_entry_replays_documented_counterexamples():
    report = Report("catalog")
    check_entry(get_entry("z_rig(10)"), report)
    odot = report.get("catalog.z_rig(10).known.pmv_odot_product")
    ominus = report.get("catalog.z_rig(10).known.ominus_distributive")
    assert odot.passed and odot.witness == (2, 2, 3)
    assert ominus.passed and ominus.witness == (2, 7, 6)
    assert "NOTE catalog.z_rig(10).counterexample.ominus_distributive FAILS (2,7,6)" in report.to_lines()


def test_documented_counterexamples_hold_on_z10():
    A = build("z_rig(10)")
    d = A.derived
    assert A.prod[2, d.ominus[7, 6]] == 2
    assert d.ominus[A.prod[2, 7], A.prod[2, 6]] == 0
    assert d.odot[2, 2] == 0
    assert d.odot[A.prod[2, 3], A.prod[2, 3]] == 2


def test_excluded_entries_are_documented():
    assert EXCLUDED
    with pytest.raises(KeyError):
        get_entry("luk closure under product")


class TestBuild:
    def test_rebuild_from_name(self):
        A = build("product(luk(3),boolean(1,inf))")
        assert A.size == 6
        assert build(A.name).same_tables(A)

    @pytest.mark.parametrize("expression", ["nope(3)", "luk(", "luk(1)", "3", "luk(3,bogus)", "luk(n=3)"])
    def test_bad_expressions(self, expression):
        with pytest.raises(ParseError):
            build(expression)

    def test_constructor_preconditions(self):
        with pytest.raises(PreconditionError):
            boolean(6)
        with pytest.raises(PreconditionError):
            boolean(2, "indep_l4")
        with pytest.raises(PreconditionError):
            with_product(luk(3), "indep_l4")


class TestCounterexamples:
    def test_independence_product_fails_only_ominus_subdistributivity(self):
        result = check_mvw(build("luk(4,indep_l4)"), exhaustive=True)
        assert [r.axiom for r in result.failed] == ["ominus_subdistributive"]
        assert result.witness == (1, 1, 3)

    def test_join_product_fails_only_annihilation(self):
        result = check_mvw(build("luk(3,sup_nozero)"), exhaustive=True)
        assert [r.axiom for r in result.failed] == ["zero_annihilates"]

    def test_boolean_sup_zero(self):
        verdict = classify(build("boolean(2,sup_zero)"))
        assert verdict.label == "MVWRig"
        assert verdict.rejected["PMV"] == ("pmv_odot_product", (1, 2, 1))

    def test_zero_product_chains_are_not_unital(self):
        for n in range(2, 7):
            verdict = classify(luk(n))
            assert verdict.label == "PMVf"
            assert verdict.rejected["PMV1"] == ("unit_neutral", (1,))
