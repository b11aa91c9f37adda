import os

import pytest

from src.catalog import build
from src.exceptions import NonAbsorbentIdealError
from src.verification_engine import VerificationEngine


@pytest.fixture
def engine(small_config):
    return VerificationEngine(small_config)


class TestStages:
    def test_classification_notes_and_replays(self, engine, z10):
        verdict, report = engine.run_classification(z10)
        assert verdict.label == "MVWRig"
        assert report.passed, report.failures
        notes = {note.id: note for note in report.notes}
        assert notes["classify.MVWRig"].holds
        assert not notes["classify.PMV"].holds
        assert notes["classify.PMV"].witness == ("pmv_odot_product", (1, 1, 6))
        assert report.get("classify.replay.PMV.pmv_odot_product").passed
        assert report.get("properties.product_monotone").passed

    def test_exhaustive_classification(self, engine, z10):
        verdict, report = engine.run_classification(z10, exhaustive=True)
        assert (2, 2, 3) in verdict.results["PMV"].result_for("pmv_odot_product").witnesses
        assert report.passed

    def test_ideals(self, engine, four):
        ideals, report = engine.run_ideals(four)
        assert len(ideals) == 4
        assert report.passed
        assert report.facts['ideals'][0] == {
            'members': [0], 'is_mv_ideal': True, 'is_absorbent': True,
            'is_prime_mv': False, 'is_prime_w': False,
        }

    def test_spectrum(self, engine, four, z10):
        assert engine.run_spectrum(four)[1].passed
        embedding, report = engine.run_spectrum(z10)
        assert report.passed
        assert not embedding.carries_product

    def test_quotient_by_generators(self, engine, four):
        factor, projection, report = engine.run_quotient(four, generators=[1])
        assert factor.size == 2
        assert report.passed

    def test_quotient_of_rig_keeps_product(self, engine, z10):
        factor, projection, report = engine.run_quotient(z10, members=[0])
        assert factor.same_tables(z10)
        assert factor.prod.any()
        assert report.passed, report.failures

    def test_quotient_by_non_absorbent_ideal(self, engine):
        with pytest.raises(NonAbsorbentIdealError):
            engine.run_quotient(build("boolean(2,sup_zero)"), members=[0, 1])

    def test_catalog(self, engine):
        assert engine.run_catalog_check().passed

    def test_equivalence_on_boolean(self, engine, four):
        report = engine.run_equivalence(four)
        assert report.passed, report.failures
        assert report.get("boolean.lambda_surjective").passed

    def test_chain_stage(self, engine, l3):
        report = engine.run_chain(l3)
        assert report.passed, report.failures
        assert report.get("chainring.f_ring.disjoint_absorbs").passed

    def test_coextensivity(self, engine, four):
        report = engine.run_coextensivity(four)
        assert report.passed, report.failures
        assert report.facts['idempotents'] == [0, 1, 2, 3]
        assert report.get("pushout.projections_trivial").passed
        assert all(note.holds for note in report.notes if note.id.startswith("coextensive.split"))


class TestPipeline:
    def test_complete_verification_of_chain(self, engine, l3):
        verdict, report = engine.run_complete_verification(l3)
        assert verdict.label == "PMVf"
        assert report.passed, report.failures

    def test_rig_skips_ring_stages(self, engine, z10):
        verdict, report = engine.run_complete_verification(z10)
        assert report.passed
        assert not any(check.id.startswith("spectrum.") for check in report.checks)

    def test_saved_report(self, engine, l3):
        _, report = engine.run_complete_verification(l3)
        path = engine.save_report(report, "chain.json")
        assert os.path.exists(path)

    def test_product_algebra(self, engine):
        verdict, report = engine.run_complete_verification(build("product(luk(3),boolean(1,inf))"))
        assert verdict.label == "PMVf"
        assert report.passed, report.failures
