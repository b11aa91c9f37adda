import logging
import os
from datetime import datetime

from .algebra_core import LABELS, TOWER, classify, check_properties, find_isomorphism, replay
from .catalog import CATALOG, boolean, build, check_entry, find_entry, replay_known
from .chain_ring import ChainRing, gamma_chain_roundtrip, sum_product_report, verify_ring_axioms
from .coextensivity import idempotents, pushout_check, split
from .ideal_lattice import (all_ideals, check_espectros, generated_ideal, quotient_report,
                            subdirect_embedding)
from .lu_ring import f_ring_check, gamma, verify_lu_ring
from .report import Report
from .ring_side import (MAX_BOOLEAN_RING_RANK, boolean_ring_iso, ideal_correspondence_report,
                        j_sharp_check, quotient_theorem_check, upsilon_roundtrip)
from .spectrum_ring import SpectrumRing, formal_product_check, gamma_general_roundtrip, lift_hom
from .utils import save_json

logger = logging.getLogger(__name__)


def _absorb(report, sub, prefix=None):
    """Copy checks and notes of ``sub`` into ``report``, optionally renaming ids"""
    for check in sub.checks:
        report.add(f"{prefix}.{check.id}" if prefix else check.id, check.passed, check.witness, check.detail)
    for note in sub.notes:
        report.note(f"{prefix}.{note.id}" if prefix else note.id, note.holds, note.witness, note.detail)
    report.facts.update(sub.facts)
    return report


class VerificationEngine:
    def __init__(self, config):
        self.config = config
        self.settings = config['verification']
        self.enumeration = config['enumeration']
        self.outputs_path = config['outputs']['reports']

    @property
    def window(self):
        return self.settings['window']

    @property
    def seed(self):
        return self.settings['seed']

    def _sampling(self):
        return {
            'seed': self.seed,
            'samples': self.settings['samples'],
            'exhaustive_limit': self.settings['exhaustive_limit'],
        }

    def probes(self):
        return [build(name) for name in self.config['coextensivity']['probes']]

    # -- stages -------------------------------------------------------------

    def run_classification(self, A, exhaustive=False):
        """Label plus one NOTE per checker; every witness is replayed"""
        verdict = classify(A, exhaustive=exhaustive)
        report = Report(f"classify:{A.name}")
        for label in TOWER:
            result = verdict.results[label]
            failed = result.failed
            report.note(f"classify.{label}", result.passed,
                        (failed[0].axiom, failed[0].witness) if failed else None)
            for axiom_result in failed:
                replayed = all(replay(A, axiom_result.axiom, w) for w in axiom_result.witnesses)
                report.add(f"classify.replay.{label}.{axiom_result.axiom}", replayed, axiom_result.witness)
        report.add("classify.tower", not verdict.tower_violations, verdict.tower_violations or None)
        entry = find_entry(A.name)
        if entry is not None:
            replay_known(entry, A, report, "classify")
        report.facts['label'] = verdict.label
        if verdict.at_least("MVWRig"):
            _absorb(report, check_properties(A))
        return verdict, report

    def run_ideals(self, A):
        ideals = all_ideals(A, self.enumeration['ideal_budget'])
        report = Report(f"ideals:{A.name}")
        bad = next((list(I.members) for I in ideals if not I.is_mv_ideal), None)
        report.add("ideals.enumerated_are_ideals", bad is None, bad)
        keys = {I.members for I in ideals}
        report.add("ideals.bounds_present", (0,) in keys and tuple(A.elements) in keys)
        loose = next((list(I.members) for I in ideals if generated_ideal(A, I.members).members != I.members), None)
        report.add("ideals.generated_is_least", loose is None, loose)
        report.facts['ideals'] = [dict(members=list(I.members), **I.flags()) for I in ideals]
        return ideals, report

    def run_spectrum(self, A):
        report = Report(f"spectrum:{A.name}")
        if A.variety.at_least("PMVf"):
            _absorb(report, check_espectros(A, self.enumeration['ideal_budget']))
        embedding = subdirect_embedding(A, self.enumeration['ideal_budget'])
        _absorb(report, embedding.report)
        return embedding, report

    def run_quotient(self, A, members=None, generators=None):
        if generators is not None:
            members = generated_ideal(A, generators).members
        with_product = A.variety.at_least("MVWRig")
        factor, projection, report = quotient_report(A, members, with_product=with_product)
        return factor, projection, report

    def run_chain(self, A):
        """Pair-ring laws on the grid, plus the segment identities on PMV_f chains"""
        bound = self.window
        report = Report(f"chain:{A.name}")
        _absorb(report, verify_ring_axioms(A, bound))
        if A.variety.at_least("PMVf"):
            _absorb(report, sum_product_report(A))
            _absorb(report, gamma_chain_roundtrip(A))
            R = ChainRing(A)
            _absorb(report, verify_lu_ring(R, bound, **self._sampling()))
            _absorb(report, f_ring_check(R, bound, **self._sampling()), prefix="chainring")
        return report

    def run_equivalence(self, A):
        """Round trips between A and the ring it generates"""
        bound = self.window
        report = Report(f"equivalence:{A.name}")
        _absorb(report, gamma_general_roundtrip(
            A, self.settings['word_budget'], self.settings['word_length'], self.seed))
        _absorb(report, formal_product_check(A, seed=self.seed))

        S = SpectrumRing(A)
        _absorb(report, verify_lu_ring(S, bound, **self._sampling()))
        _absorb(report, f_ring_check(S, bound, **self._sampling()), prefix="spectrumring")
        _absorb(report, upsilon_roundtrip(S, bound, **self._sampling()))
        _absorb(report, ideal_correspondence_report(S, bound, **self._sampling()))

        G = gamma(S)
        for k, J in enumerate(all_ideals(G.algebra, self.enumeration['ideal_budget'])):
            _absorb(report, j_sharp_check(S, J, bound, **self._sampling()), prefix=f"ideal{k}")
        for ideal in S.l_ideals():
            support = "".join(str(i) for i in ideal.support) or "none"
            _absorb(report, quotient_theorem_check(S, ideal), prefix=f"support_{support}")

        _, lifted = lift_hom(A, A, tuple(A.elements), seed=self.seed)
        _absorb(report, lifted, prefix="identity")

        if A.is_chain:
            _absorb(report, self.run_chain(A))
        rank = A.size.bit_length() - 1
        if 1 <= rank <= MAX_BOOLEAN_RING_RANK and A.size == 2 ** rank:
            if find_isomorphism(A, boolean(rank, "inf")) is not None:
                _absorb(report, boolean_ring_iso(rank, bound, **self._sampling()))
        return report

    def run_coextensivity(self, A, probes=None):
        """Split at every idempotent; the first proper product split feeds the pushout check"""
        probes = probes if probes is not None else self.probes()
        report = Report(f"coextensive:{A.name}")
        decomposition = None
        for e in idempotents(A):
            result = split(A, e)
            report.note(f"coextensive.split.{e}", result.is_iso,
                        result.report.failures[0].id if result.report.failures else None,
                        f"{result.left.size} x {result.right.size}")
            if result.is_iso and decomposition is None and result.left.size > 1 and result.right.size > 1:
                decomposition = result
        if decomposition is not None:
            inverse = [0] * A.size
            for c, t in enumerate(decomposition.theta):
                inverse[t] = c
            _absorb(report, self.run_pushout(decomposition.left, decomposition.right, A, inverse, probes))
        report.facts['idempotents'] = idempotents(A)
        return report

    def run_pushout(self, A, B, C, g, probes=None):
        probes = probes if probes is not None else self.probes()
        return pushout_check(A, B, C, g, probes,
                             max_probe_size=self.enumeration['max_probe_size'],
                             budget=self.enumeration['probe_budget'])

    def run_catalog_check(self):
        report = Report("catalog")
        for entry in CATALOG:
            check_entry(entry, report)
        return report

    # -- pipeline -----------------------------------------------------------

    def save_report(self, report, file_name=None):
        file_name = file_name or f"{report.name.replace(':', '_')}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
        file_path = os.path.join(self.outputs_path, file_name)
        if save_json(report.to_dict(), file_path):
            logger.info(f"💾 Report saved: {file_path}")
            return file_path
        logger.error(f"❌ Error saving report: {file_path}")
        return None

    def run_complete_verification(self, A, save=False):
        """Every stage that applies to A, in order"""
        logger.info(f"🔍 Starting complete verification of {A.name}")
        logger.info("=" * 50)
        report = Report(f"verification:{A.name}")

        logger.info("🔹 STEP 1: classification")
        verdict, classification = self.run_classification(A)
        _absorb(report, classification)
        logger.info(f"✅ {A.name} is {verdict.display}")
        if verdict.label == LABELS[0] or A.is_trivial:
            logger.warning(f"⚠️ {A.name}: no further stages apply")
            return verdict, report

        logger.info("🔹 STEP 2: ideals and spectra")
        _absorb(report, self.run_ideals(A)[1])
        _absorb(report, self.run_spectrum(A)[1])

        if verdict.at_least("PMVf"):
            logger.info("🔹 STEP 3: ring equivalence")
            _absorb(report, self.run_equivalence(A))
            logger.info("🔹 STEP 4: coextensivity")
            _absorb(report, self.run_coextensivity(A))

        status = "✅ all checks passed" if report.passed else f"❌ {len(report.failures)} checks failed"
        logger.info(f"🎉 Verification of {A.name} finished: {status}")
        if save:
            self.save_report(report)
        return verdict, report
