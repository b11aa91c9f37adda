import numpy as np
import pytest

from src.catalog import build, luk, trivial
from src.exceptions import BudgetExceededError, NonAbsorbentIdealError, PreconditionError
from src.ideal_lattice import (IdealSet, all_ideals, all_ideals_w, check_espectros, congruence_table,
                               generated_ideal, is_ideal, quotient, quotient_report, spec, spec_w,
                               subdirect_embedding)


class TestIdeals:
    def test_boolean_ideals(self, four):
        assert [I.members for I in all_ideals(four)] == [(0,), (0, 1), (0, 1, 2, 3), (0, 2)]
        assert [I.members for I in spec(four)] == [(0, 1), (0, 2)]

    def test_simple_chain(self):
        assert [I.members for I in all_ideals(luk(5))] == [(0,), (0, 1, 2, 3, 4)]
        assert generated_ideal(luk(5), [1]).members == (0, 1, 2, 3, 4)

    def test_generated_ideal(self, four):
        assert generated_ideal(four, []).members == (0,)
        assert generated_ideal(four, [1]).members == (0, 1)
        assert generated_ideal(four, [1, 2]).members == (0, 1, 2, 3)

    def test_membership_tests(self, four):
        assert is_ideal(four, [0, 2])
        assert not is_ideal(four, [0, 3])
        assert not is_ideal(four, [1])
        with pytest.raises(PreconditionError):
            is_ideal(four, [0, 9])

    def test_ideal_flags(self, four):
        flags = IdealSet(four, [1, 0]).flags()
        assert flags == {'is_mv_ideal': True, 'is_absorbent': True, 'is_prime_mv': True, 'is_prime_w': True}
        assert IdealSet(four, [0, 1]).is_proper

    def test_no_proper_absorbent_ideals_under_sup_product(self):
        A = build("boolean(2,sup_zero)")
        assert [I.members for I in all_ideals_w(A)] == [(0,), (0, 1, 2, 3)]

    def test_zero_product_chain_has_no_prime_w(self, l3):
        assert spec_w(l3) == []
        assert [I.members for I in spec(l3)] == [(0,)]

    def test_budget(self, four):
        with pytest.raises(BudgetExceededError):
            all_ideals(four, budget=2)


class TestSpectra:
    def test_pmvf_report(self, l3):
        report = check_espectros(l3)
        assert report.passed
        assert report.facts['spec'] == [[0]]
        note = report.notes[0]
        assert note.id == "spectra.spec_w_equals_spec"
        assert not note.holds

    def test_boolean_spectra_agree(self, four):
        report = check_espectros(four)
        assert report.passed
        assert report.notes[0].holds

    def test_requires_pmvf(self, z10):
        with pytest.raises(PreconditionError):
            check_espectros(z10)


class TestQuotient:
    def test_boolean_quotient(self, four):
        factor, projection = quotient(four, [0, 1])
        assert factor.size == 2
        assert factor.is_chain
        assert projection.tolist() == [0, 0, 1, 1]

    def test_congruence_is_reflexive(self, four):
        eq = congruence_table(four, [0, 1])
        assert np.all(np.diag(eq))
        assert eq[0, 1] and not eq[0, 2]

    def test_non_absorbent_ideal(self):
        A = build("boolean(2,sup_zero)")
        with pytest.raises(NonAbsorbentIdealError):
            quotient(A, [0, 1])
        factor, _ = quotient(A, [0, 1], with_product=False)
        assert factor.size == 2

    def test_not_an_ideal(self, four):
        with pytest.raises(PreconditionError):
            quotient(four, [0, 3])

    def test_report(self, four):
        factor, projection, report = quotient_report(four, [0, 2])
        assert report.passed
        assert report.get("quotient.prime_gives_chain").passed
        assert factor.size == 2

    def test_zero_ideal_keeps_the_product(self):
        z10 = build("z_rig(10)")
        factor, projection, report = quotient_report(z10, [0])
        assert report.passed
        assert factor.same_tables(z10)
        assert projection.tolist() == list(range(11))
        assert report.get("quotient.variety_preserved").witness == "MVWRig"

    def test_mvw_rig_quotient_keeps_its_variety(self):
        A = build("product(luk(3,inf),boolean(1,inf))")
        factor, _, report = quotient_report(A, [0, 1])
        check = report.get("quotient.variety_preserved")
        assert check.passed
        assert check.witness == "MVWRig"
        assert factor.prod.tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 2]]


class TestSubdirectEmbedding:
    def test_boolean_embedding(self, four):
        embedding = subdirect_embedding(four)
        assert embedding.report.passed
        assert embedding.hat.shape == (4, 2)
        assert embedding.carries_product
        assert embedding.image(0) == (0, 0)
        assert embedding.image(3) == (1, 1)

    def test_mv_reduct_for_rigs(self, z10):
        embedding = subdirect_embedding(z10)
        assert not embedding.carries_product
        assert embedding.report.passed
        assert len(embedding.primes) == 1

    def test_product_of_chains(self):
        embedding = subdirect_embedding(build("product(luk(3),boolean(1,inf))"))
        assert embedding.report.passed
        assert sorted(f.size for f in embedding.factors) == [2, 3]

    def test_trivial_rejected(self):
        with pytest.raises(PreconditionError):
            subdirect_embedding(trivial())
