import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra_core import (LABELS, FiniteAlgebra, check_mv, check_pmv, check_pmv1, check_properties,
                              classify, compose_maps, find_isomorphism, hom_check, is_isomorphic,
                              iter_homomorphisms, product_algebra, replay)
from src.catalog import boolean, luk, z_rig
from src.exceptions import InvalidTableError, ProbeBudgetError


class TestFiniteAlgebra:
    def test_unit_is_negation_of_zero(self, l3):
        assert l3.unit == 2
        assert l3.zero == 0
        assert list(l3.elements) == [0, 1, 2]

    def test_missing_product_is_zero(self):
        A = FiniteAlgebra([1, 0], [[0, 1], [1, 1]])
        assert A.has_zero_product
        assert A.prod.shape == (2, 2)

    def test_tables_are_read_only(self, l3):
        with pytest.raises(ValueError):
            l3.oplus[0, 0] = 1

    @pytest.mark.parametrize("neg, oplus", [
        ([], []),
        ([1, 0], [[0, 1]]),
        ([1, 2], [[0, 1], [1, 1]]),
        ([1, 0], [[0, 1], [1, -1]]),
    ])
    def test_invalid_tables_rejected(self, neg, oplus):
        with pytest.raises(InvalidTableError):
            FiniteAlgebra(neg, oplus)

    def test_mv_reduct_drops_product(self, four):
        reduct = four.mv_reduct()
        assert reduct.has_zero_product
        assert np.array_equal(reduct.oplus, four.oplus)
        assert not reduct.same_tables(four)


class TestDerivedOps:
    def test_chain_operations(self, l4):
        r = np.arange(4)
        d = l4.derived
        assert np.array_equal(d.leq, r[:, None] <= r[None, :])
        assert np.array_equal(d.meet, np.minimum(r[:, None], r[None, :]))
        assert np.array_equal(d.join, np.maximum(r[:, None], r[None, :]))
        assert np.array_equal(d.odot, np.maximum(0, r[:, None] + r[None, :] - 3))
        assert np.array_equal(d.ominus, np.maximum(0, r[:, None] - r[None, :]))

    def test_boolean_order_is_bitwise(self, four):
        assert four.derived.leq[1, 3]
        assert not four.derived.leq[1, 2]
        assert four.derived.meet[1, 2] == 0
        assert four.derived.join[1, 2] == 3
        assert not four.is_chain

    @given(st.integers(min_value=2, max_value=9))
    @settings(max_examples=8, deadline=None)
    def test_lukasiewicz_chains_are_mv(self, n):
        A = luk(n)
        assert check_mv(A).passed
        assert A.is_chain


class TestCheckers:
    def test_z_rig_rejections(self, z10):
        assert check_pmv(z10).axiom == "pmv_odot_product"
        assert check_pmv(z10).witness == (1, 1, 6)
        assert check_pmv1(z10).axiom == "ominus_distributive"
        assert check_pmv1(z10).witness == (2, 6, 1)

    def test_exhaustive_mode_keeps_every_witness(self, z10):
        pmv = check_pmv(z10, exhaustive=True).result_for("pmv_odot_product")
        assert pmv.witness == (1, 1, 6)
        assert (2, 2, 3) in pmv.witnesses
        assert list(pmv.witnesses) == sorted(pmv.witnesses)
        pmv1 = check_pmv1(z10, exhaustive=True).result_for("ominus_distributive")
        assert (2, 7, 6) in pmv1.witnesses

    def test_replay_confirms_witnesses(self, z10):
        assert replay(z10, "pmv_odot_product", (1, 1, 6))
        assert not replay(z10, "pmv_odot_product", (0, 0, 0))
        with pytest.raises(ValueError):
            replay(z10, "pmv_odot_product", (1, 1))

    def test_non_mv_tables(self):
        A = FiniteAlgebra([1, 0], [[0, 0], [0, 0]], name="broken")
        verdict = classify(A)
        assert verdict.label == "NotMV"
        assert verdict.results["MV"].axiom == "zero_neutral"
        assert verdict.results["MV"].witness == (1,)

    def test_classification_labels(self, l3, two, z10):
        assert classify(l3).label == "PMVf"
        assert classify(two).label == "PMV1"
        assert classify(z10).label == "MVWRig"
        assert classify(luk(4, "inf")).rejected["PMV"] == ("pmv_distributive", (1, 1, 1))

    def test_at_least_follows_tower(self, l3):
        verdict = l3.variety
        assert verdict.at_least("MV")
        assert verdict.at_least("PMVf")
        assert not verdict.at_least("PMV1")
        assert LABELS.index(verdict.label) == 4
        assert verdict.display == "PMV-F"
        assert verdict.tower_violations == ()

    def test_properties_hold_on_rigs(self, z10, l3):
        assert check_properties(z10).passed
        report = check_properties(l3)
        assert report.passed
        assert report.get("properties.meet_distributive") is not None


class TestHomomorphisms:
    def test_identity_and_constant(self, l3):
        assert hom_check(l3, l3, (0, 1, 2)).passed
        result = hom_check(l3, l3, (0, 0, 0))
        assert result.axiom == "preserves_neg"
        assert result.witness == (0,)

    def test_bad_map_shape(self, l3, two):
        with pytest.raises(InvalidTableError):
            hom_check(l3, two, (0, 1))
        with pytest.raises(InvalidTableError):
            hom_check(l3, two, (0, 1, 2))

    def test_boolean_projections(self, four, two):
        homs = list(iter_homomorphisms(four, two))
        assert sorted(homs) == [(0, 0, 1, 1), (0, 1, 0, 1)]
        assert all(hom_check(four, two, h).passed for h in homs)

    def test_no_homomorphism_from_chain_into_two(self, l3, two):
        assert list(iter_homomorphisms(l3, two)) == []

    def test_isomorphism(self, four, two):
        assert find_isomorphism(four, four) is not None
        assert is_isomorphic(four, product_algebra(two, two))
        assert not is_isomorphic(four, luk(4))
        assert find_isomorphism(luk(3), luk(3)) == (0, 1, 2)

    def test_budget(self):
        with pytest.raises(ProbeBudgetError):
            list(iter_homomorphisms(luk(3), luk(3), budget=1))

    def test_compose_maps(self):
        assert compose_maps((0, 0, 1, 1), (0, 1, 2, 3)) == (0, 0, 1, 1)
        assert compose_maps((2, 1, 0), (0, 0, 2)) == (2, 2, 0)


class TestProductAlgebra:
    def test_index_layout(self, l3, two):
        C = product_algebra(l3, two)
        assert C.size == 6
        # (1, 1) + (1, 0) = (2, 1)
        assert C.oplus[1 * 2 + 1, 1 * 2 + 0] == 2 * 2 + 1
        assert C.unit == 5
        assert C.name == "luk(3)xboolean(1,inf)"

    def test_product_of_rigs_is_rig(self):
        C = product_algebra(z_rig(2), boolean(1, "inf"))
        assert C.variety.at_least("MVWRig")
