import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.catalog import CATALOG, boolean, build, luk, z_rig
from src.chain_ring import (ChainRing, gamma_chain_roundtrip, ring_tables, sum_product_identity,
                            sum_product_report, verify_ring_axioms)
from src.exceptions import PreconditionError

L5 = ChainRing(luk(5))
pairs = st.tuples(st.integers(-6, 6), st.integers(0, 3))
PMVF_CHAINS = [entry.name for entry in CATALOG
               if entry.label in ("PMVf", "PMV1") and entry.name != "trivial" and entry.build().is_chain]


class TestArithmetic:
    def test_carry(self, l3):
        R = ChainRing(l3)
        assert R.element(0, 2) == (1, 0)
        assert R.add((0, 1), (0, 1)) == (1, 0)
        assert R.neg((0, 1)) == (-1, 1)
        assert R.add((0, 1), R.neg((0, 1))) == R.zero

    def test_integers(self, two):
        R = ChainRing(two)
        assert R.mul((2, 0), (3, 0)) == (6, 0)
        assert R.mul((-2, 0), (3, 0)) == (-6, 0)

    def test_truncated_integers_break_distributivity(self, z10):
        R = ChainRing(z10)
        assert R.mul((0, 2), (0, 7)) == (1, 0)
        assert R.add((0, 7), (0, 6)) == (1, 3)
        assert R.mul((0, 2), R.add((0, 7), (0, 6))) == (1, 6)
        assert R.add(R.mul((0, 2), (0, 7)), R.mul((0, 2), (0, 6))) == (2, 0)

    def test_window(self, l3):
        assert ChainRing(l3).window(1) == [(-1, 0), (-1, 1), (0, 0), (0, 1), (1, 0)]

    def test_requires_nontrivial_chain(self, four):
        with pytest.raises(PreconditionError):
            ChainRing(four)
        with pytest.raises(PreconditionError):
            ChainRing(build("trivial"))

    @given(pairs, pairs)
    @settings(max_examples=60, deadline=None)
    def test_addition_is_a_group(self, x, y):
        x, y = L5.canon(*x), L5.canon(*y)
        assert L5.add(x, y) == L5.add(y, x)
        assert L5.sub(L5.add(x, y), y) == x

    @given(pairs, pairs)
    @settings(max_examples=60, deadline=None)
    def test_codes_are_additive_and_monotone(self, x, y):
        x, y = L5.canon(*x), L5.canon(*y)
        assert L5.code(L5.add(x, y)) == L5.code(x) + L5.code(y)
        assert L5.from_code(L5.code(x)) == x
        assert L5.leq(x, y) == (L5.code(x) <= L5.code(y))

    @given(pairs)
    @settings(max_examples=40, deadline=None)
    def test_order_is_total(self, x):
        x = L5.canon(*x)
        assert L5.leq(x, L5.zero) or L5.leq(L5.zero, x)
        assert L5.is_nonnegative(L5.abs(x))


class TestRingAxioms:
    @pytest.mark.parametrize("name, bound", [("luk(3)", 3), ("luk(4)", 2), ("boolean(1,inf)", 3)])
    def test_pmvf_chains_pass(self, name, bound):
        report = verify_ring_axioms(build(name), bound)
        assert report.passed, report.failures

    def test_truncated_integers_fail(self, z10):
        report = verify_ring_axioms(z10, 1)
        assert not report.get("chain.distributive").passed

    @pytest.mark.slow
    @pytest.mark.parametrize("name", PMVF_CHAINS)
    def test_full_window(self, name):
        report = verify_ring_axioms(build(name), 8)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_truncated_integers_fail_on_full_window(self, z10):
        assert not verify_ring_axioms(z10, 8).get("chain.distributive").passed


class TestSumProduct:
    def test_segment_form_holds_literal_form_fails(self, two):
        report = sum_product_report(two)
        assert report.get("chain.sum_product_segment").passed
        assert not report.notes[0].holds

    def test_identity_values(self, two):
        result = sum_product_identity(two, (1, 1), (1, 1))
        assert result.left == (4, 0)
        assert result.right == (2, 0)
        assert result.segment_holds is None
        assert not result.literal_holds

    def test_segment_form_is_not_sum_of_products(self, two):
        result = sum_product_identity(two, (1, 0), (0, 1))
        assert result.in_segment
        assert result.segment_holds
        assert result.right == (0, 0)
        assert result.segment_value == (1, 0)

    def test_zero_product_is_trivially_literal(self, l3):
        assert sum_product_identity(l3, (1, 1), (1, 0)).literal_holds

    def test_preconditions(self, l3, z10):
        with pytest.raises(PreconditionError):
            sum_product_identity(z10, (1,), (1,))
        with pytest.raises(PreconditionError):
            sum_product_identity(l3, (1,), (1, 1))


def test_gamma_chain_roundtrip(l4, two):
    assert gamma_chain_roundtrip(l4).passed
    assert gamma_chain_roundtrip(two).passed


def test_ring_tables(l3):
    add, mul = ring_tables(l3, 1)
    assert add.shape == (5, 5)
    assert add.loc["(0,1)", "(0,1)"] == "(1,0)"
    assert mul.loc["(1,0)", "(1,0)"] == "(0,0)"


def test_z_rig_chain_is_allowed():
    assert ChainRing(z_rig(3)).unit == (1, 0)
    assert ChainRing(boolean(1, "inf")).segment() == [(0, 0), (1, 0)]
