import pytest

from src.algebra_core import is_isomorphic
from src.catalog import boolean, luk
from src.chain_ring import ChainRing
from src.exceptions import NotSemiLowError
from src.lu_ring import decompose, f_ring_check, gamma, is_semi_low, segment_parts, verify_lu_ring
from src.ring_side import IntegerRing, IntVector


class TestDecomposition:
    def test_integer_segment_parts(self):
        assert segment_parts(IntegerRing(1), 3) == [1, 1, 1]
        assert segment_parts(IntegerRing(2), 5) == [2, 2, 1]
        assert segment_parts(IntegerRing(1), 0) == []

    def test_decompose_negative(self):
        assert decompose(IntegerRing(1), -2) == ([], [1, 1])

    def test_vector_parts(self):
        R = IntVector(2)
        assert segment_parts(R, (2, 1)) == [(1, 1), (1, 0)]


class TestGamma:
    def test_integers_give_two(self):
        G = gamma(IntegerRing(1))
        assert G.elements == [0, 1]
        assert G.algebra.same_tables(boolean(1, "inf"))

    def test_unit_two_is_rejected(self):
        with pytest.raises(NotSemiLowError) as info:
            gamma(IntegerRing(2))
        assert info.value.witness == (2, 2)
        assert not is_semi_low(IntegerRing(2))

    def test_vectors_give_boolean(self):
        G = gamma(IntVector(2))
        assert is_isomorphic(G.algebra, boolean(2, "inf"))
        assert G.index_of((0, 1)) == 1

    def test_chain_ring_segment(self):
        G = gamma(ChainRing(boolean(1, "inf")))
        assert G.elements == [(0, 0), (1, 0)]
        assert G.algebra.same_tables(boolean(1, "inf"))


class TestLaws:
    @pytest.mark.parametrize("ring", [IntegerRing(1), IntVector(2), ChainRing(luk(3))], ids=repr)
    def test_lu_ring_laws(self, ring):
        report = verify_lu_ring(ring, 2)
        assert report.passed, report.failures

    @pytest.mark.parametrize("ring", [IntVector(2), ChainRing(luk(3)), ChainRing(boolean(1, "inf"))], ids=repr)
    def test_f_ring(self, ring):
        assert f_ring_check(ring, 3).passed

    def test_disjoint_elements(self):
        R = IntVector(2)
        assert R.meet(R.mul((1, 0), (5, 5)), (0, 1)) == (0, 0)

    def test_scalar_by_doubling(self):
        R = ChainRing(luk(3))
        assert R.scalar(3, (0, 1)) == (1, 1)
        assert R.scalar(-2, (0, 1)) == (-1, 0)


class TestProductRing:
    def test_l_ideals(self):
        R = IntVector(3)
        assert len(R.l_ideals()) == 8
        assert [ideal.support for ideal in R.prime_l_ideals()] == [(0, 1), (0, 2), (1, 2)]

    def test_membership(self):
        R = IntVector(2)
        ideal = R.l_ideals()[2]
        assert ideal.support == (1,)
        assert (0, 7) in ideal
        assert (1, 7) not in ideal
        assert ideal.is_prime

    def test_quotient_projection(self):
        R = IntVector(3)
        target, project = R.quotient(R.l_ideals()[1])
        assert len(target.factors) == 2
        assert project((4, 5, 6)) == (5, 6)

    def test_window(self):
        assert len(IntVector(2).window(1)) == 9
        assert IntVector(2).within((1, -1), 1)
        assert not IntVector(2).within((2, 0), 1)
