"""Pairs (m, a) over a finite chain with the carry addition and the ring product.

Scalar arithmetic uses Python integers for m. The law checks evaluate the
same formulas on numpy arrays over the grid |m| ≤ M, one first argument at
a time, so a window of a few hundred elements stays cheap.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .algebra_core import find_isomorphism, hom_check
from .exceptions import PreconditionError
from .lu_ring import LuRing, gamma
from .report import Report

logger = logging.getLogger(__name__)


def require_chain(A):
    if A.is_trivial:
        raise PreconditionError("the pair construction needs a non-trivial chain")
    if not A.variety.at_least("MV"):
        raise PreconditionError(f"{A.name} is not an MV-algebra")
    if not A.is_chain:
        raise PreconditionError(f"{A.name} is not a chain")


def require_pmvf_chain(A):
    require_chain(A)
    verdict = A.variety
    if not verdict.at_least("PMVf"):
        raise PreconditionError(f"{A.name} is {verdict.display}, expected PMV-F")


class ChainRing(LuRing):
    def __init__(self, A):
        require_chain(A)
        self.A = A
        self.name = f"{A.name}#"
        self.u = A.unit
        self._odot = A.derived.odot
        self._leq = A.derived.leq
        self.span = A.size - 1
        self.ranks = self._leq.sum(axis=0) - 1
        self._by_rank = np.argsort(self.ranks)

    # -- scalar arithmetic -------------------------------------------------

    def canon(self, m, a):
        m, a = int(m), int(a)
        return (m + 1, 0) if a == self.u else (m, a)

    def element(self, m, a):
        return self.canon(m, a)

    def embed(self, a):
        return self.canon(0, a)

    def code(self, x):
        """m·k + rank(a) on the chain with k + 1 elements; additive and monotone"""
        m, a = x
        return int(m) * self.span + int(self.ranks[a])

    def from_code(self, c):
        m, r = divmod(int(c), self.span)
        return (m, int(self._by_rank[r]))

    @property
    def zero(self):
        return (0, 0)

    @property
    def unit(self):
        return (1, 0)

    def add(self, x, y):
        (m, a), (n, b) = x, y
        s = int(self.A.oplus[a, b])
        if s != self.u:
            return self.canon(m + n, s)
        return self.canon(m + n + 1, self._odot[a, b])

    def neg(self, x):
        m, a = x
        return self.canon(-m - 1, self.A.neg[a])

    def mul(self, x, y):
        """mn(0,u²) + m(0,bu) + n(0,au) + (0,ab); inputs need not be canonical"""
        (m, a), (n, b) = x, y
        P, u = self.A.prod, self.u
        terms = (
            self.scalar(m * n, self.embed(P[u, u])),
            self.scalar(m, self.embed(P[b, u])),
            self.scalar(n, self.embed(P[a, u])),
            self.embed(P[a, b]),
        )
        total = self.zero
        for term in terms:
            total = self.add(total, term)
        return total

    def leq(self, x, y):
        (m, a), (n, b) = x, y
        return m < n or (m == n and bool(self._leq[a, b]))

    def meet(self, x, y):
        return x if self.leq(x, y) else y

    def join(self, x, y):
        return y if self.leq(x, y) else x

    def segment(self):
        return [(0, a) for a in self.A.elements if a != self.u] + [(1, 0)]

    def window(self, bound):
        inner = [(m, a) for m in range(-bound, bound) for a in self.A.elements if a != self.u]
        return inner + [(bound, 0)]

    def grid(self, bound):
        return [(m, a) for m in range(-bound, bound + 1) for a in self.A.elements if a != self.u]

    # -- vectorised arithmetic on (m, a) array pairs -----------------------

    def v_canon(self, m, a):
        top = a == self.u
        return m + top, np.where(top, 0, a)

    def v_add(self, x, y):
        (m, a), (n, b) = x, y
        s = self.A.oplus[a, b]
        carry = s == self.u
        return self.v_canon(m + n + carry, np.where(carry, self._odot[a, b], s))

    def v_neg(self, x):
        m, a = x
        return self.v_canon(-m - 1, self.A.neg[a])

    def v_scalar(self, k, x):
        k = np.asarray(k, dtype=np.int64)
        shape = np.broadcast_shapes(k.shape, np.shape(x[0]), np.shape(x[1]))
        n = np.broadcast_to(np.abs(k), shape).copy()
        base = (np.broadcast_to(x[0], shape).astype(np.int64), np.broadcast_to(x[1], shape).astype(np.int64))
        result = (np.zeros(shape, dtype=np.int64), np.zeros(shape, dtype=np.int64))
        while n.any():
            bit = (n & 1).astype(bool)
            added = self.v_add(result, base)
            result = (np.where(bit, added[0], result[0]), np.where(bit, added[1], result[1]))
            base = self.v_add(base, base)
            n >>= 1
        flip = np.broadcast_to(k < 0, shape)
        negated = self.v_neg(result)
        return np.where(flip, negated[0], result[0]), np.where(flip, negated[1], result[1])

    def v_embed(self, c):
        c = np.asarray(c)
        return self.v_canon(np.zeros(c.shape, dtype=np.int64), c)

    def v_mul(self, x, y):
        (m, a), (n, b) = x, y
        P, u = self.A.prod, self.u
        t1 = self.v_scalar(m * n, self.v_embed(P[u, u]))
        t2 = self.v_scalar(m, self.v_embed(P[b, u]))
        t3 = self.v_scalar(n, self.v_embed(P[a, u]))
        t4 = self.v_embed(P[a, b])
        return self.v_add(self.v_add(t1, t2), self.v_add(t3, t4))

    def v_leq(self, x, y):
        (m, a), (n, b) = x, y
        return (m < n) | ((m == n) & self._leq[a, b])

    @staticmethod
    def v_eq(x, y):
        return (x[0] == y[0]) & (x[1] == y[1])

    def v_abs(self, x):
        nonneg = self.v_leq((np.zeros_like(x[0]), np.zeros_like(x[1])), x)
        flipped = self.v_neg(x)
        return np.where(nonneg, x[0], flipped[0]), np.where(nonneg, x[1], flipped[1])


def _arrays(elements):
    return (np.array([e[0] for e in elements], dtype=np.int64),
            np.array([e[1] for e in elements], dtype=np.int64))


def _pick(arrays, i):
    return int(arrays[0][i]), int(arrays[1][i])


def verify_ring_axioms(A, bound=8):
    """Group, order and ring laws on every (m, a) with |m| ≤ bound.

    Expected to pass for PMV_f chains; any other chain may fail with a
    witness (distributivity breaks on the truncated integers, for example).
    """
    R = ChainRing(A)
    report = Report(f"chain_ring:{A.name}")
    grid = R.grid(bound)
    g = len(grid)
    G = _arrays(grid)
    Y = (np.repeat(G[0], g), np.repeat(G[1], g))
    Z = (np.tile(G[0], g), np.tile(G[1], g))
    zero = (np.zeros(g, dtype=np.int64), np.zeros(g, dtype=np.int64))
    detail = f"|m| <= {bound}, {g} elements"

    def unary(mask):
        hits = np.flatnonzero(mask)
        return None if hits.size == 0 else _pick(G, hits[0])

    def binary(mask):
        hits = np.flatnonzero(mask)
        return None if hits.size == 0 else (_pick(Y, hits[0]), _pick(Z, hits[0]))

    def ternary(law):
        for i in range(g):
            x = (G[0][i], G[1][i])
            mask = law(x, Y, Z)
            hits = np.flatnonzero(mask)
            if hits.size:
                return (_pick(G, i), _pick(Y, hits[0]), _pick(Z, hits[0]))
        return None

    def record(check_id, witness, note=detail):
        report.add(f"chain.{check_id}", witness is None, witness, note)

    sums = R.v_add(Y, Z)
    products = R.v_mul(Y, Z)
    record("canonical", binary((sums[1] == R.u) | (products[1] == R.u)))
    record("add_commutative", binary(~R.v_eq(sums, R.v_add(Z, Y))))
    record("zero_neutral", unary(~R.v_eq(R.v_add(G, zero), G)))
    record("add_inverse", unary(~R.v_eq(R.v_add(G, R.v_neg(G)), zero)))
    record("add_associative", ternary(
        lambda x, y, z: ~R.v_eq(R.v_add(R.v_add(x, y), z), R.v_add(x, R.v_add(y, z)))))
    record("order_compatible", ternary(
        lambda x, y, z: R.v_leq(x, y) & ~R.v_leq(R.v_add(x, z), R.v_add(y, z))))
    bound_units = (np.abs(G[0]) + 1, np.zeros(g, dtype=np.int64))
    record("strong_unit", unary(~R.v_leq(R.v_abs(G), bound_units)))

    record("mul_commutative", binary(~R.v_eq(products, R.v_mul(Z, Y))))
    record("mul_associative", ternary(
        lambda x, y, z: ~R.v_eq(R.v_mul(R.v_mul(x, y), z), R.v_mul(x, R.v_mul(y, z)))))
    record("distributive", ternary(
        lambda x, y, z: ~R.v_eq(R.v_mul(x, R.v_add(y, z)), R.v_add(R.v_mul(x, y), R.v_mul(x, z)))))
    nonneg_y = R.v_leq((np.zeros_like(Y[0]), np.zeros_like(Y[1])), Y)
    nonneg_z = R.v_leq((np.zeros_like(Z[0]), np.zeros_like(Z[1])), Z)
    zero_pairs = (np.zeros_like(Y[0]), np.zeros_like(Y[1]))
    record("positivity", binary(nonneg_y & nonneg_z & ~R.v_leq(zero_pairs, products)))
    record("mul_monotone", ternary(
        lambda x, y, z: R.v_leq((0, 0), x) & R.v_leq(x, y) & R.v_leq(zero_pairs, z)
        & ~R.v_leq(R.v_mul(x, z), R.v_mul(y, z))))

    # (m, u) and (m+1, 0) must multiply alike
    tops = [(m, R.u) for m in range(-bound, bound + 1)]
    T = _arrays(tops)
    shifted = (T[0] + 1, np.zeros_like(T[1]))
    witness = None
    for i in range(len(tops)):
        raw = (T[0][i], T[1][i])
        fixed = (shifted[0][i], shifted[1][i])
        mask = ~R.v_eq(R.v_mul(raw, G), R.v_mul(fixed, G)) | ~R.v_eq(R.v_mul(G, raw), R.v_mul(G, fixed))
        hits = np.flatnonzero(mask)
        if hits.size:
            witness = ((int(raw[0]), int(raw[1])), _pick(G, hits[0]))
            break
    record("well_defined", witness)

    restricted, unrestricted = _disodot(R)
    record("disodot", restricted, "y⊕z = u")
    report.note("chain.disodot_unrestricted", unrestricted is None, unrestricted)

    segment = R.segment()
    offending = next(((x, y) for x in segment for y in segment
                      if not R.leq(R.mul(x, y), R.meet(x, y))), None)
    record("semi_low", offending, "unit segment")
    return report


def _disodot(R):
    """(0,x)(0,y⊙z) = (0,xy)+(0,xz)-(0,xu); first witness with y⊕z=u, first overall"""
    A, u = R.A, R.u
    odot = R._odot
    restricted = unrestricted = None
    for x, y, z in itertools.product(A.elements, repeat=3):
        left = R.mul(R.embed(x), R.embed(odot[y, z]))
        right = R.sub(R.add(R.embed(A.prod[x, y]), R.embed(A.prod[x, z])), R.embed(A.prod[x, u]))
        if left == right:
            continue
        if unrestricted is None:
            unrestricted = (x, y, z)
        if restricted is None and A.oplus[y, z] == u:
            restricted = (x, y, z)
            break
    return restricted, unrestricted


@dataclass(frozen=True)
class SumProductResult:
    left: tuple
    right: tuple
    in_segment: bool
    segment_value: tuple

    @property
    def literal_holds(self):
        return self.left == self.right

    @property
    def segment_holds(self):
        """None when a sum leaves [0, u]"""
        return self.left == self.segment_value if self.in_segment else None


def sum_product_identity(A, xs, ys):
    """Compare (Σ(0,xᵢ))(Σ(0,yᵢ)) with Σ(0,xᵢyᵢ) and, inside the segment, with (0,(⊕xᵢ)(⊕yᵢ)).

    The segment form checked is (Σ(0,xᵢ))(Σ(0,yᵢ)) = (0,(⊕xᵢ)(⊕yᵢ)), and only
    when both sums stay in [0, u] so that Σ(0,xᵢ) = (0,⊕xᵢ) and likewise for y;
    ``segment_holds`` is None otherwise. It does not say Σ(0,xᵢyᵢ) equals
    (0,(⊕xᵢ)(⊕yᵢ)): on the two-element chain take x = (1, 0), y = (0, 1), where
    Σ(0,xᵢyᵢ) = 0 but (⊕x)(⊕y) = 1.
    """
    require_pmvf_chain(A)
    if len(xs) != len(ys):
        raise PreconditionError("both vectors need the same length")
    return _sum_product(ChainRing(A), xs, ys)


def _sum_product(R, xs, ys):
    A = R.A
    sx = sy = total = R.zero
    ox = oy = 0
    for x, y in zip(xs, ys):
        sx = R.add(sx, R.embed(x))
        sy = R.add(sy, R.embed(y))
        total = R.add(total, R.embed(A.prod[x, y]))
        ox = int(A.oplus[ox, x])
        oy = int(A.oplus[oy, y])
    left = R.mul(sx, sy)
    unit = R.unit
    in_segment = R.leq(sx, unit) and R.leq(sy, unit) and sx == R.embed(ox) and sy == R.embed(oy)
    return SumProductResult(left, total, in_segment, R.embed(A.prod[ox, oy]))


def sum_product_report(A, length=2):
    """Sweep every pair of vectors up to ``length``"""
    require_pmvf_chain(A)
    R = ChainRing(A)
    report = Report(f"sum_product:{A.name}")
    segment_witness = literal_witness = None
    for k in range(1, length + 1):
        for xs in itertools.product(A.elements, repeat=k):
            for ys in itertools.product(A.elements, repeat=k):
                result = _sum_product(R, xs, ys)
                if segment_witness is None and result.segment_holds is False:
                    segment_witness = (xs, ys)
                if literal_witness is None and not result.literal_holds:
                    literal_witness = (xs, ys)
    report.add("chain.sum_product_segment", segment_witness is None, segment_witness,
               f"vectors up to length {length}")
    report.note("chain.sum_product_literal", literal_witness is None, literal_witness)
    return report


def gamma_chain_roundtrip(A):
    """a ↦ (0, a) is an isomorphism of A onto the unit segment of its pair ring"""
    require_pmvf_chain(A)
    R = ChainRing(A)
    report = Report(f"gamma_chain:{A.name}")
    i = [R.embed(a) for a in A.elements]
    unit = R.unit

    report.add("gamma_chain.bijection", sorted(set(i)) == sorted(R.segment()) and len(set(i)) == A.size)

    def first(predicate):
        return next(((a, b) for a in A.elements for b in A.elements if not predicate(a, b)), None)

    witness = first(lambda a, b: i[A.oplus[a, b]] == R.meet(R.add(i[a], i[b]), unit))
    report.add("gamma_chain.oplus", witness is None, witness)
    witness = next((a for a in A.elements if i[A.neg[a]] != R.sub(unit, i[a])), None)
    report.add("gamma_chain.neg", witness is None, witness)
    witness = first(lambda a, b: i[A.prod[a, b]] == R.mul(i[a], i[b]))
    report.add("gamma_chain.prod", witness is None, witness)

    G = gamma(R)
    mapping = [G.index_of(x) for x in i]
    hom = hom_check(A, G.algebra, mapping)
    report.add("gamma_chain.table_iso", hom.passed and len(set(mapping)) == A.size, hom.witness)
    report.add("gamma_chain.isomorphic", find_isomorphism(A, G.algebra) is not None)
    return report


def ring_tables(A, bound=1):
    """Addition and multiplication tables of the pair ring on the window |x| ≤ bound·u"""
    R = ChainRing(A)
    elements = R.window(bound)
    labels = [f"({m},{a})" for m, a in elements]

    def fmt(x):
        return f"({x[0]},{x[1]})"

    add = pd.DataFrame([[fmt(R.add(x, y)) for y in elements] for x in elements], index=labels, columns=labels)
    mul = pd.DataFrame([[fmt(R.mul(x, y)) for y in elements] for x in elements], index=labels, columns=labels)
    return add, mul
