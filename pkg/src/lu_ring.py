"""Lattice-ordered unital rings and the unit-segment functor.

Elements are hashable Python values (tuples) owned by the ring instance;
all arithmetic goes through the ring so that chain rings, products of chain
rings and integer vectors share every generic check in this module.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from .algebra_core import FiniteAlgebra
from .exceptions import BudgetExceededError, NotSemiLowError
from .report import Report

logger = logging.getLogger(__name__)

MAX_DECOMPOSITION_TERMS = 100000


class LuRing(ABC):
    name = "R"
    numeric = False

    @property
    @abstractmethod
    def zero(self):
        ...

    @property
    @abstractmethod
    def unit(self):
        ...

    @abstractmethod
    def add(self, x, y):
        ...

    @abstractmethod
    def neg(self, x):
        ...

    @abstractmethod
    def mul(self, x, y):
        ...

    @abstractmethod
    def leq(self, x, y):
        ...

    @abstractmethod
    def meet(self, x, y):
        ...

    @abstractmethod
    def join(self, x, y):
        ...

    @abstractmethod
    def segment(self):
        """Every element of [0, u]"""

    @abstractmethod
    def window(self, bound):
        """Every element x with |x| ≤ bound·u"""

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def positive(self, x):
        return self.join(x, self.zero)

    def negative(self, x):
        return self.join(self.neg(x), self.zero)

    def abs(self, x):
        return self.add(self.positive(x), self.negative(x))

    def scalar(self, k, x):
        """k·x by doubling; k may be negative"""
        k = int(k)
        result, base, n = self.zero, x, abs(k)
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return self.neg(result) if k < 0 else result

    def is_nonnegative(self, x):
        return self.leq(self.zero, x)

    def within(self, x, bound):
        return self.leq(self.abs(x), self.scalar(bound, self.unit))

    def truncate(self, x):
        """(x ∨ 0) ∧ u"""
        return self.meet(self.join(x, self.zero), self.unit)

    def sort_key(self, x):
        return x

    def l_ideals(self):
        raise NotImplementedError(f"{self.name} does not enumerate its ℓ-ideals")

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


def segment_parts(R, x):
    """a_k = ((x - k·u) ∧ u) ∨ 0 for k = 0, 1, ... while x - k·u > 0; x ≥ 0"""
    parts = []
    k = 0
    rest = x
    while not R.leq(rest, R.zero):
        parts.append(R.truncate(rest))
        k += 1
        if k > MAX_DECOMPOSITION_TERMS:
            raise BudgetExceededError(f"{x} needs more than {MAX_DECOMPOSITION_TERMS} unit-segment terms")
        rest = R.sub(rest, R.unit)
    return parts


def decompose(R, x):
    """Unit-segment pieces of x⁺ and x⁻; x = Σ pos - Σ neg"""
    return segment_parts(R, R.positive(x)), segment_parts(R, R.negative(x))


@dataclass
class GammaAlgebra:
    ring: LuRing
    elements: list
    index: dict
    algebra: FiniteAlgebra

    def element(self, i):
        return self.elements[int(i)]

    def index_of(self, x):
        return self.index[x]


def gamma(R, name=None):
    """[0, u] with x⊕y = (x+y)∧u, ¬x = u-x and the ring product.

    Rejects a ring whose segment is not closed under the product, then one
    that is not semi-low; the witness is the first offending pair.
    """
    elements = sorted(R.segment(), key=R.sort_key)
    if not elements or elements[0] != R.zero:
        raise ValueError(f"segment of {R.name} must start at zero")
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)

    products = {}
    for x, y in itertools.product(elements, repeat=2):
        p = R.mul(x, y)
        if p not in index:
            raise NotSemiLowError((x, y), "product leaves the unit segment")
        products[x, y] = p
    for x, y in itertools.product(elements, repeat=2):
        if not R.leq(products[x, y], R.meet(x, y)):
            raise NotSemiLowError((x, y), "xy exceeds x∧y")

    u = R.unit
    neg = np.array([index[R.sub(u, x)] for x in elements], dtype=np.int64)
    oplus = np.zeros((n, n), dtype=np.int64)
    prod = np.zeros((n, n), dtype=np.int64)
    for (i, x), (j, y) in itertools.product(enumerate(elements), repeat=2):
        oplus[i, j] = index[R.meet(R.add(x, y), u)]
        prod[i, j] = index[products[x, y]]
    algebra = FiniteAlgebra(neg, oplus, prod, name=name or f"gamma({R.name})")
    return GammaAlgebra(R, elements, index, algebra)


def is_semi_low(R):
    segment = R.segment()
    return all(R.leq(R.mul(x, y), R.meet(x, y)) for x in segment for y in segment)


def sample_tuples(elements, arity, exhaustive_limit, samples, rng):
    """All tuples when there are at most exhaustive_limit of them, else a seeded sample"""
    n = len(elements)
    if n ** arity <= exhaustive_limit:
        return itertools.product(elements, repeat=arity), True
    picks = rng.integers(0, n, size=(samples, arity))
    return (tuple(elements[i] for i in row) for row in picks), False


def verify_lu_ring(R, bound, seed=0, exhaustive_limit=200000, samples=20000):
    """Ordered-ring laws on the window |x| ≤ bound·u, exhaustive when small"""
    rng = np.random.default_rng(seed)
    window = R.window(bound)
    report = Report(f"lu_ring:{R.name}")
    tag = R.__class__.__name__.lower()

    def first(predicate, arity):
        tuples, exhaustive = sample_tuples(window, arity, exhaustive_limit, samples, rng)
        for t in tuples:
            if not predicate(*t):
                return t, exhaustive
        return None, exhaustive

    laws = {
        "add_commutative": (2, lambda x, y: R.add(x, y) == R.add(y, x)),
        "add_associative": (3, lambda x, y, z: R.add(R.add(x, y), z) == R.add(x, R.add(y, z))),
        "add_inverse": (1, lambda x: R.add(x, R.neg(x)) == R.zero),
        "mul_commutative": (2, lambda x, y: R.mul(x, y) == R.mul(y, x)),
        "mul_associative": (3, lambda x, y, z: R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))),
        "distributive": (3, lambda x, y, z: R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))),
        "positivity": (2, lambda x, y: not (R.is_nonnegative(x) and R.is_nonnegative(y))
                       or R.is_nonnegative(R.mul(x, y))),
        "order_compatible": (3, lambda x, y, z: not R.leq(x, y) or R.leq(R.add(x, z), R.add(y, z))),
        "lattice_bounds": (2, lambda x, y: R.leq(R.meet(x, y), x) and R.leq(R.meet(x, y), y)
                           and R.leq(x, R.join(x, y)) and R.leq(y, R.join(x, y))),
        "strong_unit": (1, lambda x: R.within(x, bound)),
    }
    for law, (arity, predicate) in laws.items():
        witness, exhaustive = first(predicate, arity)
        mode = "exhaustive" if exhaustive else f"{samples} samples"
        report.add(f"{tag}.{law}", witness is None, witness, f"window {bound}, {mode}")

    segment = R.segment()
    offending = next(((x, y) for x in segment for y in segment
                      if not R.leq(R.mul(x, y), R.meet(x, y))), None)
    report.add(f"{tag}.semi_low", offending is None, offending, "unit segment")
    report.facts[f"{tag}_window_size"] = len(window)
    return report


@dataclass(frozen=True)
class LIdeal:
    """ℓ-ideal of a product ring: the elements vanishing outside ``support``"""
    ring: LuRing = field(compare=False, repr=False)
    support: tuple

    def __contains__(self, x):
        return all(x[i] == f.zero for i, f in enumerate(self.ring.factors) if i not in self.support)

    @property
    def is_prime(self):
        return len(self.support) == len(self.ring.factors) - 1


class ProductRing(LuRing):
    """Componentwise ring, order and lattice over a list of factor rings"""

    def __init__(self, factors, name=None):
        self.factors = list(factors)
        self.name = name or "x".join(f.name for f in self.factors) or "0"

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def unit(self):
        return tuple(f.unit for f in self.factors)

    @property
    def numeric(self):
        return all(f.numeric for f in self.factors)

    def _map(self, op, *args):
        return tuple(getattr(f, op)(*parts) for f, *parts in zip(self.factors, *args))

    def add(self, x, y):
        return self._map('add', x, y)

    def neg(self, x):
        return self._map('neg', x)

    def mul(self, x, y):
        return self._map('mul', x, y)

    def meet(self, x, y):
        return self._map('meet', x, y)

    def join(self, x, y):
        return self._map('join', x, y)

    def leq(self, x, y):
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def within(self, x, bound):
        return all(f.within(a, bound) for f, a in zip(self.factors, x))

    def segment(self):
        return list(itertools.product(*(f.segment() for f in self.factors)))

    def window(self, bound):
        return list(itertools.product(*(f.window(bound) for f in self.factors)))

    def l_ideals(self):
        """Coordinate supports; every factor has only the trivial ℓ-ideals"""
        n = len(self.factors)
        supports = itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1))
        return [LIdeal(self, support) for support in supports]

    def prime_l_ideals(self):
        return [ideal for ideal in self.l_ideals() if ideal.is_prime]

    def quotient(self, ideal):
        """R/J as the product of the factors outside J's support, with the projection"""
        keep = [i for i in range(len(self.factors)) if i not in ideal.support]
        target = ProductRing([self.factors[i] for i in keep], name=f"{self.name}/{list(ideal.support)}")

        def project(x):
            return tuple(x[i] for i in keep)

        return target, project


def f_ring_check(R, bound, seed=0, exhaustive_limit=200000, samples=20000):
    """a∧b = 0 and c ≥ 0 give ac∧b = a∧cb = 0 and ab = 0, on the window.

    Disjoint pairs are produced as (d⁺, d⁻): every disjoint pair inside the
    window arises this way from d = a - b.
    """
    rng = np.random.default_rng(seed)
    window = R.window(bound)
    report = Report(f"f_ring:{R.name}")
    tuples, exhaustive = sample_tuples(window, 2, exhaustive_limit, samples, rng)
    law = product_law = None
    for d, z in tuples:
        a, b, c = R.positive(d), R.negative(d), R.abs(z)
        if law is None and (R.meet(R.mul(a, c), b) != R.zero or R.meet(a, R.mul(c, b)) != R.zero):
            law = (a, b, c)
        if product_law is None and R.mul(a, b) != R.zero:
            product_law = (a, b)
        if law is not None and product_law is not None:
            break
    mode = "exhaustive" if exhaustive else f"{samples} samples"
    report.add("f_ring.disjoint_absorbs", law is None, law, f"window {bound}, {mode}")
    report.add("f_ring.disjoint_product_zero", product_law is None, product_law, f"window {bound}, {mode}")
    return report
