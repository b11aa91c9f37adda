"""The ring generated by an algebra inside the product of its chain rings.

An element is a tuple with one canonical (m, a) pair per prime ideal, in the
order returned by ``ideal_lattice.spec``. Elements are only ever produced
from generators with add, neg and mul, so membership is by construction.
Windows and bulk evaluation work on integer coordinates, one m·k + rank(a)
per prime, where the pair addition becomes integer addition.
"""

import itertools
import logging

import numpy as np

from .algebra_core import compose_maps, find_isomorphism, hom_check
from .chain_ring import ChainRing
from .exceptions import BudgetExceededError, PreconditionError
from .ideal_lattice import quotient, spec
from .lu_ring import ProductRing, decompose, gamma
from .report import Report

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_BUDGET = 200000
MAX_WINDOW_CELLS = 50_000_000


def require_pmvf(A):
    if A.is_trivial:
        raise PreconditionError("the trivial algebra has an empty spectrum")
    verdict = A.variety
    if not verdict.at_least("PMVf"):
        raise PreconditionError(f"{A.name} is {verdict.display}, expected PMV-F")


class SpectrumRing(ProductRing):
    def __init__(self, A, window_budget=DEFAULT_WINDOW_BUDGET):
        require_pmvf(A)
        self.A = A
        self.primes = spec(A)
        self.quotients = [quotient(A, prime) for prime in self.primes]
        super().__init__([ChainRing(factor) for factor, _ in self.quotients], name=f"{A.name}#")
        self.window_budget = window_budget
        self.generators = [
            tuple(ring.embed(projection[a]) for ring, (_, projection) in zip(self.factors, self.quotients))
            for a in A.elements
        ]
        self._steps = sorted(set(self.generators) - {self.zero})
        self._windows = {}
        self._generator_index = {}
        for a, g in enumerate(self.generators):
            self._generator_index.setdefault(g, a)

        # integer coordinates: one m·k + rank(a) per prime
        self.spans = np.array([ring.span for ring in self.factors], dtype=np.int64)
        self.generator_codes = np.array([self.codes(g) for g in self.generators],
                                        dtype=np.int64).reshape(A.size, len(self.factors))
        radix = self.spans + 1
        self._segment_strides = np.cumprod(np.concatenate(([1], radix[:-1]))).astype(np.int64)
        self._segment_lookup = np.full(int(np.prod(radix)), -1, dtype=np.int64)
        for a in reversed(A.elements):
            self._segment_lookup[self.generator_codes[a] @ self._segment_strides] = a
        logger.debug(f"{self.name}: {len(self.primes)} primes, {len(self._steps)} distinct generators")

    def generator(self, a):
        return self.generators[int(a)]

    def codes(self, x):
        return [ring.code(p) for ring, p in zip(self.factors, x)]

    def from_codes(self, row):
        return tuple(ring.from_code(c) for ring, c in zip(self.factors, row))

    def combination(self, terms):
        """Σ sign·(0, â) over (sign, a) pairs"""
        total = self.zero
        for sign, a in terms:
            g = self.generator(a)
            total = self.add(total, g if sign > 0 else self.neg(g))
        return total

    def reachable(self, bound):
        """Elements of the generated ring with |x| ≤ bound·u, by walking ±generator steps"""
        if bound not in self._windows:
            width = len(self.factors)
            limit = bound * self.spans
            dims = 2 * limit + 1
            cells = int(np.prod(dims))
            if cells > MAX_WINDOW_CELLS:
                raise BudgetExceededError(f"window {bound} of {self.name} spans {cells} cells")
            strides = np.cumprod(np.concatenate(([1], dims[:-1]))).astype(np.int64)
            steps = np.array([self.codes(g) for g in self._steps], dtype=np.int64).reshape(-1, width)
            steps = np.concatenate([steps, -steps])

            seen = np.zeros(cells, dtype=bool)
            frontier = np.zeros((1, width), dtype=np.int64)
            seen[(frontier + limit) @ strides] = True
            layers = [frontier]
            count = 1
            while len(frontier):
                candidates = (frontier[:, None, :] + steps[None, :, :]).reshape(-1, width)
                candidates = candidates[(np.abs(candidates) <= limit).all(axis=1)]
                keys, first = np.unique((candidates + limit) @ strides, return_index=True)
                fresh = ~seen[keys]
                seen[keys[fresh]] = True
                frontier = candidates[first[fresh]]
                count += len(frontier)
                if count > self.window_budget:
                    raise BudgetExceededError(
                        f"window {bound} of {self.name} has more than {self.window_budget} elements")
                layers.append(frontier)

            codes = np.concatenate(layers)
            elements = [self.from_codes(row) for row in codes.tolist()]
            order = sorted(range(len(elements)), key=elements.__getitem__)
            self._windows[bound] = ([elements[i] for i in order], codes[order])
        return self._windows[bound][0]

    def window(self, bound):
        return self.reachable(bound)

    def window_codes(self, bound):
        """Integer coordinates of ``window(bound)``, row for row"""
        self.reachable(bound)
        return self._windows[bound][1]

    def segment(self):
        return [x for x in self.reachable(1) if self.leq(self.zero, x) and self.leq(x, self.unit)]

    def index_of_generator(self, x):
        """The a with (0, â) = x, or None"""
        return self._generator_index.get(x)

    def evaluate(self, x, images, target):
        """Send x to Σ images[a] - Σ images[b] over the unit-segment pieces of x⁺ and x⁻"""
        pos, neg = decompose(self, x)
        total = target.zero
        for part in pos:
            total = target.add(total, images[self._segment_index(part)])
        for part in neg:
            total = target.sub(total, images[self._segment_index(part)])
        return total

    def evaluate_codes(self, codes, images):
        """``evaluate`` on rows of integer coordinates for integer-valued images"""
        codes = np.asarray(codes, dtype=np.int64).reshape(-1, len(self.factors))
        values = np.asarray(images, dtype=np.int64).reshape(len(images), -1)
        total = np.zeros((len(codes), values.shape[1]), dtype=np.int64)
        for sign, part in ((1, np.maximum(codes, 0)), (-1, np.maximum(-codes, 0))):
            k = 0
            while True:
                piece = np.clip(part - k * self.spans, 0, self.spans)
                live = piece.any(axis=1)
                if not live.any():
                    break
                a = self._segment_lookup[piece @ self._segment_strides]
                missing = live & (a < 0)
                if missing.any():
                    part_element = self.from_codes(piece[np.argmax(missing)].tolist())
                    raise PreconditionError(f"{part_element} is a unit-segment piece that no generator reaches")
                total += sign * np.where(live[:, None], values[np.maximum(a, 0)], 0)
                k += 1
        return total

    def evaluate_many(self, xs, images, target, codes=None):
        """``evaluate`` over a list; vectorised when the target is ℤ or ℤⁿ"""
        if not target.numeric:
            return [self.evaluate(x, images, target) for x in xs]
        if codes is None:
            codes = np.array([self.codes(x) for x in xs], dtype=np.int64)
        values = self.evaluate_codes(codes, images)
        if isinstance(target.zero, tuple):
            return [tuple(row) for row in values.tolist()]
        return [int(v) for v in values[:, 0]]

    def _segment_index(self, part):
        a = self.index_of_generator(part)
        if a is None:
            raise PreconditionError(f"{part} is a unit-segment piece that no generator reaches")
        return a


def _random_terms(rng, n, length):
    return [(1 if rng.integers(2) else -1, int(rng.integers(n))) for _ in range(length)]


def formal_product_check(A, xs=None, ys=None, max_length=3, samples=200, seed=0):
    """(Σεᵢ(0,âᵢ))(Σδⱼ(0,b̂ⱼ)) = Σεᵢδⱼ(0,âᵢb̂ⱼ) over every sign pattern.

    With explicit lists only those are checked; otherwise every pair of single
    generators plus ``samples`` seeded list pairs of length ≤ max_length.
    """
    R = SpectrumRing(A)
    report = Report(f"formal_product:{A.name}")
    if xs is not None or ys is not None:
        pairs = [(list(xs or []), list(ys or []))]
    else:
        rng = np.random.default_rng(seed)
        pairs = [([a], [b]) for a in A.elements for b in A.elements]
        for _ in range(samples):
            k, l = (int(v) for v in rng.integers(1, max_length + 1, size=2))
            pairs.append(([int(v) for v in rng.integers(A.size, size=k)],
                          [int(v) for v in rng.integers(A.size, size=l)]))

    witness = None
    for left, right in pairs:
        for eps in itertools.product((1, -1), repeat=len(left)):
            for delta in itertools.product((1, -1), repeat=len(right)):
                x = R.combination(zip(eps, left))
                y = R.combination(zip(delta, right))
                formal = R.combination(
                    (e * d, A.prod[a, b]) for e, a in zip(eps, left) for d, b in zip(delta, right))
                if R.mul(x, y) != formal:
                    witness = (tuple(zip(eps, left)), tuple(zip(delta, right)))
                    break
            if witness:
                break
        if witness:
            break
    report.add("spectrum.formal_product", witness is None, witness, f"{len(pairs)} list pairs")
    return report


def gamma_general_roundtrip(A, word_budget=10000, word_length=6, seed=0):
    """A is the unit segment of the ring it generates"""
    R = SpectrumRing(A)
    report = Report(f"spectrum:{A.name}")
    gens = R.generators
    u = R.unit
    elements = list(A.elements)

    report.add("spectrum.injective", len(set(gens)) == A.size)

    def first(predicate):
        return next(((a, b) for a in elements for b in elements if not predicate(a, b)), None)

    witness = first(lambda a, b: gens[A.oplus[a, b]] == R.meet(R.add(gens[a], gens[b]), u))
    report.add("spectrum.oplus", witness is None, witness)
    witness = next((a for a in elements if gens[A.neg[a]] != R.sub(u, gens[a])), None)
    report.add("spectrum.neg", witness is None, witness)
    witness = first(lambda a, b: gens[A.prod[a, b]] == R.mul(gens[a], gens[b]))
    report.add("spectrum.prod", witness is None, witness)

    # random signed sums of generators and of products of two generators
    rng = np.random.default_rng(seed)
    image = set(gens)
    escaped = None
    for _ in range(word_budget):
        w = R.zero
        word = []
        for _ in range(int(rng.integers(1, word_length + 1))):
            sign = 1 if rng.integers(2) else -1
            factors = [int(v) for v in rng.integers(A.size, size=int(rng.integers(1, 3)))]
            term = gens[factors[0]]
            for a in factors[1:]:
                term = R.mul(term, gens[a])
            w = R.add(w, term if sign > 0 else R.neg(term))
            word.append((sign, tuple(factors)))
        if R.truncate(w) not in image:
            escaped = tuple(word)
            break
    report.add("spectrum.segment_closure", escaped is None, escaped,
               f"{word_budget} words of length <= {word_length}, seed {seed}")

    segment = R.segment()
    report.add("spectrum.segment_is_image", set(segment) == image,
               sorted(set(segment) ^ image)[:1] or None)

    G = gamma(R)
    mapping = [G.index_of(g) for g in gens]
    hom = hom_check(A, G.algebra, mapping)
    report.add("spectrum.table_iso", hom.passed and len(set(mapping)) == A.size, hom.witness)
    report.add("spectrum.isomorphic", find_isomorphism(A, G.algebra) is not None)

    report.facts.update({
        'primes': [list(p.members) for p in R.primes],
        'segment_size': len(segment),
    })
    return report


class LiftedHom:
    """h♯ on the ring generated by A, sending (0, â) to (0, ĥ(a))"""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = tuple(int(v) for v in mapping)
        self._images = [target.generator(b) for b in self.mapping]

    def __call__(self, x):
        return self.source.evaluate(x, self._images, self.target)

    def on_terms(self, terms):
        """Image of a formal combination, mapped term by term"""
        return self.target.combination((sign, self.mapping[a]) for sign, a in terms)


def lift_hom(A, B, h, bound=2, samples=200, seed=0):
    """Lift a homomorphism A -> B to the generated rings and check the lift"""
    hom = hom_check(A, B, h)
    if not hom.passed:
        raise PreconditionError(f"map is not a homomorphism {A.name} -> {B.name}: {hom.axiom} at {hom.witness}")
    RA, RB = SpectrumRing(A), SpectrumRing(B)
    lift = LiftedHom(RA, RB, h)
    f = np.asarray(lift.mapping)
    report = Report(f"lift:{A.name}->{B.name}")
    gens = RA.generators
    elements = list(A.elements)

    witness = next((a for a in elements if lift(gens[a]) != RB.generator(f[a])), None)
    report.add("lift.square", witness is None, witness)
    report.add("lift.unit", lift(RA.unit) == RB.unit)

    def first(predicate):
        return next(((a, b) for a in elements for b in elements if not predicate(a, b)), None)

    witness = first(lambda a, b: lift(RA.add(gens[a], gens[b])) == RB.add(lift(gens[a]), lift(gens[b])))
    report.add("lift.add", witness is None, witness, "generator pairs")
    witness = first(lambda a, b: lift(RA.mul(gens[a], gens[b])) == RB.mul(lift(gens[a]), lift(gens[b])))
    report.add("lift.mul", witness is None, witness, "generator pairs")
    witness = next((a for a in elements if lift(RA.neg(gens[a])) != RB.neg(lift(gens[a]))), None)
    report.add("lift.neg", witness is None, witness)

    # a+b = (a⊕b)+(a⊙b) gives two formal combinations of one element
    odot = A.derived.odot
    witness = first(lambda a, b: lift.on_terms([(1, a), (1, b)])
                    == lift.on_terms([(1, A.oplus[a, b]), (1, odot[a, b])]))
    collisions = {}
    rng = np.random.default_rng(seed)
    clash = None
    for _ in range(samples):
        terms = tuple(_random_terms(rng, A.size, int(rng.integers(1, 5))))
        value = RA.combination(terms)
        image = lift.on_terms(terms)
        if collisions.setdefault(value, (terms, image))[1] != image:
            clash = (collisions[value][0], terms)
            break
    report.add("lift.well_defined", witness is None and clash is None, witness or clash,
               f"Chang pairs and {samples} random combinations")

    for k, prime in enumerate(RB.primes):
        preimage = [a for a in elements if f[a] in prime]
        index = next((i for i, p in enumerate(RA.primes) if list(p.members) == preimage), None)
        label = f"lift.prime{k}"
        report.add(f"{label}.preimage_prime", index is not None, preimage)
        if index is None:
            continue
        _, proj_a = RA.quotients[index]
        _, proj_b = RB.quotients[k]
        restriction = {}
        clash = None
        for a in elements:
            c = restriction.setdefault(int(proj_a[a]), int(proj_b[f[a]]))
            if c != proj_b[f[a]]:
                clash = a
                break
        report.add(f"{label}.restriction", clash is None, clash)
        if clash is not None:
            continue
        chain_b = RB.factors[k]
        window = RA.window(bound)
        bad = next((x for x in window
                    if lift(x)[k] != chain_b.canon(x[index][0], restriction[x[index][1]])), None)
        report.add(f"{label}.componentwise", bad is None, bad, f"window {bound}")
    return lift, report


def check_functorial(A, B, C, h, g, bound=2):
    """(g∘h)♯ = g♯∘h♯ on generators and on the window"""
    RA, RB, RC = SpectrumRing(A), SpectrumRing(B), SpectrumRing(C)
    lift_h = LiftedHom(RA, RB, h)
    lift_g = LiftedHom(RB, RC, g)
    lift_gh = LiftedHom(RA, RC, compose_maps(g, h))
    report = Report(f"functorial:{A.name}->{B.name}->{C.name}")
    bad = next((x for x in RA.window(bound) if lift_gh(x) != lift_g(lift_h(x))), None)
    report.add("lift.functorial", bad is None, bad, f"window {bound}")
    return report
