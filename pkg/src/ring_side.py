"""Integer rings, the ideal correspondence and the ring round trips.

Windowed claims are checked on |x| ≤ bound·u and name their window in the
report detail.
"""

import logging

import numpy as np

from .algebra_core import find_isomorphism, hom_check
from .catalog import boolean
from .exceptions import PreconditionError
from .ideal_lattice import IdealSet, all_ideals, quotient
from .lu_ring import LuRing, ProductRing, decompose, gamma, is_semi_low, sample_tuples
from .report import Report
from .spectrum_ring import SpectrumRing

logger = logging.getLogger(__name__)

MAX_BOOLEAN_RING_RANK = 4


class IntegerRing(LuRing):
    """ℤ with strong unit ``unit``"""

    numeric = True

    def __init__(self, unit=1):
        if int(unit) < 1:
            raise PreconditionError(f"the unit of ℤ must be positive, got {unit}")
        self._unit = int(unit)
        self.name = "Z" if self._unit == 1 else f"Z[{self._unit}]"

    @property
    def zero(self):
        return 0

    @property
    def unit(self):
        return self._unit

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def leq(self, x, y):
        return x <= y

    def meet(self, x, y):
        return min(x, y)

    def join(self, x, y):
        return max(x, y)

    def scalar(self, k, x):
        return int(k) * x

    def within(self, x, bound):
        return abs(x) <= bound * self._unit

    def segment(self):
        return list(range(self._unit + 1))

    def window(self, bound):
        return list(range(-bound * self._unit, bound * self._unit + 1))


class IntVector(ProductRing):
    """ℤⁿ with the componentwise order; ``unit`` is an int or one int per coordinate"""

    def __init__(self, n, unit=1):
        units = [unit] * n if isinstance(unit, int) else list(unit)
        if len(units) != n:
            raise PreconditionError(f"IntVector({n}) needs {n} unit coordinates, got {len(units)}")
        super().__init__([IntegerRing(u) for u in units], name=f"Z^{n}")
        self.n = n


# ---------------------------------------------------------------------------
# Ring -> algebra -> ring
# ---------------------------------------------------------------------------

def _first_failures(S, tuples, images, target, mapped, operations):
    """First pair breaking image(x op y) = image(x) op image(y), per operation"""
    failures = {}
    for name in operations:
        results = S.evaluate_many([getattr(S, name)(x, y) for x, y in tuples], images, target)
        expected = getattr(target, name)
        failures[name] = next(((x, y) for (x, y), v in zip(tuples, results)
                               if v != expected(mapped[x], mapped[y])), None)
    return failures


def upsilon_roundtrip(R, bound=8, samples=2000, seed=0, exhaustive_limit=10000):
    """(Γ(R,u))♯ ≅ R: the generated ring of the unit segment maps onto the window of R"""
    G = gamma(R)
    report = Report(f"upsilon:{R.name}")
    verdict = G.algebra.variety
    report.add("gamma.is_pmvf", verdict.at_least("PMVf"), verdict.label, "unit segment of a semi-low ring")
    if not verdict.at_least("PMVf"):
        return report
    S = SpectrumRing(G.algebra)
    images = G.elements

    def upsilon(x):
        return S.evaluate(x, images, R)

    bad = next((a for a in G.algebra.elements if upsilon(S.generator(a)) != G.element(a)), None)
    report.add("upsilon.generators", bad is None, bad)
    report.add("upsilon.unit", upsilon(S.unit) == R.unit)

    window = S.window(bound)
    values = S.evaluate_many(window, images, R, S.window_codes(bound))
    mapped = dict(zip(window, values))
    distinct = set(values)
    target = set(R.window(bound))
    report.add("upsilon.injective", len(distinct) == len(window), None, f"window {bound}")
    report.add("upsilon.onto_window", distinct == target,
               sorted(target - distinct, key=R.sort_key)[:1] or None, f"window {bound}")

    rng = np.random.default_rng(seed)
    tuples, exhaustive = sample_tuples(window, 2, exhaustive_limit, samples, rng)
    tuples = list(tuples)
    failures = _first_failures(S, tuples, images, R, mapped, ("add", "mul", "meet"))
    failures["order"] = next(((x, y) for x, y in tuples if S.leq(x, y) != R.leq(mapped[x], mapped[y])), None)
    mode = "exhaustive" if exhaustive else f"{samples} samples"
    for law, witness in failures.items():
        report.add(f"upsilon.{law}", witness is None, witness, f"window {bound}, {mode}")
    report.facts['window_size'] = len(window)
    return report


# ---------------------------------------------------------------------------
# Ideal correspondence
# ---------------------------------------------------------------------------

def phi(G, J):
    """φ(J) = {x : |x| ∧ u ∈ J} as a membership predicate on the ring of G"""
    R = G.ring
    members = set(J.members if isinstance(J, IdealSet) else J)

    def contains(x):
        return G.index_of(R.meet(R.abs(x), R.unit)) in members

    return contains


def psi(G, H):
    """ψ(H) = H ∩ [0, u] as an ideal of Γ(R, u)"""
    return IdealSet(G.algebra, [i for i, x in enumerate(G.elements) if H(x)])


def ideal_correspondence_report(R, bound=5, samples=2000, seed=0, exhaustive_limit=10000):
    """ψ∘φ = id on every ideal; φ∘ψ = id on every enumerated ℓ-ideal, on the window"""
    G = gamma(R)
    ideals = all_ideals(G.algebra)
    window = R.window(bound)
    report = Report(f"ideals:{R.name}")

    bad = next((list(J.members) for J in ideals if psi(G, phi(G, J)).members != J.members), None)
    report.add("correspondence.psi_phi", bad is None, bad)

    signatures = {}
    for J in ideals:
        signatures.setdefault(tuple(phi(G, J)(x) for x in window), []).append(list(J.members))
    clash = next((group for group in signatures.values() if len(group) > 1), None)
    report.add("correspondence.phi_injective", clash is None, clash, f"window {bound}")

    monotone = next(((list(I.members), list(J.members)) for I in ideals for J in ideals
                     if set(I.members) <= set(J.members)
                     and any(phi(G, I)(x) and not phi(G, J)(x) for x in window)), None)
    report.add("correspondence.phi_monotone", monotone is None, monotone, f"window {bound}")

    l_ideals = R.l_ideals()
    bad = None
    for H in l_ideals:
        back = phi(G, psi(G, H.__contains__))
        bad = next(((list(H.support), x) for x in window if back(x) != (x in H)), None)
        if bad:
            break
    report.add("correspondence.phi_psi", bad is None, bad, f"window {bound}")
    report.add("correspondence.count", len(l_ideals) == len(ideals), (len(l_ideals), len(ideals)))

    # every ℓ-ideal is an L-ideal: rx ∈ H for r in the window and x ∈ H
    rng = np.random.default_rng(seed)
    tuples, exhaustive = sample_tuples(window, 2, exhaustive_limit, samples, rng)
    loose = next(((list(H.support), r, x) for r, x in tuples for H in l_ideals
                  if x in H and R.mul(r, x) not in H), None)
    mode = "exhaustive" if exhaustive else f"{samples} samples"
    report.add("correspondence.l_ideals_absorbent", loose is None, loose, f"window {bound}, {mode}")

    primes = R.prime_l_ideals()
    report.facts.update({
        'ideals': [list(J.members) for J in ideals],
        'prime_l_ideals': [list(H.support) for H in primes],
    })
    return report


def j_sharp_check(R, J, bound=8, samples=2000, seed=0, exhaustive_limit=10000):
    """φ(J) = J♯: members are exactly the x whose segment pieces all lie in J"""
    if not is_semi_low(R):
        raise PreconditionError(f"{R.name} is not semi-low")
    G = gamma(R)
    members = set(J.members if isinstance(J, IdealSet) else J)
    predicate = phi(G, members)
    report = Report(f"j_sharp:{R.name}")
    window = R.window(bound)

    def pieces_in_j(x):
        pos, neg = decompose(R, x)
        return all(G.index_of(part) in members for part in pos + neg)

    bad = next((x for x in window if predicate(x) != pieces_in_j(x)), None)
    report.add("j_sharp.decomposition", bad is None, bad, f"window {bound}")

    rng = np.random.default_rng(seed)
    tuples, exhaustive = sample_tuples(window, 2, exhaustive_limit, samples, rng)
    loose = next(((r, x) for r, x in tuples if predicate(x) and not predicate(R.mul(r, x))), None)
    mode = "exhaustive" if exhaustive else f"{samples} samples"
    report.add("j_sharp.absorbent", loose is None, loose, f"window {bound}, {mode}")
    report.facts['members_in_window'] = sum(1 for x in window if predicate(x))
    return report


def quotient_theorem_check(R, ideal):
    """Γ(R/J) ≅ Γ(R)/(J ∩ [0, u]) through [x]_J ↦ [x]_{J∩[0,u]}"""
    if not isinstance(R, ProductRing):
        raise PreconditionError(f"{R.name} has no computable quotient rings")
    G = gamma(R)
    target, project = R.quotient(ideal)
    left = gamma(target)
    trace = psi(G, ideal.__contains__)
    right, projection = quotient(G.algebra, trace)
    report = Report(f"quotient_theorem:{R.name}/{list(ideal.support)}")

    theta = {}
    clash = None
    for i, x in enumerate(G.elements):
        y = left.index_of(project(x))
        c = theta.setdefault(y, int(projection[i]))
        if c != projection[i]:
            clash = x
            break
    report.add("quotient_theorem.well_defined", clash is None, clash)
    report.add("quotient_theorem.total", len(theta) == left.algebra.size)
    if clash is None and len(theta) == left.algebra.size:
        mapping = [theta[y] for y in range(left.algebra.size)]
        hom = hom_check(left.algebra, right, mapping)
        report.add("quotient_theorem.hom", hom.passed, hom.witness)
        report.add("quotient_theorem.bijective", sorted(mapping) == list(range(right.size)))
    report.add("quotient_theorem.isomorphic", find_isomorphism(left.algebra, right) is not None)
    report.add("quotient_theorem.quotient_semi_low", is_semi_low(target))
    report.add("quotient_theorem.quotient_pmvf", left.algebra.variety.at_least("PMVf"),
               left.algebra.variety.label)
    return report


# ---------------------------------------------------------------------------
# Boolean algebras and ℤⁿ
# ---------------------------------------------------------------------------

def _indicator(f, n):
    return tuple((int(f) >> j) & 1 for j in range(n))


def boolean_ring_iso(n, bound=8, samples=2000, seed=0, exhaustive_limit=10000):
    """(2ⁿ)♯ ≅ ℤⁿ, generators going to indicator vectors"""
    if not 1 <= n <= MAX_BOOLEAN_RING_RANK:
        raise PreconditionError(f"boolean_ring_iso needs 1 <= n <= {MAX_BOOLEAN_RING_RANK}, got {n}")
    A = boolean(n, "inf")
    S = SpectrumRing(A)
    Z = IntVector(n)
    images = [_indicator(f, n) for f in A.elements]
    report = Report(f"boolean_ring:{n}")

    def theta(x):
        return S.evaluate(x, images, Z)

    bad = next((f for f in A.elements if theta(S.generator(f)) != images[f]), None)
    report.add("boolean.generators", bad is None, bad)
    report.add("boolean.unit", theta(S.unit) == Z.unit)

    window = S.window(bound)
    values = S.evaluate_many(window, images, Z, S.window_codes(bound))
    mapped = dict(zip(window, values))
    report.add("boolean.injective", len(set(values)) == len(window), None, f"window {bound}")

    rng = np.random.default_rng(seed)
    tuples, exhaustive = sample_tuples(window, 2, exhaustive_limit, samples, rng)
    failures = _first_failures(S, list(tuples), images, Z, mapped, ("add", "mul", "meet", "join"))
    mode = "exhaustive" if exhaustive else f"{samples} samples"
    for law, witness in failures.items():
        report.add(f"boolean.{law}", witness is None, witness, f"window {bound}, {mode}")

    # h = Σ k·λ_k with λ_k the idempotent marking the coordinates where h equals k
    targets = np.array(Z.window(bound), dtype=np.int64).reshape(-1, n)
    bits = 1 << np.arange(n, dtype=np.int64)
    combined = np.zeros((len(targets), len(S.factors)), dtype=np.int64)
    for k in range(-bound, bound + 1):
        combined += k * S.generator_codes[(targets == k).astype(np.int64) @ bits]
    hit = (S.evaluate_codes(combined, images) == targets).all(axis=1)
    missed = None if hit.all() else tuple(targets[np.argmin(hit)].tolist())
    report.add("boolean.lambda_surjective", missed is None, missed, f"window {bound}")
    return report
