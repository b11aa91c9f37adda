"""Product decompositions from idempotents and the pushout squares they give.

For C = A×B mapped by g, e = g(0, 1) splits C as C/⟨e⟩ × C/⟨¬e⟩ and the two
quotient maps complete the squares over the product projections.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .algebra_core import FiniteAlgebra, hom_check, iter_homomorphisms, product_algebra
from .exceptions import BudgetExceededError, NotIdempotentError, PreconditionError
from .ideal_lattice import IdealSet, generated_ideal, quotient
from .report import Report

logger = logging.getLogger(__name__)

DEFAULT_MAX_PROBE_SIZE = 8
DEFAULT_PROBE_BUDGET = 200000


def _require_pmvf(C):
    verdict = C.variety
    if not verdict.at_least("PMVf"):
        raise PreconditionError(f"{C.name} is {verdict.display}, expected PMV-F")


def idempotents(C):
    _require_pmvf(C)
    diag = np.arange(C.size)
    return np.flatnonzero(C.prod[diag, diag] == diag).tolist()


@dataclass
class SplitResult:
    e: int
    ideal_e: IdealSet
    ideal_not_e: IdealSet
    left: FiniteAlgebra
    right: FiniteAlgebra
    theta: tuple
    report: Report

    @property
    def is_iso(self):
        return self.report.passed


def split(C, e):
    """θ(c) = ([c]_⟨e⟩, [c]_⟨¬e⟩) into C/⟨e⟩ × C/⟨¬e⟩, reporting whether it is an isomorphism"""
    _require_pmvf(C)
    e = int(e)
    if not 0 <= e < C.size:
        raise PreconditionError(f"{e} is not an element of {C.name}")
    if C.prod[e, e] != e and C.oplus[e, e] != e:
        raise NotIdempotentError(e)
    not_e = int(C.neg[e])
    ideal_e = generated_ideal(C, [e])
    ideal_not_e = generated_ideal(C, [not_e])
    left, to_left = quotient(C, ideal_e)
    right, to_right = quotient(C, ideal_not_e)
    target = product_algebra(left, right)
    theta = tuple(int(v) for v in to_left * right.size + to_right)

    report = Report(f"split:{C.name}@{e}")
    hom = hom_check(C, target, theta)
    report.add("split.theta_hom", hom.passed, hom.witness)
    seen = {}
    collision = next(((seen[t], c) for c, t in enumerate(theta) if seen.setdefault(t, c) != c), None)
    report.add("split.injective", collision is None, collision)
    report.add("split.surjective", len(set(theta)) == target.size, len(set(theta)))
    common = sorted(set(ideal_e.members) & set(ideal_not_e.members))
    report.add("split.kernels_meet", common == [0], common)
    joined = generated_ideal(C, ideal_e.members + ideal_not_e.members)
    report.add("split.ideals_join", len(joined) == C.size, list(joined.members))
    report.facts.update({'left_size': left.size, 'right_size': right.size})
    logger.debug(f"split {C.name} at {e}: {left.size} x {right.size}")
    return SplitResult(e, ideal_e, ideal_not_e, left, right, theta, report)


def _factor_map(g, size, pick, row_size):
    """The map induced on one product factor, or the first pair of disagreeing indices"""
    images = {}
    for index, value in enumerate(g):
        key = pick(index, row_size)
        first = images.setdefault(key, (index, int(value)))
        if first[1] != value:
            return None, (first[0], index)
    return tuple(images[k][1] for k in range(size)), None


def _homs(source, target, budget):
    return list(iter_homomorphisms(source, target, budget=budget))


def _universal(label, report, factor, corner, q_factor, q_corner, C, g, projection, probes, budget):
    """Every compatible (λ_factor, λ_g) pair factors through ``corner`` exactly once"""
    for probe in probes:
        from_factor = _homs(factor, probe, budget)
        from_c = _homs(C, probe, budget)
        from_corner = _homs(corner, probe, budget)
        failure = None
        pairs = 0
        for lam_factor in from_factor:
            for lam_g in from_c:
                if any(lam_factor[projection[i]] != lam_g[g[i]] for i in range(len(g))):
                    continue
                pairs += 1
                matches = [lam for lam in from_corner
                           if all(lam[q_corner[c]] == lam_g[c] for c in range(C.size))
                           and all(lam[q_factor[a]] == lam_factor[a] for a in range(factor.size))]
                if len(matches) != 1:
                    failure = (lam_factor, lam_g, len(matches))
                    break
            if failure:
                break
        report.add(f"pushout.{label}.universal.{probe.name}", failure is None, failure,
                   f"{pairs} compatible pairs")


def pushout_check(A, B, C, g, probes, max_probe_size=DEFAULT_MAX_PROBE_SIZE, budget=DEFAULT_PROBE_BUDGET):
    """Squares g/q_e over π_A and g/q_¬e over π_B are pushouts, tested against probes"""
    for probe in probes:
        if probe.size > max_probe_size:
            raise BudgetExceededError(f"probe {probe.name} has {probe.size} elements, limit {max_probe_size}")
    AB = product_algebra(A, B)
    hom = hom_check(AB, C, g)
    if not hom.passed:
        raise PreconditionError(f"g is not a homomorphism {AB.name} -> {C.name}: {hom.axiom} at {hom.witness}")
    g = tuple(int(v) for v in g)
    result = split(C, g[B.unit])
    report = Report(f"pushout:{C.name}")
    report.extend(result.report)
    e = result.e

    _, q_e = quotient(C, result.ideal_e)
    _, q_not_e = quotient(C, result.ideal_not_e)
    composed_a = [int(q_e[c]) for c in g]
    composed_b = [int(q_not_e[c]) for c in g]
    q_a, clash_a = _factor_map(composed_a, A.size, lambda i, nb: i // nb, B.size)
    q_b, clash_b = _factor_map(composed_b, B.size, lambda i, nb: i % nb, B.size)
    report.add("pushout.q_a_well_defined", clash_a is None, clash_a)
    report.add("pushout.q_b_well_defined", clash_b is None, clash_b)

    pi_a = [i // B.size for i in range(AB.size)]
    pi_b = [i % B.size for i in range(AB.size)]
    if q_a is not None:
        report.add("pushout.square_a", all(q_a[pi_a[i]] == composed_a[i] for i in range(AB.size)))
        hom = hom_check(A, result.left, q_a)
        report.add("pushout.q_a_hom", hom.passed, hom.witness)
        _universal("a", report, A, result.left, q_a, q_e, C, g, pi_a, probes, budget)
    if q_b is not None:
        report.add("pushout.square_b", all(q_b[pi_b[i]] == composed_b[i] for i in range(AB.size)))
        hom = hom_check(B, result.right, q_b)
        report.add("pushout.q_b_hom", hom.passed, hom.witness)
        _universal("b", report, B, result.right, q_b, q_not_e, C, g, pi_b, probes, budget)

    # the pushout of the two projections is the trivial algebra
    bad = None
    for probe in probes:
        pairs = sum(
            1
            for lam_a in _homs(A, probe, budget)
            for lam_b in _homs(B, probe, budget)
            if all(lam_a[pi_a[i]] == lam_b[pi_b[i]] for i in range(AB.size))
        )
        if pairs != (1 if probe.is_trivial else 0):
            bad = (probe.name, pairs)
            break
    report.add("pushout.projections_trivial", bad is None, bad)
    report.facts.update({'e': e, 'probes': [p.name for p in probes]})
    return report


def identity_map(A):
    return tuple(range(A.size))
