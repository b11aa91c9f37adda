import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .algebra_core import FiniteAlgebra, hom_check
from .exceptions import BudgetExceededError, NonAbsorbentIdealError, PreconditionError
from .report import Report

logger = logging.getLogger(__name__)

DEFAULT_IDEAL_BUDGET = 10000


def _mask(A, S):
    mask = np.zeros(A.size, dtype=bool)
    members = [int(x) for x in S]
    if members:
        if min(members) < 0 or max(members) >= A.size:
            raise PreconditionError(f"subset {sorted(set(members))} is not inside the carrier of {A.name}")
        mask[members] = True
    return mask


def is_ideal(A, S):
    """0 ∈ S, S is a down-set and S is closed under ⊕"""
    mask = _mask(A, S)
    if not mask[0]:
        return False
    leq = A.derived.leq
    if np.any(leq & mask[None, :] & ~mask[:, None]):
        return False
    idx = np.flatnonzero(mask)
    return bool(mask[A.oplus[np.ix_(idx, idx)]].all())


def is_absorbent(A, S):
    mask = _mask(A, S)
    return is_ideal(A, S) and bool(mask[A.prod[np.flatnonzero(mask), :]].all())


def is_prime_mv(A, S):
    mask = _mask(A, S)
    if not is_ideal(A, S) or mask[A.unit]:
        return False
    inside = mask[A.derived.meet]
    return not np.any(inside & ~mask[:, None] & ~mask[None, :])


def is_prime_w(A, S):
    mask = _mask(A, S)
    if not is_absorbent(A, S) or mask[A.unit]:
        return False
    inside = mask[A.prod]
    return not np.any(inside & ~mask[:, None] & ~mask[None, :])


@dataclass(frozen=True)
class IdealSet:
    parent: FiniteAlgebra = field(compare=False, repr=False)
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, 'members', tuple(sorted({int(x) for x in self.members})))

    def __contains__(self, x):
        return int(x) in self.members

    def __len__(self):
        return len(self.members)

    @property
    def mask(self):
        return _mask(self.parent, self.members)

    @property
    def is_mv_ideal(self):
        return is_ideal(self.parent, self.members)

    @property
    def is_absorbent(self):
        return is_absorbent(self.parent, self.members)

    @property
    def is_prime_mv(self):
        return is_prime_mv(self.parent, self.members)

    @property
    def is_prime_w(self):
        return is_prime_w(self.parent, self.members)

    @property
    def is_proper(self):
        return self.parent.unit not in self.members

    def flags(self):
        return {
            'is_mv_ideal': self.is_mv_ideal,
            'is_absorbent': self.is_absorbent,
            'is_prime_mv': self.is_prime_mv,
            'is_prime_w': self.is_prime_w,
        }


def generated_ideal(A, G):
    """Least ideal containing G: the down-set of the ⊕-closure of G ∪ {0}"""
    reach = _mask(A, G)
    reach[0] = True
    while True:
        idx = np.flatnonzero(reach)
        grown = reach.copy()
        grown[A.oplus[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, reach):
            break
        reach = grown
    down = A.derived.leq[:, reach].any(axis=1)
    return IdealSet(A, np.flatnonzero(down).tolist())


def all_ideals(A, budget=DEFAULT_IDEAL_BUDGET):
    """Every ideal of A, each reached by adding one element to a smaller ideal"""
    start = generated_ideal(A, [])
    seen = {start.members: start}
    queue = deque([start])
    while queue:
        ideal = queue.popleft()
        for x in A.elements:
            if x in ideal:
                continue
            bigger = generated_ideal(A, ideal.members + (x,))
            if bigger.members not in seen:
                seen[bigger.members] = bigger
                if len(seen) > budget:
                    raise BudgetExceededError(f"{A.name} has more than {budget} ideals")
                queue.append(bigger)
    return [seen[key] for key in sorted(seen)]


def all_ideals_w(A, budget=DEFAULT_IDEAL_BUDGET):
    return [ideal for ideal in all_ideals(A, budget) if ideal.is_absorbent]


def spec(A, budget=DEFAULT_IDEAL_BUDGET):
    """Prime MV-ideals in lexicographic order of their member lists"""
    return [ideal for ideal in all_ideals(A, budget) if ideal.is_prime_mv]


def spec_w(A, budget=DEFAULT_IDEAL_BUDGET):
    return [ideal for ideal in all_ideals(A, budget) if ideal.is_prime_w]


def check_espectros(A, budget=DEFAULT_IDEAL_BUDGET):
    """Absorbent ideals coincide with ideals and Spec_W ⊆ Spec on a PMV_f algebra"""
    verdict = A.variety
    if not verdict.at_least("PMVf"):
        raise PreconditionError(f"{A.name} is {verdict.display}, the spectrum comparison needs PMV-F")

    report = Report(f"spectra:{A.name}")
    ideals = all_ideals(A, budget)
    absorbent = [ideal for ideal in ideals if ideal.is_absorbent]
    primes = [ideal for ideal in ideals if ideal.is_prime_mv]
    primes_w = [ideal for ideal in ideals if ideal.is_prime_w]
    prime_keys = {p.members for p in primes}

    missing = [list(ideal.members) for ideal in ideals if not ideal.is_absorbent]
    report.add("spectra.ideals_absorbent", not missing, missing[0] if missing else None,
               f"{len(absorbent)} of {len(ideals)} ideals absorbent")
    stray = [list(p.members) for p in primes_w if p.members not in prime_keys]
    report.add("spectra.spec_w_in_spec", not stray, stray[0] if stray else None)
    loose = [list(p.members) for p in primes if not p.is_absorbent]
    report.add("spectra.primes_absorbent", not loose, loose[0] if loose else None)
    report.note("spectra.spec_w_equals_spec", len(primes_w) == len(primes),
                detail=f"|Spec|={len(primes)} |Spec_W|={len(primes_w)}")
    report.facts.update({
        'ideals': len(ideals),
        'absorbent_ideals': len(absorbent),
        'spec': [list(p.members) for p in primes],
        'spec_w': [list(p.members) for p in primes_w],
    })
    return report


def congruence_table(A, I):
    """eq[x, y] iff (x⊖y)⊕(y⊖x) ∈ I"""
    ominus = A.derived.ominus
    distance = A.oplus[ominus, ominus.T]
    return _mask(A, I.members if isinstance(I, IdealSet) else I)[distance]


def quotient(A, I, with_product=True):
    """A/I with the least index of each class as its representative.

    Classes are numbered in increasing order of representatives, so the class
    of 0 is 0. Carrying the product needs an absorbent ideal; pass
    ``with_product=False`` to quotient the MV-reduct instead.
    """
    members = I.members if isinstance(I, IdealSet) else tuple(sorted(int(x) for x in I))
    if not is_ideal(A, members):
        raise PreconditionError(f"{list(members)} is not an ideal of {A.name}")
    if with_product and not is_absorbent(A, members):
        raise NonAbsorbentIdealError(members)
    source = A if with_product else A.mv_reduct()

    eq = congruence_table(source, members)
    representative = np.argmax(eq, axis=1)
    reps = np.unique(representative)
    position = np.full(A.size, -1, dtype=np.int64)
    position[reps] = np.arange(reps.size)
    projection = position[representative]

    neg = projection[source.neg[reps]]
    oplus = projection[source.oplus[np.ix_(reps, reps)]]
    prod = projection[source.prod[np.ix_(reps, reps)]]
    name = f"{A.name}/{{{','.join(str(m) for m in members)}}}"
    projection.setflags(write=False)
    return FiniteAlgebra(neg, oplus, prod, name=name), projection


@dataclass
class SubdirectEmbedding:
    primes: list
    factors: list
    projections: list
    hat: np.ndarray
    carries_product: bool
    report: Report

    def image(self, a):
        return tuple(int(v) for v in self.hat[a])


def subdirect_embedding(A, budget=DEFAULT_IDEAL_BUDGET):
    """â(P) = [a]_P into the product of the chains A/P over Spec(A)"""
    if A.is_trivial:
        raise PreconditionError("the trivial algebra has an empty spectrum")
    verdict = A.variety
    if not verdict.at_least("MV"):
        raise PreconditionError(f"{A.name} is not an MV-algebra")
    carries = verdict.at_least("PMVf")
    source = A if carries else A.mv_reduct()

    primes = spec(A, budget)
    factors, projections = [], []
    for prime in primes:
        factor, projection = quotient(A, prime, with_product=carries)
        factors.append(factor)
        projections.append(projection)
    hat = np.stack(projections, axis=1) if projections else np.zeros((A.size, 0), dtype=np.int64)

    report = Report(f"subdirect:{A.name}")
    rows = {tuple(row) for row in hat.tolist()}
    injective = len(rows) == A.size
    report.add("subdirect.injective", injective, None if injective else _collision(hat))

    intersection = set(A.elements)
    for prime in primes:
        intersection &= set(prime.members)
    report.add("subdirect.kernel_matches_injectivity", (intersection == {0}) == injective,
               sorted(intersection))

    for k, (prime, factor, projection) in enumerate(zip(primes, factors, projections)):
        label = f"subdirect.factor{k}"
        hom = hom_check(source, factor, projection)
        report.add(f"{label}.hom", hom.passed, hom.witness)
        onto = np.unique(projection).size == factor.size
        report.add(f"{label}.surjective", onto)
        report.add(f"{label}.chain", factor.is_chain, list(prime.members))
        if carries:
            report.add(f"{label}.prime_absorbent", prime.is_absorbent, list(prime.members))

    report.facts['spec'] = [list(p.members) for p in primes]
    logger.debug(f"{A.name} embeds into {len(primes)} chains")
    return SubdirectEmbedding(primes, factors, projections, hat, carries, report)


def _collision(hat):
    seen = {}
    for a, row in enumerate(hat.tolist()):
        key = tuple(row)
        if key in seen:
            return (seen[key], a)
        seen[key] = a
    return None


def quotient_report(A, I, with_product=True):
    """Projection is a homomorphism with kernel I; prime ideals give chains"""
    factor, projection = quotient(A, I, with_product)
    source = A if with_product else A.mv_reduct()
    members = I.members if isinstance(I, IdealSet) else tuple(sorted(I))
    report = Report(f"quotient:{factor.name}")
    hom = hom_check(source, factor, projection)
    report.add("quotient.projection_hom", hom.passed, hom.witness)
    kernel = tuple(int(x) for x in np.flatnonzero(projection == 0))
    report.add("quotient.kernel", kernel == tuple(members), list(kernel))
    eq = congruence_table(source, members)
    classes = np.unique(np.argmax(eq, axis=1)).size
    report.add("quotient.class_count", classes == factor.size, classes)
    if is_prime_mv(A, members):
        report.add("quotient.prime_gives_chain", factor.is_chain)
    if with_product and A.variety.at_least("MVWRig"):
        kept = "PMVf" if A.variety.at_least("PMVf") else "MVWRig"
        report.add("quotient.variety_preserved", factor.variety.at_least(kept), factor.variety.label,
                   f"expected at least {kept}")
    return factor, projection, report
