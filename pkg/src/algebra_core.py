"""Finite MV-algebras with product.

An algebra lives on the carrier {0..n-1} with 0 the MV-zero and is given by
three tables: ``neg`` (n,), ``oplus`` (n, n) and ``prod`` (n, n). The unit is
always computed as ``neg[0]``. Laws are evaluated exhaustively with numpy
broadcasting over ``np.ix_`` grids, so every checker returns the full set of
violating tuples in lexicographic order when asked to.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .exceptions import InvalidTableError, NotLatticeError, ProbeBudgetError
from .report import Report

logger = logging.getLogger(__name__)

# Weakest first; each label implies the previous ones.
LABELS = ("NotMV", "MV", "MVWRig", "PMV", "PMVf", "PMV1")
TOWER = LABELS[1:]
LABEL_DISPLAY = {
    "NotMV": "NOT-MV",
    "MV": "MV",
    "MVWRig": "MVW-RIG",
    "PMV": "PMV",
    "PMVf": "PMV-F",
    "PMV1": "PMV-1",
}


@dataclass(frozen=True)
class DerivedOps:
    ominus: np.ndarray
    odot: np.ndarray
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Immutable operation tables of an MV-algebra with product"""
    neg: np.ndarray
    oplus: np.ndarray
    prod: np.ndarray = None
    name: str = "A"

    def __post_init__(self):
        neg = np.array(self.neg, dtype=np.int64)
        if neg.ndim != 1 or neg.size == 0:
            raise InvalidTableError(f"neg table must be a non-empty vector, got shape {neg.shape}")
        n = neg.size
        oplus = np.array(self.oplus, dtype=np.int64)
        if self.prod is None:
            prod = np.zeros((n, n), dtype=np.int64)
        else:
            prod = np.array(self.prod, dtype=np.int64)

        for label, table, shape in (("neg", neg, (n,)), ("oplus", oplus, (n, n)), ("prod", prod, (n, n))):
            if table.shape != shape:
                raise InvalidTableError(f"{label} table has shape {table.shape}, expected {shape}")
            if table.min() < 0 or table.max() >= n:
                raise InvalidTableError(f"{label} table has entries outside [0, {n})")
            table.setflags(write=False)

        object.__setattr__(self, 'neg', neg)
        object.__setattr__(self, 'oplus', oplus)
        object.__setattr__(self, 'prod', prod)

    @property
    def size(self):
        return int(self.neg.size)

    @property
    def zero(self):
        return 0

    @property
    def unit(self):
        return int(self.neg[0])

    @property
    def elements(self):
        return range(self.size)

    @property
    def is_trivial(self):
        return self.size == 1

    @cached_property
    def derived(self):
        return derived_ops(self)

    @cached_property
    def is_chain(self):
        leq = self.derived.leq
        return bool(np.all(leq | leq.T))

    @cached_property
    def variety(self):
        """Short-circuit classification, computed once"""
        return classify(self)

    @property
    def has_zero_product(self):
        return not self.prod.any()

    def mv_reduct(self):
        return FiniteAlgebra(self.neg, self.oplus, None, name=self.name)

    def with_prod(self, prod, name=None):
        return FiniteAlgebra(self.neg, self.oplus, prod, name=name or self.name)

    def same_tables(self, other):
        return (
            self.size == other.size
            and np.array_equal(self.neg, other.neg)
            and np.array_equal(self.oplus, other.oplus)
            and np.array_equal(self.prod, other.prod)
        )

    def __repr__(self):
        return f"FiniteAlgebra({self.name}, size={self.size})"


def _lattice_table(leq, candidate, lower):
    """Confirm (or repair) candidate bounds; raise if a bound is not unique."""
    n = leq.shape[0]
    r = np.arange(n)
    if lower:
        bounds = leq.T[:, None, :] & leq.T[None, :, :]
        dominated = leq[r[None, None, :], candidate[:, :, None]]
    else:
        bounds = leq[:, None, :] & leq[None, :, :]
        dominated = leq[candidate[:, :, None], r[None, None, :]]

    ok = np.take_along_axis(bounds, candidate[:, :, None], axis=2)[:, :, 0]
    ok &= ~np.any(bounds & ~dominated, axis=2)

    table = candidate.copy()
    for x, y in np.argwhere(~ok):
        zs = np.flatnonzero(bounds[x, y])
        if lower:
            best = [z for z in zs if leq[zs, z].all()]
        else:
            best = [z for z in zs if leq[z, zs].all()]
        if len(best) != 1:
            raise NotLatticeError((x, y), "meet" if lower else "join")
        table[x, y] = best[0]
    table.setflags(write=False)
    return table


def derived_ops(A):
    """⊖, ⊙, ≤, ∧ and ∨ tables.

    x⊖y = ¬(¬x⊕y), x⊙y = ¬(¬x⊕¬y), x≤y iff x⊖y = 0. Meet and join are the
    bounds of that order; NotLatticeError is raised when one is not unique.
    """
    n = A.size
    r = np.arange(n)
    ominus = A.neg[A.oplus[A.neg[:, None], r[None, :]]]
    odot = A.neg[A.oplus[np.ix_(A.neg, A.neg)]]
    leq = ominus == 0

    twins = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(twins):
        raise NotLatticeError(twins[0], "order")

    meet_guess = odot[r[:, None], A.oplus[A.neg[:, None], r[None, :]]]
    join_guess = A.oplus[ominus, r[None, :]]
    meet = _lattice_table(leq, meet_guess, lower=True)
    join = _lattice_table(leq, join_guess, lower=False)

    for table in (ominus, odot, leq):
        table.setflags(write=False)
    return DerivedOps(ominus=ominus, odot=odot, leq=leq, meet=meet, join=join)


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Axiom:
    name: str
    arity: int
    violation: Callable
    statement: str = ""


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    witnesses: tuple = ()

    @property
    def passed(self):
        return not self.witnesses

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class CheckResult:
    checker: str
    axioms: tuple

    @property
    def passed(self):
        return all(result.passed for result in self.axioms)

    @property
    def failed(self):
        return [result for result in self.axioms if not result.passed]

    @property
    def axiom(self):
        failed = self.failed
        return failed[0].axiom if failed else None

    @property
    def witness(self):
        failed = self.failed
        return failed[0].witness if failed else None

    def result_for(self, axiom_name):
        for result in self.axioms:
            if result.axiom == axiom_name:
                return result
        raise KeyError(axiom_name)


def _d(A):
    return A.derived


MV_AXIOMS = (
    Axiom("oplus_associative", 3,
          lambda A, a, b, c: A.oplus[A.oplus[a, b], c] != A.oplus[a, A.oplus[b, c]],
          "(a⊕b)⊕c = a⊕(b⊕c)"),
    Axiom("oplus_commutative", 2,
          lambda A, a, b: A.oplus[a, b] != A.oplus[b, a],
          "a⊕b = b⊕a"),
    Axiom("zero_neutral", 1,
          lambda A, a: A.oplus[a, 0] != a,
          "a⊕0 = a"),
    Axiom("double_negation", 1,
          lambda A, a: A.neg[A.neg[a]] != a,
          "¬¬a = a"),
    Axiom("unit_absorbing", 1,
          lambda A, a: A.oplus[a, A.unit] != A.unit,
          "a⊕¬0 = ¬0"),
    Axiom("lukasiewicz", 2,
          lambda A, a, b: A.oplus[A.neg[A.oplus[A.neg[a], b]], b] != A.oplus[A.neg[A.oplus[A.neg[b], a]], a],
          "¬(¬a⊕b)⊕b = ¬(¬b⊕a)⊕a"),
)

PRODUCT_SEMIGROUP = (
    Axiom("product_commutative", 2,
          lambda A, a, b: A.prod[a, b] != A.prod[b, a],
          "ab = ba"),
    Axiom("product_associative", 3,
          lambda A, a, b, c: A.prod[A.prod[a, b], c] != A.prod[a, A.prod[b, c]],
          "(ab)c = a(bc)"),
)

MVW_AXIOMS = (
    Axiom("zero_annihilates", 1,
          lambda A, a: A.prod[a, 0] != 0,
          "a0 = 0"),
    Axiom("subdistributive", 3,
          lambda A, a, b, c: ~_d(A).leq[A.prod[a, A.oplus[b, c]], A.oplus[A.prod[a, b], A.prod[a, c]]],
          "a(b⊕c) ≤ ab⊕ac"),
    Axiom("ominus_subdistributive", 3,
          lambda A, a, b, c: _d(A).ominus[_d(A).ominus[A.prod[a, b], A.prod[a, c]], A.prod[a, _d(A).ominus[b, c]]] != 0,
          "(ab⊖ac)⊖a(b⊖c) = 0"),
)

PMV_AXIOMS = (
    Axiom("pmv_odot_product", 3,
          lambda A, a, b, c: (_d(A).odot[a, b] == 0) & (_d(A).odot[A.prod[a, c], A.prod[b, c]] != 0),
          "a⊙b = 0 implies ac⊙bc = 0"),
    Axiom("pmv_distributive", 3,
          lambda A, a, b, c: (_d(A).odot[a, b] == 0)
          & (A.prod[c, A.oplus[a, b]] != A.oplus[A.prod[c, a], A.prod[c, b]]),
          "a⊙b = 0 implies c(a⊕b) = ca⊕cb"),
)

OMINUS_DISTRIBUTIVE = Axiom(
    "ominus_distributive", 3,
    lambda A, a, b, c: A.prod[a, _d(A).ominus[b, c]] != _d(A).ominus[A.prod[a, b], A.prod[a, c]],
    "a(b⊖c) = ab⊖ac",
)

PMVF_AXIOMS = (
    Axiom("product_below_meet", 2,
          lambda A, a, b: ~_d(A).leq[A.prod[a, b], _d(A).meet[a, b]],
          "ab ≤ a∧b"),
    OMINUS_DISTRIBUTIVE,
)

PMV1_AXIOMS = (
    OMINUS_DISTRIBUTIVE,
    Axiom("unit_neutral", 1,
          lambda A, a: A.prod[a, A.unit] != a,
          "au = a"),
)

PROPERTY_AXIOMS = (
    Axiom("product_monotone", 3,
          lambda A, a, b, c: _d(A).leq[a, b] & ~_d(A).leq[A.prod[a, c], A.prod[b, c]],
          "a ≤ b implies ac ≤ bc"),
    Axiom("unit_square_below_unit", 0,
          lambda A: ~_d(A).leq[A.prod[A.unit, A.unit], A.unit],
          "uu ≤ u"),
)

LATTICE_PROPERTY_AXIOMS = (
    Axiom("meet_distributive", 3,
          lambda A, a, b, c: A.prod[a, _d(A).meet[b, c]] != _d(A).meet[A.prod[a, b], A.prod[a, c]],
          "a(b∧c) = ab∧ac"),
    Axiom("join_distributive", 3,
          lambda A, a, b, c: A.prod[a, _d(A).join[b, c]] != _d(A).join[A.prod[a, b], A.prod[a, c]],
          "a(b∨c) = ab∨ac"),
)

CHECKERS = {
    "MV": MV_AXIOMS,
    "MVWRig": MV_AXIOMS + PRODUCT_SEMIGROUP + MVW_AXIOMS,
    "PMV": MV_AXIOMS + PRODUCT_SEMIGROUP + PMV_AXIOMS,
    "PMVf": MV_AXIOMS + PRODUCT_SEMIGROUP + MVW_AXIOMS + PMVF_AXIOMS,
    "PMV1": MV_AXIOMS + PRODUCT_SEMIGROUP + PMV1_AXIOMS,
}

AXIOMS_BY_NAME = {
    axiom.name: axiom
    for group in (MV_AXIOMS, PRODUCT_SEMIGROUP, MVW_AXIOMS, PMV_AXIOMS, PMVF_AXIOMS,
                  PMV1_AXIOMS, PROPERTY_AXIOMS, LATTICE_PROPERTY_AXIOMS)
    for axiom in group
}


def evaluate_axiom(A, axiom, exhaustive=False):
    n = A.size
    grid = np.ix_(*([np.arange(n)] * axiom.arity)) if axiom.arity else ()
    try:
        mask = np.broadcast_to(np.asarray(axiom.violation(A, *grid), dtype=bool), (n,) * axiom.arity)
    except NotLatticeError as e:
        return AxiomResult(axiom.name, (e.pair,))
    hits = np.argwhere(mask)
    if not exhaustive:
        hits = hits[:1]
    return AxiomResult(axiom.name, tuple(tuple(int(v) for v in row) for row in hits))


def replay(A, axiom_name, witness):
    """True iff ``witness`` violates the named axiom on A"""
    axiom = AXIOMS_BY_NAME[axiom_name]
    if len(witness) != axiom.arity:
        raise ValueError(f"{axiom_name} takes {axiom.arity} arguments, got {len(witness)}")
    args = [np.asarray(int(v)) for v in witness]
    return bool(axiom.violation(A, *args))


def run_checker(A, label, exhaustive=False):
    """Evaluate the axioms of ``label`` in order.

    The default mode stops at the first violated axiom and keeps one witness;
    exhaustive mode evaluates every axiom and keeps every witness. Axioms past
    the MV block are skipped when the MV block fails, since ⊖, ∧ and ∨ are
    meaningless there.
    """
    results = []
    mv_names = {axiom.name for axiom in MV_AXIOMS}
    mv_failed = False
    for axiom in CHECKERS[label]:
        if mv_failed and axiom.name not in mv_names:
            break
        result = evaluate_axiom(A, axiom, exhaustive)
        results.append(result)
        if not result.passed:
            if axiom.name in mv_names:
                mv_failed = True
            if not exhaustive:
                break
    return CheckResult(label, tuple(results))


def check_mv(A, exhaustive=False):
    return run_checker(A, "MV", exhaustive)


def check_mvw(A, exhaustive=False):
    return run_checker(A, "MVWRig", exhaustive)


def check_pmv(A, exhaustive=False):
    return run_checker(A, "PMV", exhaustive)


def check_pmvf(A, exhaustive=False):
    return run_checker(A, "PMVf", exhaustive)


def check_pmv1(A, exhaustive=False):
    return run_checker(A, "PMV1", exhaustive)


@dataclass(frozen=True)
class VarietyLabel:
    label: str
    results: dict

    @property
    def display(self):
        return LABEL_DISPLAY[self.label]

    def at_least(self, label):
        return LABELS.index(self.label) >= LABELS.index(label)

    @property
    def rejected(self):
        """Failing axiom and witness for every label above the assigned one"""
        out = {}
        for label in TOWER[LABELS.index(self.label):]:
            result = self.results[label]
            if not result.passed:
                out[label] = (result.axiom, result.witness)
        return out

    @property
    def tower_violations(self):
        """(stronger, weaker) pairs where the stronger checker passed and the weaker failed"""
        pairs = []
        for i, weaker in enumerate(TOWER):
            for stronger in TOWER[i + 1:]:
                if self.results[stronger].passed and not self.results[weaker].passed:
                    pairs.append((stronger, weaker))
        return tuple(pairs)


def classify(A, exhaustive=False):
    results = {label: run_checker(A, label, exhaustive) for label in TOWER}
    label = "NotMV"
    for candidate in TOWER:
        if not results[candidate].passed:
            break
        label = candidate
    verdict = VarietyLabel(label, results)
    logger.debug(f"{A.name} classified as {verdict.display}")
    if verdict.tower_violations:
        logger.warning(f"⚠️ {A.name}: inclusion tower violated by {verdict.tower_violations}")
    return verdict


def check_properties(A):
    """Order-compatibility of the product; lattice distributivity on PMV_f instances"""
    report = Report(f"properties:{A.name}")
    verdict = A.variety
    axioms = PROPERTY_AXIOMS if verdict.at_least("MVWRig") else ()
    if verdict.at_least("PMVf"):
        axioms = axioms + LATTICE_PROPERTY_AXIOMS
    for axiom in axioms:
        result = evaluate_axiom(A, axiom)
        report.add(f"properties.{axiom.name}", result.passed, result.witness, axiom.statement)
    return report


# ---------------------------------------------------------------------------
# Constructions and homomorphisms
# ---------------------------------------------------------------------------

def product_algebra(A, B, name=None):
    """Componentwise tables; (i, j) is stored at index i*|B| + j"""
    nb = B.size
    size = A.size * nb
    neg = (A.neg[:, None] * nb + B.neg[None, :]).reshape(size)
    oplus = (A.oplus[:, None, :, None] * nb + B.oplus[None, :, None, :]).reshape(size, size)
    prod = (A.prod[:, None, :, None] * nb + B.prod[None, :, None, :]).reshape(size, size)
    return FiniteAlgebra(neg, oplus, prod, name=name or f"{A.name}x{B.name}")


def hom_check(A, B, mapping, exhaustive=False):
    f = np.array(mapping, dtype=np.int64)
    if f.shape != (A.size,):
        raise InvalidTableError(f"map must have {A.size} entries, got shape {f.shape}")
    if f.min() < 0 or f.max() >= B.size:
        raise InvalidTableError(f"map has images outside [0, {B.size})")

    def collect(name, mask):
        hits = np.argwhere(np.asarray(mask, dtype=bool))
        if not exhaustive:
            hits = hits[:1]
        return AxiomResult(name, tuple(tuple(int(v) for v in row) for row in hits))

    results = (
        collect("preserves_zero", f[0] != 0),
        collect("preserves_oplus", f[A.oplus] != B.oplus[f[:, None], f[None, :]]),
        collect("preserves_neg", f[A.neg] != B.neg[f]),
        collect("preserves_prod", f[A.prod] != B.prod[f[:, None], f[None, :]]),
    )
    return CheckResult("hom", results)


def _invariants(A):
    try:
        leq = A.derived.leq
    except NotLatticeError:
        return None
    down = leq.sum(axis=0)
    up = leq.sum(axis=1)
    diag = np.arange(A.size)
    return list(zip(down.tolist(), up.tolist(),
                    (A.prod[diag, diag] == diag).tolist(),
                    (A.oplus[diag, diag] == diag).tolist()))


def _propagate(A, B, image, pending, injective):
    while pending:
        x, y = pending.pop()
        x, y = int(x), int(y)
        current = image[x]
        if current == y:
            continue
        if current != -1:
            return False
        if injective and y in image:
            return False
        image[x] = y
        pending.append((A.neg[x], B.neg[y]))
        for x2, y2 in enumerate(image):
            if y2 == -1:
                continue
            pending.append((A.oplus[x, x2], B.oplus[y, y2]))
            pending.append((A.prod[x, x2], B.prod[y, y2]))
            pending.append((A.prod[x2, x], B.prod[y2, y]))
    return True


def iter_homomorphisms(A, B, injective=False, budget=None):
    """Yield every homomorphism A -> B as a tuple of images.

    Backtracking over the first unassigned element; each choice is closed
    under the images it forces through ¬, ⊕ and ·.
    """
    n = A.size
    if injective and n > B.size:
        return
    candidates = [range(B.size)] * n
    if injective and n == B.size:
        inv_a, inv_b = _invariants(A), _invariants(B)
        if inv_a is not None and inv_b is not None:
            candidates = [[y for y in range(B.size) if inv_b[y] == inv_a[x]] for x in range(n)]

    start = [-1] * n
    if not _propagate(A, B, start, [(0, 0)], injective):
        return

    nodes = 0

    def search(image):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise ProbeBudgetError(f"homomorphism search {A.name} -> {B.name} exceeded {budget} nodes")
        if -1 not in image:
            yield tuple(image)
            return
        x = image.index(-1)
        for y in candidates[x]:
            trial = list(image)
            if _propagate(A, B, trial, [(x, y)], injective):
                yield from search(trial)

    yield from search(start)


def find_isomorphism(A, B, budget=None):
    if A.size != B.size:
        return None
    return next(iter_homomorphisms(A, B, injective=True, budget=budget), None)


def is_isomorphic(A, B, budget=None):
    return find_isomorphism(A, B, budget) is not None


def compose_maps(g, h):
    """g∘h for maps given as image tuples"""
    return tuple(int(g[int(x)]) for x in h)
