"""Named constructors for the algebras used as examples and counterexamples.

Every constructor names its result with the expression that rebuilds it, so
``build(A.name)`` reproduces ``A``. Expressions are parsed with ``ast`` and
only the constructors below (plus product-kind names) are accepted.
"""

import ast
import logging
from dataclasses import dataclass

import numpy as np

from .algebra_core import FiniteAlgebra, classify, product_algebra, replay
from .exceptions import ParseError, PreconditionError

logger = logging.getLogger(__name__)

PRODUCT_KINDS = ("zero", "inf", "sup_zero", "sup_nozero", "indep_l4")
MAX_BOOLEAN_RANK = 5


def _named(base, args, product):
    parts = [str(a) for a in args]
    if product != "zero":
        parts.append(product)
    return f"{base}({','.join(parts)})"


def luk(n, product="zero"):
    """Łukasiewicz chain with n elements, index i standing for i/(n-1)"""
    if not isinstance(n, int) or n < 2:
        raise PreconditionError(f"luk needs n >= 2, got {n}")
    r = np.arange(n)
    top = n - 1
    chain = FiniteAlgebra(top - r, np.minimum(top, r[:, None] + r[None, :]), None, name=f"luk({n})")
    return with_product(chain, product, name=_named("luk", [n], product))


def z_rig(n):
    """{0..n} with truncated sum and truncated integer product"""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"z_rig needs n >= 1, got {n}")
    r = np.arange(n + 1)
    return FiniteAlgebra(
        n - r,
        np.minimum(n, r[:, None] + r[None, :]),
        np.minimum(n, r[:, None] * r[None, :]),
        name=f"z_rig({n})",
    )


def boolean(k, product="inf"):
    """2^k with bit j of the index as coordinate j"""
    if not isinstance(k, int) or not 0 <= k <= MAX_BOOLEAN_RANK:
        raise PreconditionError(f"boolean needs 0 <= k <= {MAX_BOOLEAN_RANK}, got {k}")
    if product not in ("inf", "sup_zero", "zero"):
        raise PreconditionError(f"boolean supports inf, sup_zero or zero products, got {product}")
    r = np.arange(2 ** k)
    mask = 2 ** k - 1
    algebra = FiniteAlgebra(mask ^ r, r[:, None] | r[None, :], None, name=f"boolean({k})")
    return with_product(algebra, product, name=f"boolean({k},{product})")


def trivial():
    return FiniteAlgebra([0], [[0]], [[0]], name="trivial")


def product(A, B):
    return product_algebra(A, B, name=f"product({A.name},{B.name})")


def _is_l4(A):
    reference = luk(4)
    return A.size == 4 and np.array_equal(A.neg, reference.neg) and np.array_equal(A.oplus, reference.oplus)


def with_product(A, kind, name=None):
    """Attach one of the named product tables to the MV-reduct of A"""
    if kind not in PRODUCT_KINDS:
        raise PreconditionError(f"unknown product kind '{kind}', expected one of {PRODUCT_KINDS}")
    n = A.size
    r = np.arange(n)
    nonzero = (r[:, None] != 0) & (r[None, :] != 0)
    if kind == "zero":
        table = np.zeros((n, n), dtype=np.int64)
    elif kind == "inf":
        table = A.derived.meet
    elif kind == "sup_zero":
        table = np.where(nonzero, A.derived.join, 0)
    elif kind == "sup_nozero":
        table = A.derived.join
    else:
        if not _is_l4(A):
            raise PreconditionError("the independence product is defined on luk(4) only")
        odot = A.derived.odot
        table = np.where(odot == 0, A.oplus, odot)
        table = np.where(nonzero, table, 0)
    return A.with_prod(table, name=name or f"with_product({A.name},{kind})")


CONSTRUCTORS = {
    "luk": luk,
    "z_rig": z_rig,
    "boolean": boolean,
    "trivial": trivial,
    "product": product,
    "with_product": with_product,
}


def _evaluate(node, expression):
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    if isinstance(node, ast.Name):
        if node.id in PRODUCT_KINDS:
            return node.id
        if node.id == "trivial":
            return trivial()
        raise ParseError(f"unknown name '{node.id}' in catalog expression '{expression}'")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        constructor = CONSTRUCTORS.get(node.func.id)
        if constructor is None:
            raise ParseError(f"unknown constructor '{node.func.id}' in catalog expression '{expression}'")
        args = [_evaluate(arg, expression) for arg in node.args]
        try:
            return constructor(*args)
        except (TypeError, PreconditionError) as e:
            raise ParseError(f"cannot build '{expression}': {e}") from None
    raise ParseError(f"unsupported syntax in catalog expression '{expression}'")


def build(expression):
    """Build an algebra from an expression such as ``boolean(2,inf)``"""
    try:
        tree = ast.parse(expression.strip(), mode="eval")
    except SyntaxError:
        raise ParseError(f"invalid catalog expression '{expression}'") from None
    algebra = _evaluate(tree.body, expression)
    if not isinstance(algebra, FiniteAlgebra):
        raise ParseError(f"catalog expression '{expression}' does not denote an algebra")
    return algebra


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    label: str
    rejected: str = None
    axiom: str = None
    witness: tuple = None
    note: str = ""
    known: tuple = ()

    def build(self):
        return build(self.name)


CATALOG = (
    CatalogEntry("trivial", "PMV1", note="one-element algebra"),
    CatalogEntry("boolean(1,inf)", "PMV1", note="2 with the infimum product"),
    CatalogEntry("boolean(2,inf)", "PMV1"),
    CatalogEntry("boolean(3,inf)", "PMV1"),
    CatalogEntry("z_rig(1)", "PMV1", note="2 with the usual product"),
    CatalogEntry("luk(2)", "PMVf", "PMV1", "unit_neutral", (1,)),
    CatalogEntry("luk(3)", "PMVf", "PMV1", "unit_neutral", (1,)),
    CatalogEntry("luk(4)", "PMVf", "PMV1", "unit_neutral", (1,)),
    CatalogEntry("luk(5)", "PMVf", "PMV1", "unit_neutral", (1,)),
    CatalogEntry("product(luk(3),boolean(1,inf))", "PMVf", "PMV1", "unit_neutral", (2,)),
    CatalogEntry("product(boolean(1,inf),luk(4))", "PMVf", "PMV1", "unit_neutral", (1,)),
    CatalogEntry("luk(3,inf)", "MVWRig", "PMV", "pmv_distributive", (1, 1, 1)),
    CatalogEntry("luk(4,inf)", "MVWRig", "PMV", "pmv_distributive", (1, 1, 1),
                 note="a=b=c=1/3 breaks c(a⊕b)=ca⊕cb"),
    CatalogEntry("z_rig(10)", "MVWRig", "PMV", "pmv_odot_product", (1, 1, 6),
                 note="6⊙6=2 although 1⊙1=0",
                 known=(("pmv_odot_product", (2, 2, 3), "2⊙2=0 but 6⊙6=2"),
                        ("ominus_distributive", (2, 7, 6), "2(7⊖6)=2 but 2·7⊖2·6=0"))),
    CatalogEntry("boolean(2,sup_zero)", "MVWRig", "PMV", "pmv_odot_product", (1, 2, 1),
                 note="no proper non-trivial absorbent ideals"),
    CatalogEntry("boolean(3,sup_zero)", "MVWRig", "PMV", "pmv_odot_product", (1, 2, 1)),
    CatalogEntry("luk(4,indep_l4)", "MV", "MVWRig", "ominus_subdistributive", (1, 1, 3),
                 note="satisfies every MVW-rig axiom except (ab⊖ac)⊖a(b⊖c)=0"),
    CatalogEntry("luk(3,sup_nozero)", "MV", "MVWRig", "zero_annihilates", (1,),
                 note="satisfies every MVW-rig axiom except a0=0"),
)

EXCLUDED = {
    "luk closure under product": "infinite carrier",
    "[0,1] with the usual product": "real-interval algebra",
    "[0,u] segments of real rings": "real-interval algebra",
    "F[x1..xn] function algebras": "infinite carrier",
}


def find_entry(name):
    return next((entry for entry in CATALOG if entry.name == name), None)


def get_entry(name):
    entry = find_entry(name)
    if entry is None:
        raise KeyError(name)
    return entry


def replay_known(entry, algebra, report, prefix):
    """Documented counterexamples must still violate their axiom"""
    for axiom, witness, statement in entry.known:
        violated = replay(algebra, axiom, witness)
        report.add(f"{prefix}.known.{axiom}", violated, witness, statement)
        report.note(f"{prefix}.counterexample.{axiom}", not violated, witness, statement)


def check_entry(entry, report):
    """Classify one entry and compare with its expected label and witness"""
    algebra = entry.build()
    verdict = classify(algebra)
    prefix = f"catalog.{entry.name}"
    report.add(f"{prefix}.label", verdict.label == entry.label, verdict.label, f"expected {entry.label}")
    if entry.rejected is not None:
        found = verdict.rejected.get(entry.rejected)
        expected = (entry.axiom, entry.witness)
        report.add(f"{prefix}.witness", found == expected, found, f"expected {expected}")
    report.add(f"{prefix}.tower", not verdict.tower_violations, verdict.tower_violations or None)
    replay_known(entry, algebra, report, prefix)
    return verdict
