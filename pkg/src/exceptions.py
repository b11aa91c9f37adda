"""Exception hierarchy for the verifier.

Failed laws are never raised: checkers return witnesses. These exceptions
cover malformed input, unmet preconditions and budget overruns.
"""


class AlgebraError(Exception):
    """Base class for all verifier errors"""


class ParseError(AlgebraError):
    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


class InvalidTableError(AlgebraError):
    """An operation table has the wrong shape or an out-of-range entry"""


class NotLatticeError(AlgebraError):
    def __init__(self, pair, operation):
        self.pair = tuple(int(v) for v in pair)
        self.operation = operation
        super().__init__(f"{operation} of {self.pair} is not unique; the order is not a lattice")


class PreconditionError(AlgebraError):
    """An operation was called on an input outside its domain"""


class NonAbsorbentIdealError(PreconditionError):
    def __init__(self, members):
        self.members = tuple(members)
        super().__init__(f"ideal {list(self.members)} is not absorbent; the product congruence is ill-defined")


class NotIdempotentError(PreconditionError):
    def __init__(self, element):
        self.element = int(element)
        super().__init__(f"element {self.element} is neither product-idempotent nor Boolean")


class NotSemiLowError(AlgebraError):
    def __init__(self, witness, reason):
        self.witness = witness
        self.reason = reason
        super().__init__(f"ring is not semi-low: {reason} at {witness}")


class BudgetExceededError(AlgebraError):
    """An enumeration outgrew its configured budget ("too big", not "failed")"""


class ProbeBudgetError(BudgetExceededError):
    """Homomorphism enumeration against a probe outgrew its node budget"""
