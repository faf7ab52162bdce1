"""Exception hierarchy.

``ValidationError`` subclasses signal a violated mathematical precondition
(exit status 1 in the CLI); ``ParseError`` signals malformed input files
(exit status 2).
"""


class IsoApproxError(Exception):
    pass


class ValidationError(IsoApproxError):
    pass


class ParseError(IsoApproxError):
    pass


class CycleError(ValidationError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(str(c) for c in self.cycle + self.cycle[:1])
        super().__init__(f"cover relation contains a cycle: {path}")


class DegenerateRamp(ValidationError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"ramp needs a < b, got a={a}, b={b}")


class NotNondecreasing(ValidationError):
    pass


class NegativeScale(ValidationError):
    pass


class EmptyFamily(ValidationError):
    def __init__(self, msg="family has no members"):
        super().__init__(msg)


class EmptyList(ValidationError):
    pass


class NotIsotone(ValidationError):
    def __init__(self, index=None, pair=None):
        self.index = index
        self.pair = pair
        where = "target" if index is None else f"member {index}"
        detail = "" if pair is None else f" (violated on {pair[0]} <= {pair[1]})"
        super().__init__(f"{where} is not isotone{detail}")


class CarrierMismatch(ValidationError):
    pass


class BadGeneratorIndex(ValidationError):
    def __init__(self, index, size=None):
        self.index = index
        where = "" if size is None else f" for family of size {size}"
        super().__init__(f"invalid generator index {index!r}{where}")


class NoSeparator(ValidationError):
    def __init__(self, x, y):
        self.x, self.y = x, y
        super().__init__(f"no member f satisfies f({x}) < f({y}); the family does not generate the order")


class PreconditionViolated(ValidationError):
    def __init__(self, x, y, msg=None):
        self.x, self.y = x, y
        super().__init__(msg or f"precondition violated: {y} <= {x}")


class UncoverableSet(ValidationError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__(f"regions do not cover elements {self.missing}")


class NotNormalized(ValidationError):
    pass


class DoesNotGenerate(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"family does not generate the order; witness {witness}")
