"""Exception hierarchy.

Errors split into two families that the command line maps to distinct exit
codes: input problems (bad files, bad arguments, violated preconditions) and
feasibility problems (a requested enumeration is too large).
"""


class ApproxError(Exception):
    """Base class for every error raised by this package."""


class InputError(ApproxError):
    """Something about the supplied data or arguments is wrong."""


class FeasibilityError(ApproxError):
    """The request is well-formed but too large to evaluate."""


class MismatchedSpace(InputError):
    pass


class EmptySet(InputError):
    pass


class EmptyList(InputError):
    pass


class NoAdditiveIdentity(InputError):
    pass


class AmbiguousIdentity(InputError):
    def __init__(self, op, candidates):
        self.op = op
        self.candidates = tuple(candidates)
        super().__init__(f"{op!r} has several identity candidates: {self.candidates}")


class MissingInverse(InputError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"no additive inverse for {element} inside the carrier")


class NoUnity(InputError):
    pass


class NotARing(InputError):
    pass


class NotAnIdeal(InputError):
    def __init__(self, members, witness=None):
        self.members = members
        self.witness = witness
        super().__init__(f"{sorted(members)} is not an approximate ideal (witness {witness})")


class RadicalNotIdeal(InputError):
    def __init__(self, radical, witness):
        self.radical = radical
        self.witness = witness
        super().__init__(f"radical {sorted(radical)} is not an approximate ideal (witness {witness})")


class NotWellDefined(InputError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"quotient is not well defined (witness {witness})")


class NotClassical(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, token=None):
        self.line = line
        self.token = token
        where = f"line {line}" if line is not None else "input"
        if token is not None:
            where += f", token {token!r}"
        super().__init__(f"{where}: {message}")


class ValidationError(InputError):
    pass


class TooLarge(FeasibilityError):
    pass


class SizeOverflow(FeasibilityError):
    pass


class InfeasibleParams(FeasibilityError):
    pass
