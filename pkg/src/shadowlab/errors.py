"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for bad parameters or
input, 3 for genericity and degeneracy failures.
"""


class ShadowlabError(Exception):
    exit_code = 2


class DimensionError(ShadowlabError, ValueError):
    pass


class SingularSystemError(ShadowlabError, ArithmeticError):
    pass


class ParameterError(ShadowlabError, ValueError):
    pass


class DegenerateBoxError(ParameterError):
    pass


class NonBasisError(ShadowlabError):
    """The chosen rows do not form a nonsingular d x d system."""


class InfeasibleBasisError(ShadowlabError):
    pass


class InstanceTooLargeError(ShadowlabError):
    pass


class FormulaMismatchError(ShadowlabError, AssertionError):
    """A closed form disagreed with the recursion it is supposed to equal."""


class DependentProjectionError(ShadowlabError, ValueError):
    pass


class PolytopeFormatError(ShadowlabError, ValueError):
    pass


class UnboundedError(ShadowlabError):
    pass


class BadStartError(ShadowlabError):
    pass


class GenericityError(ShadowlabError):
    exit_code = 3

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class DegeneracyError(ShadowlabError):
    exit_code = 3
