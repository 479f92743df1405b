"""
Description: Exception hierarchy shared by the verification services. Services raise these;
the check registry in suites.py turns them into `error` CheckReports and the `verify`
management command maps them to exit codes.
"""


class VerifierError(Exception):
    """Base class for every failure raised by the verification services."""


class DimensionMismatch(VerifierError, ValueError):
    """Vectors, points, polynomials or subspaces live in different ambient spaces."""


class NotLinearError(VerifierError, ValueError):
    """A substitution image is not a homogeneous linear form."""


class NotOnVarietyError(VerifierError, ValueError):
    """A point does not satisfy the equations it is evaluated against."""


class DegreeMismatch(VerifierError, ValueError):
    """Permutations of different degrees were combined."""


class GroupOrderError(VerifierError, ValueError):
    """A group is larger than the exhaustive algorithms support."""


class ActionAxiomError(VerifierError):
    """A map offered as a group action violates the action axioms."""


class NotASubgroupError(VerifierError, ValueError):
    """A set of permutations is not contained in the group it was checked against."""


class IncidenceMismatch(VerifierError):
    """Combinatorial and geometric incidence disagree."""


class ConsistencyError(VerifierError):
    """An internal construction failed a self-check that must always hold."""


class UnsupportedFormError(VerifierError, ValueError):
    """A linear form is not of the shape x_a + x_b."""
