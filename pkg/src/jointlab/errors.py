"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ``InvariantViolation`` exits with 2
(a verified internal guarantee was broken, i.e. a bug), everything else
non-zero exits with 1.
"""


class JointlabError(Exception):
    """Base class for all package-specific errors."""


class InvariantViolation(JointlabError):
    """A post-hoc exact verification failed; indicates a bug, not bad input."""


class GenericityError(JointlabError):
    """A seeded generic-map search exhausted its retry budget."""


class RetryBudgetError(JointlabError):
    """A randomized generator could not satisfy its constraints in budget."""


class PartitionSearchError(JointlabError):
    """The bisecting-polynomial search ran out of budget; raise the degree
    or the tolerance and retry."""


class LineInZeroSet(JointlabError):
    """Crossing counts are undefined for a line inside the zero set."""
