"""Semantic exception hierarchy shared across the package.

The CLI maps these onto exit codes: input/format problems exit 2, budget
exhaustion and everything unexpected exit 1. Scientific findings (infeasible
tables, inconsistent credence pairs) are *not* exceptions; they are ordinary
return values and exit 3 at the CLI.
"""


class JointcertError(Exception):
    """Base class for all package-specific errors."""


class MissingCell(JointcertError):
    """A behavior table lacks an entry for some setting pair."""


class WrongScenario(JointcertError):
    """An operation was applied to a scenario shape it does not support."""


class SizeLimit(JointcertError):
    """An enumeration or LP encoding would exceed the configured cap."""


class ParseError(JointcertError):
    """A behavior/certificate file is malformed; carries field diagnostics."""


class RationalizeError(JointcertError):
    """A decimal entry cannot be represented under the denominator cap."""


class DimensionMismatch(JointcertError):
    """A constraint row's length disagrees with the variable count."""


class NoFriend(JointcertError):
    """A friend-wing membership test was called on a friendless scenario."""


class NotInfeasible(JointcertError):
    """Inequality extraction requires an infeasibility certificate."""


class UnnormalizedState(JointcertError):
    """A state vector is not norm-1 within tolerance."""


class NonUnitary(JointcertError):
    """A claimed reversal map is not unitary within tolerance."""


class SearchNotFound(JointcertError):
    """A bounded search exhausted its budget without a hit (reported, not a refutation)."""


class EmptyCounts(JointcertError):
    """Self-location needs at least one populated label."""


class CapExceeded(JointcertError):
    """A toy-machine parameter exceeds its configured cap."""


class ZeroBase(JointcertError):
    """Conditional mass is undefined: the base estimate is zero at this scale."""
