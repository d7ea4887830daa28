"""Exception hierarchy shared by all modules.

Errors that carry evidence (an offending edge pair, a counterexample
coloring, a violating triple) expose it as attributes so certificates can be
serialized by the CLI.
"""

from __future__ import annotations


class SteinerRamseyError(Exception):
    """Base class for all library errors."""


class InputError(SteinerRamseyError):
    """Malformed or inconsistent input (CLI exit code 3)."""


class RangeError(InputError):
    """Uniformity parameters out of range (need 2 <= t <= r)."""


class EdgeArityError(InputError):
    """An edge is not an r-subset of the vertex set."""

    def __init__(self, edge, r):
        super().__init__(f"edge {sorted(edge)} is not a {r}-subset of the vertex set")
        self.edge = frozenset(edge)
        self.r = r


class SteinerViolation(InputError):
    """Two distinct edges share t or more vertices."""

    def __init__(self, edge_a, edge_b, t):
        shared = frozenset(edge_a) & frozenset(edge_b)
        super().__init__(
            f"edges {sorted(edge_a)} and {sorted(edge_b)} share "
            f"{len(shared)} >= t={t} vertices"
        )
        self.edge_a = frozenset(edge_a)
        self.edge_b = frozenset(edge_b)
        self.shared = shared
        self.t = t


class NonInjectiveMap(InputError):
    """A witness map repeats a host vertex."""


class ParameterMismatch(InputError):
    """Pattern and host disagree on r or t."""


class LetterNotInAlphabet(InputError):
    """Hales-Jewett embedding asked for a letter outside the alphabet."""


class DimensionMismatch(InputError):
    """A line does not match the witness dimension or alphabet."""


class IndexOutOfRange(InputError):
    """A rho index does not point into the enumerated copy family."""


class NonCrossingEdge(InputError):
    """A partite edge meets some class more than once."""

    def __init__(self, edge, class_index):
        super().__init__(
            f"edge {sorted(edge)} meets class {class_index} more than once"
        )
        self.edge = frozenset(edge)
        self.class_index = class_index


class ProjectionNotEdge(InputError):
    """An edge projects onto a non-edge of the pattern."""

    def __init__(self, edge, projected):
        super().__init__(
            f"edge {sorted(edge)} projects to {sorted(projected)}, "
            "not an edge of the pattern"
        )
        self.edge = frozenset(edge)
        self.projected = frozenset(projected)


class CopyNotStrong(InputError):
    """A distinguished copy is not strongly induced in its host."""

    def __init__(self, image):
        super().__init__(f"copy on {sorted(image)} is not strongly induced")
        self.image = frozenset(image)


class CopyNotCrossing(InputError):
    """A distinguished copy does not meet every class exactly once."""

    def __init__(self, image):
        super().__init__(f"copy on {sorted(image)} is not crossing")
        self.image = frozenset(image)


class WitnessShapeMismatch(InputError):
    """An amalgamation witness is not a copy system over the restriction."""


class SizeLimitExceeded(SteinerRamseyError):
    """A construction or search would exceed its configured cap (exit 2)."""

    def __init__(self, message, requested=None, cap=None):
        super().__init__(message)
        self.requested = requested
        self.cap = cap


class StrategyInfeasible(SizeLimitExceeded):
    """The requested base-witness strategy cannot handle the input."""


class SearchInfeasible(SizeLimitExceeded):
    """A randomized search exhausted its budget without a certificate."""


class ProviderFailure(SteinerRamseyError):
    """A witness provider failed on a construction step."""


class ArrowRefuted(SteinerRamseyError):
    """A claimed partition arrow fails; carries a counterexample coloring."""

    def __init__(self, message, coloring=None):
        super().__init__(message)
        self.coloring = coloring


class WitnessArrowUnverified(SteinerRamseyError):
    """An extraction relies on an arrow that was assumed, never verified."""


class PropertyIIViolation(SteinerRamseyError):
    """Internal consistency failure of a power witness (construction bug)."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class PatternComplete(InputError):
    """The negative construction needs an incomplete pattern."""


class PatternHomogeneous(InputError):
    """The negative construction needs a non-homogeneous pattern."""


class NoTwoExtensions(SteinerRamseyError):
    """Could not build two non-isomorphic one-edge extensions."""
