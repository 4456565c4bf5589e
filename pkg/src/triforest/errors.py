"""Exception types shared across the package."""


class TriforestError(Exception):
    """Base class for all package-specific errors."""


class InvalidG6(TriforestError):
    """Malformed graph6 text (bad length, characters, or unsupported size)."""


class SizeLimitExceeded(TriforestError):
    """Input exceeds the hard guard of an exhaustive operation.

    Enumeration guards are errors, never silent truncation: an oracle that
    quietly skipped part of its search space could report an unsound
    "no solution".
    """


class PartialColoring(TriforestError):
    """A total coloring was required but some vertex is uncolored."""


class InvalidPrecoloring(TriforestError):
    """The fixed triangle does not exist or its precoloring is unusable."""


class NotPlanar(TriforestError):
    """The graph admits no planar embedding."""


class GraphNotConnected(TriforestError):
    """Operation requires a connected graph."""


class UnknownFace(TriforestError):
    """Face id does not belong to the embedding."""


class NotTriangulation(TriforestError):
    """Operation requires every face of the embedding to be a triangle."""


class NotSeparating(TriforestError):
    """The given triangle is a face, not a separating triangle."""


class DualNotSimple(TriforestError):
    """The dual would need loops or parallel edges (bridge or doubled face)."""


class NotAPath(TriforestError):
    """Vertex sequence is not a path or cycle of the graph."""


class NotACycle(TriforestError):
    """A cycle certificate or cycle vertex sequence was expected."""


class NotCubic(TriforestError):
    """Operation requires a 3-regular graph."""


class NotFourConnected(TriforestError):
    """Operation requires a 4-connected triangulation."""


class PreconditionViolated(TriforestError):
    """Caller-supplied anchors (outer-face vertices/edges, connectivity) are wrong."""


class SearchExhausted(TriforestError):
    """A complete search ended without a witness that is guaranteed to exist.

    Treated as an internal error: it means either a precondition slipped
    through or the implementation is wrong.
    """


class SearchBudgetExceeded(TriforestError):
    """Optional per-call time budget ran out before the search finished."""


class PrecoloringMismatch(TriforestError):
    """Constructed coloring fails its postconditions under both global flips."""


class PropertyFailed(TriforestError):
    """A certification pipeline rejected its input; names the first failed check."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"property check failed: {check}" + (f" ({detail})" if detail else ""))
