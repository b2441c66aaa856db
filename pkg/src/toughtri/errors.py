"""Exception types shared across the package."""


class ToughtriError(Exception):
    """Base class for all package errors."""


class EmbeddingInconsistent(ToughtriError):
    """Rotation system violates an embedding invariant (symmetry, loops, ...)."""


class ParseError(ToughtriError):
    """Input data could not be parsed."""


class InvariantViolation(ToughtriError):
    """A validated structural invariant failed.

    Carries the invariant name plus expected/found values so callers can
    report exactly which check broke.
    """

    def __init__(self, name, expected, found):
        self.name = name
        self.expected = expected
        self.found = found
        super().__init__(f"invariant {name!r}: expected {expected!r}, found {found!r}")


class ParameterOutOfRange(ToughtriError):
    """A construction parameter is outside its legal range."""


class LabelsMissing(ToughtriError):
    """Operation requires vertex labels that the input graph does not carry."""


class FaceClassificationError(ToughtriError):
    """A face has a number of degree-1 boundary vertices other than 0 or 3."""


class OverlappingSets(ToughtriError):
    """S and T must be disjoint vertex sets."""


class DegreeTooSmall(ToughtriError):
    """Gadget construction needs minimum degree 2."""


class NotACutset(ToughtriError):
    """Vertex set does not disconnect the graph."""


class TooLarge(ToughtriError):
    """Graph exceeds the configured bound for exhaustive computation."""


class NotAPermutation(ToughtriError):
    """Cycle argument is not a permutation of the vertex set."""


class MatchingInvalid(ToughtriError):
    """Supplied matching is not a matching of the expected graph."""


class IoError(ToughtriError):
    """File could not be read or written."""
