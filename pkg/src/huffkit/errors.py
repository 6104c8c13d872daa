"""Exception hierarchy.

Every error raised by this package derives from HuffkitError and carries a
short ``category`` slug used by the CLI for machine-parseable error lines.
"""


class HuffkitError(Exception):
    category = "error"


class DistributionError(HuffkitError):
    """Frequency table unusable: no positive frequency, or duplicate symbols."""

    category = "distribution"


class IncompleteCodebookError(HuffkitError):
    """A symbol with nonzero frequency has no codeword."""

    category = "codebook"


class InfeasibleLengthsError(HuffkitError):
    """Requested code lengths violate the Kraft inequality."""

    category = "lengths"


class TreeError(HuffkitError):
    """Malformed code tree (cycle, orphan node, or missing leaves)."""

    category = "tree"


class AlphabetError(HuffkitError):
    """Alphabet size outside the supported range."""

    category = "alphabet"


class SymbolRangeError(HuffkitError):
    """Symbol or numeric value outside its declared range."""

    category = "symbol"


class StateError(HuffkitError):
    """Encoder state register violates its partial-permutation invariants."""

    category = "state"


class TooLargeError(HuffkitError):
    """Dense materialization refused: size bound exceeded."""

    category = "too-large"


class FormatError(HuffkitError):
    """Container bytes do not follow the declared layout."""

    category = "format"


class HeaderError(FormatError):
    """Container header fields violate their invariants."""

    category = "header"


class TruncatedError(HuffkitError):
    """Bit source exhausted mid-codeword."""

    category = "truncated"


class CorruptError(HuffkitError):
    """Payload decodes to a value outside the declared alphabet."""

    category = "corrupt"
