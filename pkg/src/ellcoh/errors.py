"""Exception hierarchy shared by all ellcoh modules.

Every exception carries a stable ``code`` string so the CLI can report
machine-readable failure classes and map them onto exit codes.
"""

from __future__ import annotations


class EllcohError(Exception):
    code = "ERROR"


class FieldMismatchError(EllcohError):
    """Combining Betti data recorded over different coefficient fields."""

    code = "FIELD_MISMATCH"


class NotACochainComplexError(EllcohError):
    """Differentials do not compose to zero; cohomology is undefined."""

    code = "COMPLEX_NOT_EXACTABLE"


class DimensionMismatchError(EllcohError):
    """Forms over exterior algebras with a different number of generators."""

    code = "DIMENSION_MISMATCH"


class BadMultiIndexError(EllcohError):
    """Residue multi-index not strictly increasing or out of range."""

    code = "BAD_MULTI_INDEX"


class BoundExceededError(EllcohError):
    """Brute-force verification requested above the configured size bound."""

    code = "BOUND_EXCEEDED"


class RankOutOfRangeError(EllcohError):
    """A declared map rank exceeds the dimension of its source or target."""

    code = "RANK_OUT_OF_RANGE"


class UnderdeterminedError(EllcohError):
    """Exactness constraints do not force every unknown."""

    code = "UNDERDETERMINED"

    def __init__(self, free_unknowns, message=None):
        self.free_unknowns = tuple(free_unknowns)
        super().__init__(message or f"free unknowns: {', '.join(map(str, self.free_unknowns))}")


class InconsistentError(EllcohError):
    """Exactness constraints contradict each other; the input data is bad."""

    code = "INCONSISTENT"


class ValidationFailedError(EllcohError):
    """Input data violates a structural invariant."""

    code = "VALIDATION_FAILED"

    def __init__(self, diagnostics, message=None):
        self.diagnostics = tuple(diagnostics)
        super().__init__(message or "; ".join(str(d) for d in self.diagnostics))


class WrongDimensionError(EllcohError):
    """The four-manifold specialization was applied off dimension four."""

    code = "WRONG_DIMENSION"


class ParseError(EllcohError):
    """Input document is not syntactically well formed."""

    code = "PARSE_ERROR"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownPresetError(EllcohError):
    code = "UNKNOWN_PRESET"
