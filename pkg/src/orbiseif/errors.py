"""Exception hierarchy shared by all orbiseif modules.

Every error carries a short machine-readable ``code`` so the CLI can emit
stable diagnostics in JSON mode.
"""


class OrbiseifError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class NotationError(OrbiseifError):
    """Syntax error in a symbol string; ``offset`` is a byte offset."""

    code = "syntax"

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class SymbolError(OrbiseifError):
    """Semantically invalid symbol (bad index, mismatched counts, ...)."""

    code = "invalid-symbol"


class ScopeError(OrbiseifError):
    """Input is well formed but outside the classified scope (e.g. e != 0)."""

    code = "scope"


class GroupError(OrbiseifError):
    """Bad crystallographic input (non-orthogonal matrix, non-cocompact, ...)."""

    code = "group"


class UnsupportedLocusError(OrbiseifError):
    """Singular-locus strand rules undefined for this corner pattern."""

    code = "unsupported-locus"
