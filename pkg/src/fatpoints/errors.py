"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: format/structure problems are input
errors (exit 2), violated operation preconditions are exit 3.
"""


class FatPointsError(Exception):
    """Base class for all package errors."""


class SchemeFormatError(FatPointsError):
    """Malformed scheme data (bad JSON document, bad field element, ...)."""


class StructureError(FatPointsError):
    """Structurally invalid request, e.g. a line naming an unknown point."""


class PreconditionError(FatPointsError):
    """An operation was called outside its stated domain."""
