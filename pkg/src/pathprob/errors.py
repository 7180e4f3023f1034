"""Error types shared across the package."""


class UsageError(ValueError):
    """Operation called with arguments outside its contract."""


class GraphFormatError(ValueError):
    """Graph description (constructor arguments or JSON file) is invalid."""


class ExpressionError(ValueError):
    """Operator expression text could not be parsed."""


class NotAFourierExpansion(UsageError):
    """Element contains a mixed monomial, so support decomposition is undefined."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a hard enumeration cap."""
