"""Exception hierarchy shared across the package."""


class SpatialogicError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SpatialogicError):
    """Syntax error in query/rule source text."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class CompileError(SpatialogicError):
    """Query cannot be lowered to a grounded evaluation plan."""


class HeatmapFormatError(SpatialogicError):
    """Malformed or out-of-contract heatmap byte stream."""


class ManifestError(SpatialogicError):
    """Malformed bundle manifest or inconsistent bundle contents."""


class OracleCapacityError(SpatialogicError):
    """Exact inference refused: fact universe too large to enumerate."""

    def __init__(self, count: int, limit: int):
        super().__init__(
            f"exact inference over {count} facts exceeds the {limit}-fact limit"
        )
        self.count = count
        self.limit = limit
