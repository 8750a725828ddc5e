"""Exception hierarchy shared by all symquant modules."""


class SymquantError(Exception):
    """Base class for every error raised by symquant."""


class SpecSyntaxError(SymquantError):
    """Malformed spec text.

    Attributes:
        line: 1-based line of the offending token
        column: 1-based column of the offending token
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class SpecError(SymquantError):
    """Well-formed text that does not describe a valid protocol."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.message = message
        self.line = line
        self.column = column


class InstanceError(SymquantError, ValueError):
    """Invalid size assignment or an instance too large to build."""


class SymmetryBudgetError(SymquantError):
    """Group order exceeds the enumeration budget."""


class InferencePreconditionError(SymquantError, ValueError):
    """A quantifier inference case was called outside its precondition."""


class InferenceShapeError(SymquantError):
    """Partition shape not covered by the inference case; caller falls back."""


class SolverError(SymquantError):
    """The SMT solver could not be spawned, crashed, or answered unusably."""


class ResourceLimitError(SymquantError):
    """A frame, CTI, time or size budget was exhausted."""


class OracleCapError(SymquantError):
    """Instance has more state variables than the explicit oracle accepts."""


class EngineError(SymquantError):
    """An internal consistency check of the induction engine failed."""
