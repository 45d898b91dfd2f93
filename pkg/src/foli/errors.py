"""Exception hierarchy shared by all foli modules."""


class FoliError(Exception):
    """Base class for every error raised by this package."""


class SyntaxDeclarationError(FoliError):
    """Bad signature declaration: duplicate symbol, bad arity, reserved name."""


class CaptureError(FoliError):
    """Substitution would bind a variable of the inserted term."""


class MissingAssignmentError(FoliError):
    """A free variable has no value in the given assignment."""


class NotAnAtomError(FoliError):
    """Operation defined only on atoms was applied to a composite formula."""


class ArityMismatchError(FoliError):
    """A symbol was used with the wrong number of arguments."""


class UnknownSymbolError(FoliError):
    """A predicate or function symbol is not declared / not interpreted."""


class ParseError(FoliError):
    """Concrete-syntax error, carrying a 1-based line/column position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ModelFormatError(FoliError):
    """Structured interpretation/frame file violates its schema."""


class ElementNotInDomainError(ModelFormatError):
    """A tuple or function value mentions an element outside the domain."""


class PartialFunctionError(ModelFormatError):
    """A function graph does not cover every argument tuple."""


class JoinSpecError(FoliError):
    """Join column pairs are out of range or not injective."""


class ForeignElementError(FoliError):
    """A relation mentions elements outside the supplied domain."""


class UnassignedVariableError(FoliError):
    """Term evaluation hit a variable missing from the assignment."""


class OpenFormulaError(FoliError):
    """A sentence was required but the formula has free variables."""


class GuardExceededError(FoliError):
    """The interpretation space is larger than the enumeration guard."""

    def __init__(self, count, guard):
        self.count = count
        self.guard = guard
        super().__init__(
            f"interpretation space has {count} elements, above the guard {guard}"
        )


class UndeclaredModalityError(FoliError):
    """A diamond operator names no declared accessibility relation."""


class VariableOutsideModelError(FoliError):
    """A formula uses a variable that the assignment-world model does not carry."""


class TupleMismatchError(FoliError):
    """Two formulas were compared whose free-variable tuples differ."""


class PositionOutOfRangeError(FoliError):
    """A column/argument position is outside the free-variable tuple."""


class PreconditionError(FoliError):
    """A structural precondition of a check was violated."""
