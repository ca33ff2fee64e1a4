"""Exception hierarchy shared by every module of the package."""


class SliceCliffordError(Exception):
    """Base class for all errors raised by slice_clifford."""


class InvalidOperandsError(SliceCliffordError, ValueError):
    """Operands live in Clifford algebras of different dimension."""


class InvalidArgumentError(SliceCliffordError, ValueError):
    """An argument is outside the domain of the operation."""


class DivisionByZeroError(SliceCliffordError, ZeroDivisionError):
    """Inversion of a (numerically) zero paravector."""


class SingularKernelError(DivisionByZeroError):
    """The Cauchy kernel closed form requires an inverse that does not exist."""


class PreconditionError(SliceCliffordError, ValueError):
    """A geometric precondition (point inside contour, annulus, ...) is violated."""


class DegenerateContourError(PreconditionError):
    """A quadrature node coincides with the evaluation point."""


class SeriesParseError(SliceCliffordError, ValueError):
    """Malformed series JSON. ``field`` names the offending location."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
