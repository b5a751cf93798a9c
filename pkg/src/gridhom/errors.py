"""Exception hierarchy shared by every module of the package."""


class GridHomError(Exception):
    """Base class for all errors raised by gridhom."""


class DiagramSyntaxError(GridHomError, ValueError):
    """Diagram text does not follow the file grammar."""


class ValidationError(GridHomError, ValueError):
    """A grid violates one of the three marking conditions.

    ``condition`` is one of ``"i"``, ``"ii"``, ``"iii"`` (or ``"size"`` for
    structural problems such as out-of-range coordinates).
    """

    def __init__(self, condition, message):
        super().__init__(f"condition ({condition}): {message}")
        self.condition = condition


class TraceError(GridHomError):
    """Edge tracing found markings not connected to any vertex."""


class BalanceError(GridHomError, ValueError):
    def __init__(self, vertex, in_sum, out_sum, message=None):
        msg = message or (
            f"vertex at {vertex} is unbalanced: in-sum {in_sum} != out-sum {out_sum}"
        )
        super().__init__(msg)
        self.vertex = vertex
        self.in_sum = in_sum
        self.out_sum = out_sum


class NotGood(GridHomError, ValueError):
    pass


class VertexNotAtCorner(GridHomError, ValueError):
    pass


class WeightMismatch(GridHomError, ValueError):
    pass


class IllegalMove(GridHomError, ValueError):
    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class PatternNotFound(GridHomError, ValueError):
    pass


class NotAComplex(GridHomError):
    """The boundary map does not square to zero."""


class DeconvolutionError(GridHomError, ArithmeticError):
    pass


class TooLarge(GridHomError, ValueError):
    pass
