"""
The errors module collects the exceptions raised by horoconv. Each error carries
the exit code the command line interface reports for it.
"""

from typing import Optional, Sequence


class HoroconvError(RuntimeError):
    """
    Base error of the horoconv package.
    """

    exit_code = 2


class SpecError(HoroconvError):
    """
    Error raised when an input specification or a parameter is invalid.
    """

    exit_code = 2


class DimensionMismatchError(SpecError):
    """
    Error raised when objects of different ambient dimensions are combined.
    """

    pass


class InvalidAxisError(SpecError):
    """
    Error raised when an isometry generator names an invalid axis.
    """

    pass


class ExpressionError(SpecError):
    """
    Error raised when an expression for the conformal exponent cannot be parsed.
    """

    def __init__(self, message: str, text: str = "", column: Optional[int] = None):
        """
        Initialize the expression error.
        :param str message: The description of the problem.
        :param str text: The expression text.
        :param Optional[int] column: The 0-based column of the offending token.
        """
        self.text = text
        self.column = column
        if column is not None and text:
            message = f"{message} at column {column + 1}\n  {text}\n  {' ' * column}^"
        super().__init__(message)


class DomainError(HoroconvError):
    """
    Error raised when a point lies outside the domain of an operation.
    """

    exit_code = 3


class ChartPoleError(DomainError):
    """
    Error raised when a point coincides with the pole of a stereographic chart.
    """

    pass


class StencilError(DomainError):
    """
    Error raised when a finite-difference stencil leaves the domain of a field.
    """

    pass


class NoAdmissibleSamplesError(DomainError):
    """
    Error raised when no sample satisfies the requirements of a check.
    """

    pass


class DegenerateImmersionError(DomainError):
    """
    Error raised when the immersion built from a metric is not of full rank.
    """

    pass


class DictionaryMismatchError(DomainError):
    """
    Error raised when the Schouten eigenvalues and the principal curvatures
    disagree beyond tolerance.
    """

    def __init__(self, lambdas: Sequence[float], kappas: Sequence[float], residual):
        """
        Initialize the mismatch error.
        :param Sequence[float] lambdas: The Schouten eigenvalues.
        :param Sequence[float] kappas: The principal curvatures.
        :param float residual: The maximal deviation.
        """
        self.lambdas = list(lambdas)
        self.kappas = list(kappas)
        self.residual = residual
        super().__init__(
            f"eigenvalue dictionary violated by {residual:.3e}: "
            f"lambdas={self.lambdas}, kappas={self.kappas}"
        )


class NotAnIsometryError(SpecError):
    """
    Error raised when a matrix does not preserve the Lorentzian metric or the
    time orientation.
    """

    pass


class EigenvalueBoundError(HoroconvError):
    """
    Error raised when Schouten eigenvalues reach 1/2 where they must stay below.
    """

    exit_code = 4


class SolverSingularityError(HoroconvError):
    """
    Error raised when the radial equation becomes singular.
    """

    exit_code = 5

    def __init__(self, message: str, location: Optional[float] = None):
        """
        Initialize the solver error.
        :param str message: The description of the problem.
        :param Optional[float] location: The log-radius where it occurred.
        """
        self.location = location
        if location is not None:
            message = f"{message} (s = {location:.6g})"
        super().__init__(message)


__all__ = [
    "HoroconvError",
    "SpecError",
    "DimensionMismatchError",
    "InvalidAxisError",
    "ExpressionError",
    "DomainError",
    "ChartPoleError",
    "StencilError",
    "NoAdmissibleSamplesError",
    "DegenerateImmersionError",
    "DictionaryMismatchError",
    "NotAnIsometryError",
    "EigenvalueBoundError",
    "SolverSingularityError",
]
