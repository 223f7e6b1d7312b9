"""Exception hierarchy shared by the library and the command line."""
from __future__ import annotations

from dataclasses import dataclass


class CascadeRabiError(Exception):
    """Base class of every error raised by cascade_rabi."""


class InvalidInput(CascadeRabiError, ValueError):
    """The caller handed in something outside an operation's domain."""


class NumericalFailure(CascadeRabiError, ArithmeticError):
    """The numerics could not deliver a result within tolerance."""


class NonHermitianInput(InvalidInput):
    pass


class InvalidAmplitudes(InvalidInput):
    pass


class InvalidSector(InvalidInput):
    pass


class NonPhysicalState(InvalidInput):
    pass


class InvalidTolerance(InvalidInput):
    pass


class InvalidGrid(InvalidInput):
    pass


class EmptyGrid(InvalidGrid):
    pass


class GridTooShort(InvalidGrid):
    pass


class ConvergenceFailure(NumericalFailure):
    pass


class IntegratorFailure(NumericalFailure):
    pass


class DomainError(NumericalFailure):
    pass


@dataclass(frozen=True)
class EntryDefect:
    row: int
    column: int
    closed_form: float
    numerical: float

    @property
    def deviation(self) -> float:
        return abs(self.closed_form - self.numerical)

    def __str__(self) -> str:
        return (
            f"alpha_{self.row}{self.column}: closed form {self.closed_form:.12g}, "
            f"numerical {self.numerical:.12g}"
        )


class FormulaInconsistency(NumericalFailure):
    """A closed-form rotation failed its orthogonality/diagonalization gate."""

    def __init__(self, message: str, defects: list[EntryDefect]) -> None:
        self.defects = defects
        details = "; ".join(str(defect) for defect in defects)
        super().__init__(f"{message}: {details}" if details else message)
