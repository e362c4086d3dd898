from typing import Iterable, Optional


class PolycodeError(Exception):
    pass


# field


class FieldError(PolycodeError):
    pass


class NotAPrimePower(FieldError):
    def __init__(self, q: int) -> None:
        self.q = q
        super().__init__(f"{q} is not a prime power.")


class FieldTooSmall(FieldError):
    def __init__(self, q: int) -> None:
        self.q = q
        super().__init__(f"Field order has to be at least 3, got {q}.")


class FieldTooLarge(FieldError):
    def __init__(self, q: int) -> None:
        self.q = q
        super().__init__(f"Field order has to be at most 2^16, got {q}.")


class DivisionByZero(FieldError):
    pass


DIVISION_BY_ZERO_ERROR = DivisionByZero("Zero has no multiplicative inverse.")


# geometry


class GeometryError(PolycodeError):
    pass


class EmptyInput(GeometryError):
    pass


class MixedDimensions(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class OriginMissing(GeometryError):
    pass


class TargetTooSmall(GeometryError):
    pass


class NotUnimodular(GeometryError):
    pass


class NotASubset(GeometryError):
    pass


class TooManyVectors(GeometryError):
    pass


EMPTY_INPUT_ERROR = EmptyInput("Polytope needs at least one generator.")
ORIGIN_MISSING_ERROR = OriginMissing(
    "Both summands of a direct sum have to contain the origin."
)
NOT_A_SUBSET_ERROR = NotASubset("First polytope is not contained in second.")


# codes


class CodeError(PolycodeError):
    pass


class OutOfBox(CodeError):
    def __init__(self, q: int) -> None:
        self.q = q
        super().__init__(f"Polytope does not fit in the box [0, {q - 2}]^n.")


class BudgetExceeded(CodeError):
    def __init__(self, budget: int, required: int) -> None:
        self.budget = budget
        self.required = required
        super().__init__(self.budget, self.required)

    def __str__(self) -> str:
        return (
            f"Search needs {self.required} candidates, "
            f"budget is {self.budget}."
        )


class RuleInapplicable(CodeError):
    pass


class InexactParameters(CodeError):
    pass


INEXACT_PARAMETERS_ERROR = InexactParameters(
    "Minimum distance is only known as an interval."
)


# search


class SearchBudgetExceeded(PolycodeError):
    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"Search explored more than {budget} nodes.")


# families


class ScheduleOutOfRange(PolycodeError):
    pass


# input


class InputError(PolycodeError):
    pass


class ExpressionSyntaxError(InputError):
    def __init__(
        self,
        position: int,
        expected: Iterable[str],
        found: Optional[str] = None,
    ) -> None:
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(self.position, self.expected)

    def __str__(self) -> str:
        found = "end of input" if self.found is None else repr(self.found)
        return (
            f"{self.position}: expected one of "
            f"{', '.join(self.expected)}, found {found}"
        )


class InvalidPolytopeDocument(InputError):
    pass


class InvalidExpression(InputError):
    pass
