from typing import Optional, Sequence, Tuple


class LoopTheoryError(Exception):
    """Base class of every error raised by the toolkit."""


class VerificationError(LoopTheoryError, RuntimeError):
    """An internal consistency check failed; signals a bug, not bad input."""


class MalformedTable(LoopTheoryError, ValueError):
    pass


class NotLatinSquare(LoopTheoryError, ValueError):
    def __init__(self, kind: str, index: int, coordinates: Tuple[Tuple[int, int], Tuple[int, int]]):
        self.kind = kind
        self.index = index
        self.coordinates = coordinates
        super().__init__(f"{kind} {index} repeats a value at cells {coordinates[0]} and {coordinates[1]}")


class NoIdentity(LoopTheoryError, ValueError):
    pass


class MultipleIdentities(VerificationError):
    pass


class NoInverse(LoopTheoryError, ValueError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotASubloop(LoopTheoryError, ValueError):
    pass


class NotNormal(LoopTheoryError, ValueError):
    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        self.witness = witness
        super().__init__(message)


class NotAHomomorphism(LoopTheoryError, ValueError):
    def __init__(self, witness: Tuple[int, int]):
        self.witness = witness
        super().__init__(f"map is not multiplicative at pair {witness}")


class OrderBoundExceeded(LoopTheoryError):
    def __init__(self, order: int, bound: int, stage: str = ""):
        self.order = order
        self.bound = bound
        self.stage = stage
        where = f" during {stage}" if stage else ""
        super().__init__(f"order {order} exceeds the configured bound {bound}{where}")


class DegreeMismatch(LoopTheoryError, ValueError):
    pass


class ElementNotInGroup(LoopTheoryError, ValueError):
    pass


class InnerMismatch(VerificationError):
    pass


class NotUnimodular(LoopTheoryError, ValueError):
    def __init__(self, determinant: complex):
        self.determinant = determinant
        super().__init__(f"determinant {determinant} is not 1")


class IllConditioned(LoopTheoryError, ValueError):
    def __init__(self, condition: float, limit: float):
        self.condition = condition
        self.limit = limit
        super().__init__(f"condition number {condition:.3e} exceeds {limit:.3e}")


class NotInTransversal(LoopTheoryError, ValueError):
    pass


class NumericalFailure(VerificationError):
    pass


class LoopFileError(LoopTheoryError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def format_witness(witness: Sequence[int]) -> str:
    return "(" + ", ".join(str(w) for w in witness) + ")"
