"""Error types for the elastodg solver."""

from typing import List, Optional, Sequence, Tuple


class ElastoDGError(Exception):
    """Base class for all solver errors."""


class ContractViolation(ElastoDGError, ValueError):
    """An internal precondition (shape, norm, classification) was violated."""


class ConfigurationError(ElastoDGError, ValueError):
    """Invalid user input. Carries every issue found, with line numbers if known."""

    def __init__(
        self, message: str, issues: Optional[Sequence[Tuple[Optional[int], str]]] = None
    ):
        self.issues: List[Tuple[Optional[int], str]] = list(issues or [])
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if not self.issues:
            return base
        lines = [base]
        for line, msg in self.issues:
            prefix = f"line {line}: " if line is not None else ""
            lines.append(f"  {prefix}{msg}")
        return "\n".join(lines)


class MeshError(ElastoDGError, ValueError):
    """Degenerate or folded geometry, or an unresolvable point location."""

    def __init__(self, message: str, element: Optional[int] = None):
        self.element = element
        if element is not None:
            message = f"{message} (element {element})"
        super().__init__(message)


class DivergenceError(ElastoDGError, RuntimeError):
    """The state became non-finite during time stepping."""

    def __init__(self, step: int, element: int, location, magnitude: float):
        self.step = step
        self.element = element
        self.location = tuple(float(c) for c in location)
        self.magnitude = magnitude
        super().__init__(
            f"Non-finite state after step {step} in element {element} near "
            f"{self.location} (max |Q| before failure {magnitude:.3e}); "
            "reduce time.cfl"
        )
