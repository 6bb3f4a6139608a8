"""Wall-clock budget shared by the long-running solvers."""

from dataclasses import dataclass, field
import time

from antidim.model.errors import SolverTimeoutError


@dataclass(slots=True)
class Deadline:
    """
    Monotonic-clock budget.

    A ``seconds`` of None means unlimited. Solvers call ``check()`` at coarse
    checkpoints (one per start node, target node or binary-search step).
    """

    seconds: float | None = None
    label: str = "run"
    _started: float = field(default_factory=time.monotonic, init=False)

    @classmethod
    def unlimited(cls) -> "Deadline":
        return cls(seconds=None)

    def elapsed(self) -> float:
        return time.monotonic() - self._started

    def expired(self) -> bool:
        return self.seconds is not None and self.elapsed() > self.seconds

    def check(self) -> None:
        if self.expired():
            raise SolverTimeoutError(
                f"{self.label} exceeded its budget of {self.seconds:g}s"
            )
