"""
Domain Exceptions

Every failure the package raises on purpose derives from AntidimError, so callers
(the CLI in particular) can map a failure to an exit code without string matching.
Precondition violations also derive from ValueError and internal contract breaks
from RuntimeError, so generic handlers keep working.
"""


class AntidimError(Exception):
    """Base class for all package errors."""


class EdgeListParseError(AntidimError, ValueError):
    """A non-comment edge-list line did not hold exactly two tokens."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(
            f"line {line_number}: expected two node labels, got {line.strip()!r}"
        )


class DomainError(AntidimError, ValueError):
    """An operation was called outside its stated preconditions."""


class DisconnectedGraphError(DomainError):
    """Distances were requested on a graph with more than one component."""

    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        super().__init__(f"graph is disconnected: node {v} is unreachable from node {u}")


class DiameterOverflowError(DomainError):
    """A hop count does not fit the 16-bit distance storage."""


class OracleLimitError(DomainError):
    """Exhaustive enumeration was asked for a graph above the size guard."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(
            f"brute-force enumeration refused: n={n} exceeds the oracle limit of {limit}"
        )


class ContractError(AntidimError, RuntimeError):
    """An internal guarantee did not hold."""


class ProofGapError(AntidimError, RuntimeError):
    """The constructive tree descent and all of its fallbacks failed."""


class SolverTimeoutError(AntidimError, TimeoutError):
    """The wall-clock budget of a run expired."""


class InfeasibleRequestError(DomainError):
    """A requested k admits no attacker set at all."""
