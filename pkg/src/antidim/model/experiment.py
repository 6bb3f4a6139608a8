"""
Experiment Entities

Immutable records describing what a run should compute (RunConfig) and what it
found, per network (NetworkSummary) and per generated ensemble (BatchStats). They
mirror the shapes of the published result tables: one row per network with k_opt,
p_opt, the attacker-set size at k_opt and k_opt/n; a per-k table of minimum
attacker-set sizes; and distributional summaries over random ensembles.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from antidim.model.errors import DomainError
from antidim.model.generators import GenConfig

Problem = Literal["kopt", "geq", "eq1", "tree-chain"]
PROBLEMS: tuple[Problem, ...] = ("kopt", "geq", "eq1", "tree-chain")
OutputFormat = Literal["json", "csv", "text"]


@dataclass(frozen=True, slots=True)
class RunConfig:
    """
    What to compute and where to put it.

    Exactly one of ``source`` (edge-list path or ``builtin:NAME``) and
    ``generator`` is set. ``ks`` is the k list for the "geq" problem;
    ``full_sweep`` replaces it by k = 1..k_opt with repeated sizes suppressed.
    """

    problems: frozenset[Problem]
    source: str | None = None
    generator: GenConfig | None = None
    count: int = 1
    ks: tuple[int, ...] = ()
    workers: int = 1
    timeout_seconds: float | None = 1800.0
    output: Path | None = None
    output_format: OutputFormat = "json"
    full_sweep: bool = False

    def __post_init__(self):
        if not self.problems:
            raise DomainError("select at least one problem")
        unknown = set(self.problems) - set(PROBLEMS)
        if unknown:
            raise DomainError(f"unknown problem(s): {', '.join(sorted(unknown))}")
        if any(k < 1 for k in self.ks):
            raise DomainError(f"k values must be positive, got {self.ks}")
        if "geq" in self.problems and not self.ks and not self.full_sweep:
            raise DomainError("the geq problem needs at least one k or a full sweep")
        if (self.source is None) == (self.generator is None):
            raise DomainError("set exactly one of an input source and a generator")
        if self.count < 1:
            raise DomainError(f"count must be at least 1, got {self.count}")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")


@dataclass(frozen=True, slots=True)
class KRow:
    """One row of the per-k table: minimum attacker-set size for mu >= k."""

    k: int
    cardinality: int | None
    witness: tuple = ()

    @property
    def p_k(self) -> float:
        return round(1 / self.k, 3)

    @property
    def feasible(self) -> bool:
        return self.cardinality is not None


@dataclass(frozen=True, slots=True)
class NetworkSummary:
    """
    Measures of one network, computed on its largest connected component.

    Fields stay None for problems that were not run. ``complete`` is False when
    the wall-clock guard cut the run short.
    """

    name: str
    n: int
    m: int
    raw_n: int
    raw_m: int
    k_opt: int | None = None
    kopt_cardinality: int | None = None
    kopt_witness: tuple = ()
    eq1_cardinality: int | None = None
    eq1_witness: tuple = ()
    eq1_target: object = None
    per_k: tuple[KRow, ...] = ()
    chain: tuple[tuple[int, tuple], ...] = ()
    complete: bool = True
    skipped: str | None = None

    @property
    def p_opt(self) -> float | None:
        return None if self.k_opt is None else 1 / self.k_opt

    @property
    def fraction(self) -> float | None:
        return None if self.k_opt is None or not self.n else self.k_opt / self.n

    @property
    def mean_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def report(self) -> list[str]:
        """Plain-language reading of the measures."""
        lines = [f"{self.name}: n={self.n}, m={self.m} (largest connected component)"]
        if self.skipped:
            lines.append(f"  skipped: {self.skipped}")
            return lines
        if self.k_opt is not None:
            lines.append(
                f"  no attacker set can re-identify any node with probability above "
                f"1/{self.k_opt} = {self.p_opt:.3f}; reaching that takes {self.kopt_cardinality} node(s) "
                f"(k_opt/n = {100 * self.fraction:.1f}%)"
            )
        if self.eq1_cardinality is not None:
            lines.append(
                f"  an adversary controlling {self.eq1_cardinality} suitable node(s) re-identifies "
                f"at least one node with certainty"
            )
        for row in self.per_k:
            size = "infeasible" if row.cardinality is None else str(row.cardinality)
            lines.append(f"  k={row.k} (p={row.p_k}): minimum attacker set {size}")
        for k, witness in self.chain:
            lines.append(f"  {k}-antiresolving: {list(witness)}")
        if not self.complete:
            lines.append("  INCOMPLETE: wall-clock budget expired")
        return lines

    def to_record(self) -> dict:
        """JSON-ready record; keys of problems that were not run are left out."""
        record: dict = {
            "name": self.name,
            "n": self.n,
            "m": self.m,
            "raw_n": self.raw_n,
            "raw_m": self.raw_m,
            "mean_degree": round(self.mean_degree, 3),
            "complete": self.complete,
        }
        if self.skipped:
            record["skipped"] = self.skipped
        if self.k_opt is not None:
            record.update(
                k_opt=self.k_opt,
                p_opt=round(self.p_opt, 3),
                L_at_kopt=self.kopt_cardinality,
                fraction=round(self.fraction, 3),
                kopt_witness=list(self.kopt_witness),
            )
        if self.eq1_cardinality is not None:
            record.update(
                L_eq1=self.eq1_cardinality,
                eq1_witness=list(self.eq1_witness),
                eq1_target=self.eq1_target,
            )
        if self.per_k:
            record["per_k"] = [
                {"k": row.k, "p": row.p_k, "L": row.cardinality, "witness": list(row.witness)}
                for row in self.per_k
            ]
        if self.chain:
            record["chain"] = [{"k": k, "witness": list(w)} for k, w in self.chain]
        return record


@dataclass(frozen=True, slots=True)
class BatchStats:
    """
    Ensemble statistics.

    Attributes:
        config: Echo of the generator configuration
        samples: Samples that produced a summary
        failed: Samples that raised and were excluded
        kopt_at_least: (t, fraction of samples with k_opt >= t), t ascending
        eq1_distribution: fraction of samples with eq1_cardinality equal to 1, 2, or above 2
        kopt_quantile: smallest t with at least ``coverage`` of samples at k_opt <= t
        ratio_quantile: same cut-off for k_opt / n
        coverage: the quantile level, 0.9 by default
    """

    config: dict
    samples: int
    failed: int = 0
    kopt_at_least: tuple[tuple[int, float], ...] = ()
    eq1_distribution: dict[str, float] = field(default_factory=dict)
    kopt_quantile: int | None = None
    ratio_quantile: float | None = None
    coverage: float = 0.9

    def quantile_line(self) -> str | None:
        if self.kopt_quantile is None:
            return None
        return (
            f"At least {round(100 * self.coverage)}% of networks have k_opt <= {self.kopt_quantile} "
            f"and k_opt/n <= {self.ratio_quantile:.3f}"
        )

    def to_record(self) -> dict:
        return {
            "config": self.config,
            "samples": self.samples,
            "failed": self.failed,
            "kopt_at_least": [
                {"t": t, "fraction": round(fraction, 3)} for t, fraction in self.kopt_at_least
            ],
            "eq1_distribution": {key: round(v, 3) for key, v in self.eq1_distribution.items()},
            "kopt_quantile": self.kopt_quantile,
            "ratio_quantile": None if self.ratio_quantile is None else round(self.ratio_quantile, 3),
            "coverage": self.coverage,
        }


@dataclass(frozen=True, slots=True)
class EnsembleRun:
    """Aggregate statistics plus the per-sample summaries they were folded from."""

    stats: BatchStats
    summaries: tuple[NetworkSummary, ...]
    failures: tuple[tuple[str, str], ...] = ()

    def to_record(self) -> dict:
        return {
            "stats": self.stats.to_record(),
            "samples": [s.to_record() for s in self.summaries],
            "failures": [{"name": name, "error": error} for name, error in self.failures],
        }


@dataclass(frozen=True, slots=True)
class WitnessCheck:
    """
    Outcome of re-measuring one stored witness.

    ``relation`` is "==" for sets claimed to be exactly k-antiresolving and ">="
    for ADIM>=k witnesses.
    """

    network: str
    kind: str
    k: int
    witness: tuple
    mu: int
    relation: str = "=="

    @property
    def passed(self) -> bool:
        return self.mu == self.k if self.relation == "==" else self.mu >= self.k

    def to_record(self) -> dict:
        return {
            "network": self.network,
            "kind": self.kind,
            "k": self.k,
            "witness": list(self.witness),
            "mu": self.mu,
            "relation": self.relation,
            "passed": self.passed,
        }
