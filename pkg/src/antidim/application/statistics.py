"""
Ensemble Statistics

Folds per-sample summaries into the distributional view reported for random
ensembles: how often k_opt reaches each threshold, how the ADIM=1 sizes split
over {1, 2, >2}, and the k_opt value (and k_opt/n ratio) that covers a given
share of the samples.
"""

from collections.abc import Sequence

import numpy as np

from antidim.model.experiment import BatchStats, NetworkSummary

EQ1_BUCKETS = ("1", "2", ">2")


def kopt_threshold_grid(values: Sequence[int]) -> tuple[tuple[int, float], ...]:
    """(t, share of values >= t) for t = 1..max(values); non-increasing in t."""
    if not values:
        return ()
    array = np.asarray(values)
    return tuple(
        (t, float(np.count_nonzero(array >= t)) / array.size)
        for t in range(1, int(array.max()) + 1)
    )


def eq1_distribution(values: Sequence[int]) -> dict[str, float]:
    if not values:
        return {}
    array = np.asarray(values)
    counts = (
        np.count_nonzero(array == 1),
        np.count_nonzero(array == 2),
        np.count_nonzero(array > 2),
    )
    return {bucket: count / array.size for bucket, count in zip(EQ1_BUCKETS, counts)}


def coverage_quantile(values: Sequence[float], coverage: float) -> float | None:
    """Smallest observed x with at least ``coverage`` of the values <= x."""
    if not values:
        return None
    return float(np.quantile(np.asarray(values, dtype=float), coverage, method="inverted_cdf"))


def aggregate(
    config: dict,
    summaries: Sequence[NetworkSummary],
    failed: int = 0,
    coverage: float = 0.9,
) -> BatchStats:
    """
    Build BatchStats from the summaries of the samples that finished.

    Skipped samples count towards ``samples`` but contribute no measures.
    """
    measured = [s for s in summaries if s.k_opt is not None]
    kopts = [s.k_opt for s in measured]
    ratios = [s.k_opt / s.n for s in measured]
    eq1 = [s.eq1_cardinality for s in summaries if s.eq1_cardinality is not None]

    kopt_quantile = coverage_quantile(kopts, coverage)
    return BatchStats(
        config=config,
        samples=len(summaries),
        failed=failed,
        kopt_at_least=kopt_threshold_grid(kopts),
        eq1_distribution=eq1_distribution(eq1),
        kopt_quantile=None if kopt_quantile is None else int(kopt_quantile),
        ratio_quantile=coverage_quantile(ratios, coverage),
        coverage=coverage,
    )
