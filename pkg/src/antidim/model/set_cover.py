"""
Greedy set cover (Johnson's algorithm).

Instances are boolean incidence matrices: ``cover[j, e]`` is True when set j
contains element e. Rows act as bitsets, so each greedy round is one
matrix-vector product.
"""

from typing import Protocol
import logging

import numpy as np

logger = logging.getLogger(__name__)


class SetCoverSolver(Protocol):
    """Returns chosen set indices covering every element, or None if impossible."""

    def __call__(self, cover: np.ndarray) -> list[int] | None: ...


def greedy_set_cover(cover: np.ndarray) -> list[int] | None:
    """
    Repeatedly take the set covering the most still-uncovered elements.

    Ties go to the smallest set index (``np.argmax`` returns the first maximum).
    The result is within a factor H(max set size) <= ln(|U|) + 1 of optimal.

    Parameters:
        cover: (sets x elements) boolean matrix

    Returns:
        list[int] | None: chosen set indices in pick order, None when some element
        belongs to no set
    """
    cover = np.asarray(cover, dtype=bool)
    uncovered = np.ones(cover.shape[1], dtype=bool)
    chosen: list[int] = []
    weights = cover.astype(np.int32)

    while uncovered.any():
        gains = weights @ uncovered.astype(np.int32)
        best = int(np.argmax(gains))
        if gains[best] == 0:
            return None
        chosen.append(best)
        uncovered &= ~cover[best]
        logger.debug("set cover picked %d (gain %d)", best, int(gains[best]))

    return chosen
