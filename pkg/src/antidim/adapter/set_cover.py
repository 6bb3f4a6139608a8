"""Set-cover backends for the ADIM=1 solver."""

import numpy as np

from antidim.model.set_cover import greedy_set_cover


class JohnsonGreedySetCover:
    """Largest-remaining-coverage-first greedy cover, ties to the smallest index."""

    def __call__(self, cover: np.ndarray) -> list[int] | None:
        return greedy_set_cover(cover)
