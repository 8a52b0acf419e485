"""Per-node score and rank containers shared by the analysis modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

HIGHER = "higher"
LOWER = "lower"
Direction = Literal["higher", "lower"]


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """One finite score per node for a single measure.

    ``direction`` says which end is central: ``"higher"`` for most
    measures, ``"lower"`` for sum-of-distances closeness and average rank.
    """

    labels: tuple[str, ...]
    scores: np.ndarray
    measure: str
    direction: Direction = HIGHER
    # closeness only: size of the component each score was summed over
    component_sizes: np.ndarray | None = None

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float)
        if scores.shape != (len(self.labels),):
            raise ValueError(f"expected {len(self.labels)} scores, got shape {scores.shape}")
        if not np.all(np.isfinite(scores)):
            raise ValueError(f"non-finite score in {self.measure}")
        if self.direction not in (HIGHER, LOWER):
            raise ValueError(f"unknown direction {self.direction!r}")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return len(self.labels)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.scores.tolist()))

    def __getitem__(self, label: str) -> float:
        return float(self.scores[self.labels.index(label)])


@dataclass(frozen=True, eq=False)
class Ranking:
    """Fractional ranks, 1 = most central."""

    labels: tuple[str, ...]
    ranks: np.ndarray
    measure: str

    def __post_init__(self):
        ranks = np.asarray(self.ranks, dtype=float)
        if ranks.shape != (len(self.labels),):
            raise ValueError(f"expected {len(self.labels)} ranks, got shape {ranks.shape}")
        ranks.setflags(write=False)
        object.__setattr__(self, "ranks", ranks)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, label: str) -> float:
        return float(self.ranks[self.labels.index(label)])


def format_number(x: float) -> str:
    """Up to 6 significant digits; integral values without a decimal point."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.6g}"
