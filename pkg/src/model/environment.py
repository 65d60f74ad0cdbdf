"""
One-dimensional region environment with a step-indexed quality schedule.
"""

import bisect
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.core.exceptions import EnvironmentScheduleError, NodeKindError, RegionIndexError
from src.model.graph import NodeState

SIDES = ("left", "right")


@dataclass(frozen=True)
class ScheduleEntry:
    """Qualities in force from ``start_step`` until the next entry."""

    start_step: int
    qualities: Tuple[float, ...]


class Environment:
    """Immutable region environment; qualities are indexed 1..M."""

    def __init__(
        self,
        num_regions: int,
        schedule: Sequence[Union[ScheduleEntry, Tuple[int, Sequence[float]]]],
    ):
        if num_regions < 1:
            raise EnvironmentScheduleError("num_regions must be >= 1")
        entries = [
            e if isinstance(e, ScheduleEntry)
            else ScheduleEntry(int(e[0]), tuple(float(q) for q in e[1]))
            for e in schedule
        ]
        if not entries:
            raise EnvironmentScheduleError("schedule must not be empty")
        if entries[0].start_step != 0:
            raise EnvironmentScheduleError("first schedule entry must start at step 0")
        starts = [e.start_step for e in entries]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise EnvironmentScheduleError(
                "schedule must be strictly sorted by start_step", details={"starts": starts}
            )
        for entry in entries:
            if len(entry.qualities) != num_regions:
                raise EnvironmentScheduleError(
                    f"entry at step {entry.start_step} has {len(entry.qualities)} "
                    f"qualities, expected {num_regions}"
                )
            if any(not q >= 0.0 for q in entry.qualities):
                raise EnvironmentScheduleError(
                    f"entry at step {entry.start_step} has a negative quality"
                )

        self.num_regions = num_regions
        self.schedule: Tuple[ScheduleEntry, ...] = tuple(entries)
        self._starts: List[int] = starts
        self._vectors = []
        for entry in entries:
            vector = np.asarray(entry.qualities, dtype=float)
            vector.setflags(write=False)
            self._vectors.append(vector)

    @classmethod
    def static(cls, qualities: Sequence[float]) -> "Environment":
        """Single-entry schedule."""
        return cls(len(qualities), [ScheduleEntry(0, tuple(float(q) for q in qualities))])

    @classmethod
    def switching(
        cls,
        num_regions: int = 8,
        period: int = 400,
        high_quality: float = 0.3,
        low_quality: float = 0.1,
        pattern: str = "left-right-left",
    ) -> "Environment":
        """
        Environment whose single high-quality region alternates between the ends.

        Args:
            num_regions: Number of regions M
            period: Steps each phase lasts (T)
            high_quality: Quality of the favoured end region
            low_quality: Quality of every other region
            pattern: Dash separated sides, one phase each, e.g. "left-right-left"

        Returns:
            Environment with one schedule entry per phase
        """
        sides = [s.strip().lower() for s in pattern.split("-") if s.strip()]
        if not sides or any(s not in SIDES for s in sides):
            raise EnvironmentScheduleError(
                f"pattern must be dash separated sides from {SIDES}", details={"pattern": pattern}
            )
        if period < 1:
            raise EnvironmentScheduleError("period must be >= 1")

        entries = []
        for phase, side in enumerate(sides):
            qualities = [low_quality] * num_regions
            qualities[0 if side == "left" else num_regions - 1] = high_quality
            entries.append(ScheduleEntry(phase * period, tuple(qualities)))
        return cls(num_regions, entries)

    def _entry_index(self, t: int) -> int:
        if t < 0:
            raise EnvironmentScheduleError(f"step must be >= 0, got {t}")
        return bisect.bisect_right(self._starts, t) - 1

    def qualities_at(self, t: int) -> np.ndarray:
        """Read-only quality vector in force at step ``t``."""
        return self._vectors[self._entry_index(t)]

    def quality_at(self, t: int, m: int) -> float:
        """Quality of region ``m`` (1-based) at step ``t``."""
        if not 1 <= m <= self.num_regions:
            raise RegionIndexError(
                f"region {m} outside 1..{self.num_regions}", details={"region": m}
            )
        return float(self.qualities_at(t)[m - 1])

    def __repr__(self) -> str:
        return f"Environment(num_regions={self.num_regions}, switches={self._starts})"


def quality_at(env: Environment, t: int, m: int) -> float:
    return env.quality_at(t, m)


def service_profit(node: NodeState, env: Environment, t: int) -> float:
    """
    Profit per step of a service node: resident assets times mean quality of its regions.

    Raises:
        NodeKindError: If called on a decision node
        RegionIndexError: If the node supports a region outside 1..M
    """
    if not node.is_service:
        raise NodeKindError(f"service_profit called on decision node {node.label}")
    if not node.regions:
        raise NodeKindError(f"service node {node.label} supports no region")
    if node.regions[0] < 1 or node.regions[-1] > env.num_regions:
        raise RegionIndexError(
            f"node {node.label} supports regions outside 1..{env.num_regions}",
            details={"regions": list(node.regions)},
        )
    qualities = env.qualities_at(t)
    mean_quality = qualities[np.asarray(node.regions) - 1].mean()
    return node.resident_assets * float(mean_quality)
