"""Shared value types: list assignments, colorings, solver configuration and traces."""

from __future__ import annotations

import os
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

from .errors import BadParameter, ListTooSmall, UncoloredVertex

Coloring = dict[int, int]

DEFAULT_MAX_LEN = 14
DEFAULT_THRESHOLD = 14
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists, each with at least two distinct colors."""

    lists: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        clean = {}
        for v, colors in self.lists.items():
            colors = tuple(sorted(set(int(c) for c in colors)))
            if len(colors) < 2:
                raise ListTooSmall(int(v), len(colors))
            clean[int(v)] = colors
        object.__setattr__(self, "lists", clean)

    @classmethod
    def uniform(cls, vertices: Iterable[int], colors: Iterable[int] = (0, 1)) -> ListAssignment:
        colors = tuple(colors)
        return cls({v: colors for v in vertices})

    @classmethod
    def random_pairs(cls, vertices: Iterable[int], seed: int, palette: int = 5) -> ListAssignment:
        """Random 2-subsets of {0, ..., palette-1}, deterministic under seed."""
        rng = random.Random(seed)
        return cls({v: tuple(rng.sample(range(palette), 2)) for v in sorted(vertices)})

    def __getitem__(self, v: int) -> tuple[int, ...]:
        try:
            return self.lists[v]
        except KeyError:
            raise ListTooSmall(v, 0) from None

    def __contains__(self, v: object) -> bool:
        return v in self.lists

    def covers(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if v not in self.lists:
                raise ListTooSmall(v, 0)

    def is_uniform(self) -> bool:
        return len(set(self.lists.values())) <= 1

    def respects(self, coloring: Mapping[int, int], vertices: Iterable[int]) -> bool:
        for v in vertices:
            if v not in coloring:
                raise UncoloredVertex(v)
            if coloring[v] not in self.lists.get(v, ()):
                return False
        return True

    def to_dict(self) -> dict:
        return {"format": 1, "lists": {str(v): list(c) for v, c in sorted(self.lists.items())}}

    @classmethod
    def from_dict(cls, d: dict) -> ListAssignment:
        return cls({int(v): tuple(c) for v, c in d["lists"].items()})


@dataclass
class SolverConfig:
    """Knobs of the constructive solver."""

    max_len: int = DEFAULT_MAX_LEN
    threshold: int = DEFAULT_THRESHOLD
    batch: bool = True
    oracle_budget: int = DEFAULT_BUDGET
    verify: bool = True

    def __post_init__(self):
        if self.max_len < 1:
            raise BadParameter(f"max_len must be positive, got {self.max_len}")
        if self.threshold < 0:
            raise BadParameter(f"threshold must be >= 0, got {self.threshold}")

    @classmethod
    def from_env(cls, **overrides) -> SolverConfig:
        """Defaults overridden by LINSPLIT_THRESHOLD / LINSPLIT_BUDGET, then by keywords."""
        values = {
            "threshold": int(os.environ.get("LINSPLIT_THRESHOLD", DEFAULT_THRESHOLD)),
            "oracle_budget": default_budget(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def default_budget() -> int:
    return int(os.environ.get("LINSPLIT_BUDGET", DEFAULT_BUDGET))


@dataclass
class TraceEvent:
    """One recursion step of the solver."""

    step: int
    depth: int
    lemma: str
    size: int
    removed: list[int] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)
