"""Configuration records for the experiment scripts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dynamics import DEFAULT_CAP, DEFAULT_KMAX, EXP_THRESHOLD


@dataclass(frozen=True)
class GrowthConfig:
    k_max: int = DEFAULT_KMAX
    length_cap: int = DEFAULT_CAP
    threads: Optional[int] = None  # None: RAAGDYN_THREADS or cpu count
    threshold: float = EXP_THRESHOLD


@dataclass(frozen=True)
class SurveyConfig:
    """Random products of elementary generators on random graphs."""

    samples: int = 300
    max_vertices: int = 6
    max_length: int = 6
    seed: int = 0
    symmetries: bool = True
