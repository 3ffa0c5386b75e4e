"""Tunable bounds shared by the pipelines and the command line."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

FIXTURES_ENV = "FLATSOLV_FIXTURES"


def default_fixtures_dir() -> Path:
    env = os.environ.get(FIXTURES_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "fixtures"


@dataclass(frozen=True)
class SearchConfig:
    bound: int = 3
    coker_cap: int = 10**6
    modular: bool = True
    max_nodes: int = 10**6

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be >= 1")
        if self.coker_cap < 1:
            raise ValueError("coker cap must be >= 1")


@dataclass(frozen=True)
class ClassifyConfig:
    dim: int = 6
    family: str = "all"
    fixtures: Path | None = None
    search: SearchConfig = SearchConfig()
    diagnostics: bool = True

    def __post_init__(self):
        if self.family not in ("almost-abelian", "splittable", "all"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.dim != 6:
            raise ValueError("only dimension 6 fixtures ship with the package")

    @property
    def fixtures_dir(self) -> Path:
        return Path(self.fixtures) if self.fixtures else default_fixtures_dir()
