"""Configuration dataclasses shared by the CLI and the scripts."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping

OUT_ENV = "ARTIFACT_OUT"


class ConfigError(ValueError):
    """A malformed or inconsistent configuration."""


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_ENV, "artifact-out"))


def _from_mapping(cls, data: Mapping[str, Any]):
    if not isinstance(data, Mapping):
        raise ConfigError(f"{cls.__name__} expects a JSON object")
    known = {f.name for f in fields(cls)}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown {cls.__name__} keys: {', '.join(sorted(extra))}")
    kwargs = {}
    for k, v in data.items():
        kwargs[k] = tuple(v) if isinstance(v, list) else v
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class HFPSSConfig:
    scenario: str = "tmf13"
    window: int = 40
    s_max: int = 64
    truncation: int = 4
    r_max: int | None = None
    validate: bool = True

    def __post_init__(self) -> None:
        if self.window < 0 or self.s_max < 0:
            raise ConfigError("window and s_max must be non-negative")
        if self.truncation < 0:
            raise ConfigError("truncation must be non-negative")

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "HFPSSConfig":
        return _from_mapping(cls, data)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ChartSpec:
    stems: tuple[int, int] = (-8, 16)
    filtrations: tuple[int, int] = (0, 12)
    mode: str = "integer-stems"
    band: int = 0
    arrows: bool = True
    title: str = ""
    cell: int = 28

    def __post_init__(self) -> None:
        if self.mode not in ("integer-stems", "rho-graded-band"):
            raise ConfigError(f"unknown chart mode {self.mode!r}")
        if self.stems[0] > self.stems[1] or self.filtrations[0] > self.filtrations[1]:
            raise ConfigError("empty chart range")

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ChartSpec":
        return _from_mapping(cls, data)

    def to_json(self) -> dict:
        d = asdict(self)
        d["stems"], d["filtrations"] = list(self.stems), list(self.filtrations)
        return d


@dataclass(frozen=True)
class SliceConfig:
    stems: tuple[int, int] = (-24, 24)
    index_window: int = 60


@dataclass(frozen=True)
class PicardConfig:
    target: str = "Tmf13"
    truncation: int = 2


@dataclass(frozen=True)
class ReportConfig:
    seed: int = 0
    out_dir: Path = field(default_factory=default_out_dir)
    window: int = 40
    s_max: int = 64


def parse_range(text: str) -> tuple[int, int]:
    """``"-24:24"`` -> ``(-24, 24)``."""
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"expected LO:HI, got {text!r}") from exc


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
