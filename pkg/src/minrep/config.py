"""Run configuration for the command-line front end.

A config file is a JSON object; every key is optional:

    {
      "seed": 0,
      "tolerances": {"triangular": 1e-10, "v_integrals": 1e-8, ...},
      "fit_window": {"T": 8.0, "width": 4.0, "samples": 41},
      "cutoff": "6",
      "format": "json"
    }

Unknown keys are rejected so that a typo cannot silently fall back to a
default.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

FORMATS = ("json", "csv", "text")
OUTPUT_ENV = "MINREP_OUTPUT"

DEFAULT_TOLERANCES = {
    "triangular": 1e-10,
    "v_integrals": 1e-8,
    "parseval": 1e-6,
    "pullback": 1e-10,
    "eigen": 1e-7,
    "decay": 0.01,
    "conformal_roundtrip": 1e-12,
    "conformal_factor": 1e-6,
}


@dataclass(frozen=True)
class FitWindow:
    T: float = 8.0
    width: float = 4.0
    samples: int = 41


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    fit_window: FitWindow = field(default_factory=FitWindow)
    cutoff: str = "6"
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"unknown tolerance keys {sorted(unknown)}")

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        allowed = {"seed", "tolerances", "fit_window", "cutoff", "format", "output"}
        extra = set(data) - allowed
        if extra:
            raise ValueError(f"unknown config keys {sorted(extra)}")
        kw = dict(data)
        tols = dict(DEFAULT_TOLERANCES)
        tols.update(kw.pop("tolerances", {}))
        kw["tolerances"] = tols
        if "fit_window" in kw:
            kw["fit_window"] = FitWindow(**kw["fit_window"])
        if "cutoff" in kw:
            kw["cutoff"] = str(kw["cutoff"])
        return cls(**kw)

    @classmethod
    def load(cls, path) -> "RunConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})
