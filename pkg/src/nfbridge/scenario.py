"""Scenario configuration: defaults, JSON schema validation and overrides."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import jsonschema

from .errors import ConfigError

SUITES = (
    "algebra", "bilinears", "directions", "canonical", "planewave", "currents",
    "grid", "conservation", "lagrangian", "forces", "hydro", "all",
)
MODES = ("exact", "float")
MODE_ENV = "NFBRIDGE_MODE"

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "suite": {"enum": list(SUITES)},
        "mode": {"enum": list(MODES)},
        "seed": {"type": "integer"},
        "trials": {"type": "integer", "minimum": 1},
        "bilinear_trials": {"type": "integer", "minimum": 1},
        "profile": {"enum": ["natural", "rational"]},
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"h": _POSITIVE, "extent": _POSITIVE, "courant": _POSITIVE},
        },
        "ring": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"rho_e": _NUMBER, "j_tau": _NUMBER, "E_p": _NUMBER, "H_p": _NUMBER, "c": _POSITIVE},
        },
        "hydro": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"omega_p": _NUMBER, "h": _POSITIVE},
        },
        "fields": {
            "type": "object",
            "additionalProperties": False,
            "required": ["Ex", "Ez", "Hx", "Hz"],
            "properties": {k: _NUMBER for k in ("Ex", "Ez", "Hx", "Hz")},
        },
    },
}


@dataclass(frozen=True)
class GridConfig:
    h: float = 1 / 32
    extent: float = 1.0
    courant: float = 0.5


@dataclass(frozen=True)
class RingSettings:
    rho_e: float = 1.0
    j_tau: float | None = None  # defaults to rho_e * c
    E_p: float = 0.5
    H_p: float = 1.0
    c: float = 1.0


@dataclass(frozen=True)
class HydroConfig:
    omega_p: float = 1.3
    h: float = 1 / 16


@dataclass(frozen=True)
class Scenario:
    suite: str = "all"
    mode: str = "exact"
    seed: int = 1
    trials: int = 100
    bilinear_trials: int = 1000
    profile: str = "natural"
    grid: GridConfig = field(default_factory=GridConfig)
    ring: RingSettings = field(default_factory=RingSettings)
    hydro: HydroConfig = field(default_factory=HydroConfig)
    fields: dict | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose exact or float")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kw) -> Scenario:
        kw = {k: v for k, v in kw.items() if v is not None}
        if "h" in kw:
            kw["grid"] = replace(self.grid, h=kw.pop("h"))
        return replace(self, **kw)


def as_fraction(x) -> Fraction:
    """Exact value of a JSON number as written in decimal."""
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def scenario_from_dict(data: dict) -> Scenario:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.path)
        raise ConfigError(f"invalid scenario{' at ' + where if where else ''}: {exc.message}") from None
    kw = dict(data)
    if "grid" in kw:
        kw["grid"] = GridConfig(**kw["grid"])
    if "ring" in kw:
        kw["ring"] = RingSettings(**kw["ring"])
    if "hydro" in kw:
        kw["hydro"] = HydroConfig(**kw["hydro"])
    return Scenario(**kw)


def load_scenario(path: str | Path | None = None, env: dict | None = None) -> Scenario:
    """Defaults, then the scenario file, then ``NFBRIDGE_MODE``."""
    env = os.environ if env is None else env
    if path is None:
        sc = Scenario()
    else:
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read scenario {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario {path} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("scenario must be a JSON object")
        sc = scenario_from_dict(data)
    mode = env.get(MODE_ENV)
    if mode:
        sc = sc.with_overrides(mode=mode)
    return sc
