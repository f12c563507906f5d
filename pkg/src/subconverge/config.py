"""Experiment configuration: a small versioned JSON schema.

Example:

    {"schema": 1, "model": "sp3", "params": {"k": 3},
     "initial": [1, 1, 1], "steps": 300, "format": "csv"}

Unknown keys are rejected so that typos fail loudly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ConfigError
from .models import MODEL_NAMES

SCHEMA_VERSION = 1

_ALLOWED_KEYS = {"schema", "model", "params", "initial", "steps",
                 "format", "analysis", "tolerances", "terms"}
_ALLOWED_FORMATS = {"csv", "json"}


@dataclass
class ExperimentConfig:
    model: str
    params: dict = field(default_factory=dict)
    initial: List[float] = field(default_factory=list)
    steps: int = 100
    format: str = "csv"
    analysis: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    terms: Optional[List[float]] = None   # round-trip payload, ignored

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA_VERSION,
            "model": self.model,
            "params": self.params,
            "initial": self.initial,
            "steps": self.steps,
            "format": self.format,
        }
        if self.analysis:
            d["analysis"] = self.analysis
        if self.tolerances:
            d["tolerances"] = self.tolerances
        if self.terms is not None:
            d["terms"] = self.terms
        return d


def parse_config(text: str) -> ExperimentConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("invalid JSON: %s" % exc) from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise ConfigError("unknown config keys: %s"
                          % ", ".join(sorted(unknown)))
    if raw.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ConfigError("unsupported schema version %r" % raw.get("schema"))
    model = raw.get("model")
    if not isinstance(model, str) or model not in MODEL_NAMES:
        raise ConfigError("model must be one of: %s"
                          % ", ".join(MODEL_NAMES))
    fmt = raw.get("format", "csv")
    if fmt not in _ALLOWED_FORMATS:
        raise ConfigError("format must be csv or json")
    steps = raw.get("steps", 100)
    if not isinstance(steps, int) or steps < 0:
        raise ConfigError("steps must be a non-negative integer")
    initial = raw.get("initial", [])
    if not isinstance(initial, list) or \
            not all(isinstance(v, (int, float)) for v in initial):
        raise ConfigError("initial must be a list of numbers")
    for key in ("params", "analysis", "tolerances"):
        if key in raw and not isinstance(raw[key], dict):
            raise ConfigError("%s must be an object" % key)
    return ExperimentConfig(
        model=model,
        params=raw.get("params", {}),
        initial=[float(v) for v in initial],
        steps=steps,
        format=fmt,
        analysis=raw.get("analysis", {}),
        tolerances=raw.get("tolerances", {}),
        terms=raw.get("terms"),
    )


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
