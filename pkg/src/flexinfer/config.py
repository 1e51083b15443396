"""JSON experiment configuration.

Example::

    {
      "universes": {"U": {"lo": 0, "hi": 10}, "V": {"lo": 0, "hi": 100}},
      "values": {
        "A": {"universe": "U", "support": [2, 8], "core": [4.5, 5.5], "peak": 5},
        "B": {"universe": "V", "support": [20, 80], "core": [45, 55], "peak": 50}
      },
      "partitions": {"P": {"universe": "U", "n": 3}},
      "rules": {"r": {"if": ["A"], "then": "B"}},
      "grid_points": 201,
      "seed": 42
    }

Partition members are addressable as values named ``<partition>_<i>``
(1-based).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import DanglingReference, ParseError, ValidationError
from .fuzzy import DEFAULT_GRID_POINTS
from .rules import Combiner, FlexibleRule, Polarity
from .values import FlexiblePartition, FlexibleValue, Universe, make_flexible_value, make_triangular_partition

DEFAULT_SEED = 42
MIN_GRID_POINTS = 11


@dataclass
class ExperimentConfig:
    universes: dict[str, Universe] = field(default_factory=dict)
    values: dict[str, FlexibleValue] = field(default_factory=dict)
    partitions: dict[str, FlexiblePartition] = field(default_factory=dict)
    rules: dict[str, FlexibleRule] = field(default_factory=dict)
    grid_points: int = DEFAULT_GRID_POINTS
    seed: int = DEFAULT_SEED
    outputs: str | None = None

    def value(self, name: str) -> FlexibleValue:
        if name in self.values:
            return self.values[name]
        for p in self.partitions.values():
            for v in p:
                if v.name == name:
                    return v
        raise DanglingReference(name)

    def rule(self, name: str) -> FlexibleRule:
        try:
            return self.rules[name]
        except KeyError:
            raise DanglingReference(name, "rule lookup") from None


def _num(obj: Any, what: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ValidationError(f"{what}: expected a number, got {obj!r}")
    return float(obj)


def _pair(obj: Any, what: str) -> tuple[float, float]:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise ValidationError(f"{what}: expected [lo, hi], got {obj!r}")
    return _num(obj[0], what), _num(obj[1], what)


def _section(doc: dict, key: str) -> dict:
    sec = doc.get(key, {})
    if not isinstance(sec, dict):
        raise ValidationError(f"{key!r} must be an object")
    return sec


def _enum(cls, raw: Any, what: str):
    try:
        return cls(str(raw).lower())
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise ValidationError(f"{what}: {raw!r} is not one of {choices}") from None


def build_config(doc: Any) -> ExperimentConfig:
    """Validate a parsed JSON document into an object graph."""
    if not isinstance(doc, dict):
        raise ValidationError("config root must be an object")
    cfg = ExperimentConfig()

    for name, spec in _section(doc, "universes").items():
        if isinstance(spec, dict):
            lo, hi = _num(spec.get("lo"), f"universe {name!r} lo"), _num(spec.get("hi"), f"universe {name!r} hi")
        else:
            lo, hi = _pair(spec, f"universe {name!r}")
        cfg.universes[name] = Universe(name, lo, hi)

    def universe(ref: Any, where: str) -> Universe:
        if ref not in cfg.universes:
            raise DanglingReference(str(ref), where)
        return cfg.universes[ref]

    for name, spec in _section(doc, "values").items():
        where = f"value {name!r}"
        if not isinstance(spec, dict):
            raise ValidationError(f"{where}: expected an object")
        u = universe(spec.get("universe"), where)
        ext = spec.get("extended_core")
        try:
            cfg.values[name] = make_flexible_value(
                name,
                u,
                _pair(spec.get("support"), f"{where} support"),
                _pair(spec.get("core"), f"{where} core"),
                _num(spec.get("peak"), f"{where} peak"),
                _num(spec.get("beta", 1.0), f"{where} beta"),
                None if ext is None else _pair(ext, f"{where} extended_core"),
            )
        except ValidationError as exc:
            if name in str(exc):
                raise
            raise type(exc)(f"{where}: {exc}") from exc

    for name, spec in _section(doc, "partitions").items():
        where = f"partition {name!r}"
        if not isinstance(spec, dict):
            raise ValidationError(f"{where}: expected an object")
        n = spec.get("n")
        if isinstance(n, bool) or not isinstance(n, int):
            raise ValidationError(f"{where}: n must be an integer")
        try:
            part = make_triangular_partition(universe(spec.get("universe"), where), n, prefix=f"{name}_")
        except ValidationError as exc:
            raise type(exc)(f"{where}: {exc}") from exc
        for v in part:
            if v.name in cfg.values:
                raise ValidationError(f"{where}: member {v.name!r} clashes with a declared value")
        cfg.partitions[name] = part

    for name, spec in _section(doc, "rules").items():
        where = f"rule {name!r}"
        if not isinstance(spec, dict):
            raise ValidationError(f"{where}: expected an object")
        conds = spec.get("if")
        if isinstance(conds, str):
            conds = [conds]
        if not isinstance(conds, list) or not conds:
            raise ValidationError(f"{where}: 'if' must name one or more values")
        conditions = tuple(_ref(cfg, c, where) for c in conds)
        consequent = _ref(cfg, spec.get("then"), where)
        combiner = _enum(Combiner, spec.get("combiner", "conjunction"), f"{where} combiner")
        pol = spec.get("polarity", "increasing")
        pols = pol if isinstance(pol, list) else [pol] * len(conditions)
        polarities = tuple(_enum(Polarity, p, f"{where} polarity") for p in pols)
        weights = tuple(_num(w, f"{where} weights") for w in spec.get("weights", []))
        try:
            cfg.rules[name] = FlexibleRule(name, conditions, consequent, combiner, weights, polarities)
        except ValidationError as exc:
            if name in str(exc):
                raise
            raise type(exc)(f"{where}: {exc}") from exc

    grid = doc.get("grid_points", DEFAULT_GRID_POINTS)
    if isinstance(grid, bool) or not isinstance(grid, int) or grid < MIN_GRID_POINTS:
        raise ValidationError(f"grid_points must be an integer >= {MIN_GRID_POINTS}, got {grid!r}")
    cfg.grid_points = grid
    seed = doc.get("seed", DEFAULT_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    cfg.seed = seed
    out = doc.get("outputs")
    if out is not None and not isinstance(out, str):
        raise ValidationError("outputs must be a directory path string")
    cfg.outputs = out
    return cfg


def _ref(cfg: ExperimentConfig, name: Any, where: str) -> FlexibleValue:
    if not isinstance(name, str):
        raise ValidationError(f"{where}: value references must be names, got {name!r}")
    try:
        return cfg.value(name)
    except DanglingReference:
        raise DanglingReference(name, where) from None


def parse_config(text: str) -> ExperimentConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    return build_config(doc)


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


def dump_config(cfg: ExperimentConfig) -> dict:
    """Normalized JSON-ready document; ``build_config`` reproduces ``cfg``."""
    doc: dict[str, Any] = {
        "universes": {n: {"lo": u.lo, "hi": u.hi} for n, u in cfg.universes.items()},
        "values": {
            n: {
                "universe": v.universe.name,
                "support": list(v.support),
                "core": list(v.core),
                "peak": v.peak,
                "beta": v.beta,
                "extended_core": list(v.extended_core),
            }
            for n, v in cfg.values.items()
        },
        "partitions": {n: {"universe": p.universe.name, "n": len(p)} for n, p in cfg.partitions.items()},
        "rules": {},
        "grid_points": cfg.grid_points,
        "seed": cfg.seed,
    }
    for n, r in cfg.rules.items():
        entry: dict[str, Any] = {
            "if": [c.name for c in r.conditions],
            "then": r.consequent.name,
            "combiner": r.combiner.value,
            "polarity": [p.value for p in r.polarities],
        }
        if r.weights:
            entry["weights"] = list(r.weights)
        doc["rules"][n] = entry
    if cfg.outputs is not None:
        doc["outputs"] = cfg.outputs
    return doc

