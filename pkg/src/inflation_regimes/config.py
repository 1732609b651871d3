"""JSON config files for single-good models and goods ladders.

Model config layout::

    {
      "pi": {"kind": "linear", "c0": -0.1, "cA": 0.08, "cM": 0.01},
      "r":  {"kind": "linear", "c0": 0.05, "cM": -0.003},
      "m_domain": {"lo": 0.1, "hi": 20.0},
      "grid": {"n_A": 21, "n_M": 41}          # optional
    }

Function sections take ``kind`` "linear", "loglinear" (coefficients c0, cA,
cM, omitted ones default to 0), or "expression" with a ``source`` string.
The ``r`` section is a function of M alone: cA, or a source mentioning A,
is rejected.

Ladder config layout::

    {
      "m_domain": {"lo": 0.1, "hi": 20.0},
      "grid": {"n_A": 21, "n_M": 41},          # optional
      "ordering_mode": "by_cost",              # by_cost | by_elasticity | both
      "goods": [
        {"name": "houses", "durability_rank": 1, "pi": {...}, "r": {...}},
        ...
      ]
    }
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .expr import ExpressionError
from .functions import Arity, FunctionKind, FunctionSpec
from .ladder import GoodSpec, OrderingMode
from .model import DEFAULT_GRID, ModelSpec

__all__ = [
    "ConfigError",
    "LadderConfig",
    "function_spec_from_config",
    "function_spec_to_config",
    "load_ladder_config",
    "load_model_spec",
    "model_spec_from_config",
    "model_spec_to_config",
    "save_model_spec",
]

_KINDS = {
    "linear": FunctionKind.LINEAR,
    "loglinear": FunctionKind.LOG_LINEAR,
    "expression": FunctionKind.EXPRESSION,
}


class ConfigError(ValueError):
    """Malformed or invalid configuration content. ``where`` names the
    offending key path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _section(data: dict, key: str, where: str) -> dict:
    try:
        value = data[key]
    except KeyError:
        raise ConfigError(where, f"missing section {key!r}") from None
    if not isinstance(value, dict):
        raise ConfigError(f"{where}.{key}" if where else key, "expected an object")
    return value


def _number(data: dict, key: str, where: str) -> float:
    try:
        value = data[key]
    except KeyError:
        raise ConfigError(where, f"missing value {key!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key}", "expected a number")
    return float(value)


def function_spec_from_config(data: dict, arity: Arity, where: str) -> FunctionSpec:
    if not isinstance(data, dict):
        raise ConfigError(where, "expected an object")
    kind_name = data.get("kind")
    if kind_name not in _KINDS:
        raise ConfigError(
            f"{where}.kind", f"unknown kind {kind_name!r}; expected one of {sorted(_KINDS)}"
        )
    kind = _KINDS[kind_name]
    try:
        if kind is FunctionKind.EXPRESSION:
            source = data.get("source")
            if not isinstance(source, str) or not source:
                raise ConfigError(f"{where}.source", "expression kind needs a source string")
            extras = set(data) - {"kind", "source"}
            if extras:
                raise ConfigError(where, f"unexpected keys {sorted(extras)}")
            return FunctionSpec.expression(source, arity)
        extras = set(data) - {"kind", "c0", "cA", "cM"}
        if extras:
            raise ConfigError(where, f"unexpected keys {sorted(extras)}")
        params = {k: _number(data, k, where) for k in ("c0", "cA", "cM") if k in data}
        return FunctionSpec(kind, arity, params)
    except (ValueError, ExpressionError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(where, str(exc)) from exc


def function_spec_to_config(spec: FunctionSpec) -> dict:
    if spec.kind is FunctionKind.EXPRESSION:
        return {"kind": "expression", "source": spec.expr_source}
    name = "linear" if spec.kind is FunctionKind.LINEAR else "loglinear"
    out: dict[str, Any] = {"kind": name}
    for key, value in spec.params.items():
        if value != 0.0 or key != "cA" or spec.arity is Arity.OF_AM:
            out[key] = value
    return out


def _grid_from(data: dict, where: str) -> tuple[int, int]:
    if "grid" not in data:
        return DEFAULT_GRID
    section = _section(data, "grid", where)
    n_a = _number(section, "n_A", f"{where}.grid" if where else "grid")
    n_m = _number(section, "n_M", f"{where}.grid" if where else "grid")
    if n_a != int(n_a) or n_m != int(n_m):
        raise ConfigError("grid", "n_A and n_M must be integers")
    return int(n_a), int(n_m)


def _m_domain_from(data: dict, where: str) -> tuple[float, float]:
    section = _section(data, "m_domain", where)
    prefix = f"{where}.m_domain" if where else "m_domain"
    return _number(section, "lo", prefix), _number(section, "hi", prefix)


def model_spec_from_config(data: dict) -> ModelSpec:
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    extras = set(data) - {"pi", "r", "m_domain", "grid", "description"}
    if extras:
        raise ConfigError("<root>", f"unexpected keys {sorted(extras)}")
    pi = function_spec_from_config(_section(data, "pi", "<root>"), Arity.OF_AM, "pi")
    r = function_spec_from_config(_section(data, "r", "<root>"), Arity.OF_M, "r")
    m_lo, m_hi = _m_domain_from(data, "")
    n_a, n_m = _grid_from(data, "")
    try:
        return ModelSpec(pi, r, m_lo, m_hi, n_a, n_m)
    except ValueError as exc:
        raise ConfigError("<root>", str(exc)) from exc


def model_spec_to_config(spec: ModelSpec) -> dict:
    return {
        "pi": function_spec_to_config(spec.pi),
        "r": function_spec_to_config(spec.r),
        "m_domain": {"lo": spec.m_lo, "hi": spec.m_hi},
        "grid": {"n_A": spec.n_A, "n_M": spec.n_M},
    }


def _load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_model_spec(path: str | Path) -> ModelSpec:
    return model_spec_from_config(_load_json(path))


def save_model_spec(spec: ModelSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_spec_to_config(spec), indent=2) + "\n", encoding="utf-8")


class LadderConfig:
    """Parsed ladder config: goods plus shared solver settings."""

    def __init__(
        self,
        goods: list[GoodSpec],
        m_domain: tuple[float, float],
        ordering_mode: OrderingMode,
        grid: tuple[int, int],
    ):
        self.goods = goods
        self.m_domain = m_domain
        self.ordering_mode = ordering_mode
        self.grid = grid


def load_ladder_config(path: str | Path) -> LadderConfig:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    extras = set(data) - {"m_domain", "grid", "ordering_mode", "goods", "description"}
    if extras:
        raise ConfigError("<root>", f"unexpected keys {sorted(extras)}")
    m_domain = _m_domain_from(data, "")
    grid = _grid_from(data, "")
    mode_name = data.get("ordering_mode", "by_cost")
    try:
        mode = OrderingMode(mode_name)
    except ValueError:
        raise ConfigError(
            "ordering_mode",
            f"unknown mode {mode_name!r}; expected one of {[m.value for m in OrderingMode]}",
        ) from None
    raw_goods = data.get("goods")
    if not isinstance(raw_goods, list) or not raw_goods:
        raise ConfigError("goods", "expected a non-empty list of goods")
    goods = []
    for idx, entry in enumerate(raw_goods):
        where = f"goods[{idx}]"
        if not isinstance(entry, dict):
            raise ConfigError(where, "expected an object")
        extras = set(entry) - {"name", "durability_rank", "pi", "r"}
        if extras:
            raise ConfigError(where, f"unexpected keys {sorted(extras)}")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise ConfigError(f"{where}.name", "expected a non-empty string")
        rank = _number(entry, "durability_rank", where)
        if rank != int(rank):
            raise ConfigError(f"{where}.durability_rank", "expected an integer")
        pi = function_spec_from_config(_section(entry, "pi", where), Arity.OF_AM, f"{where}.pi")
        r = function_spec_from_config(_section(entry, "r", where), Arity.OF_M, f"{where}.r")
        try:
            goods.append(GoodSpec(name, int(rank), pi, r))
        except ValueError as exc:
            raise ConfigError(where, str(exc)) from exc
    return LadderConfig(goods, m_domain, mode, grid)
