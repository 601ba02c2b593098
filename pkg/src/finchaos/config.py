"""Run configuration: JSON files, named presets, dotted-key overrides.

A configuration is a JSON object validated against a strict schema before
any computation: unknown keys are rejected, and every diagnostic names the
offending key.  The engine is deterministic, so there is no seed field.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

from . import models
from .sweep import COMPONENTS, TARGETS


class ConfigError(ValueError):
    """Malformed or inconsistent configuration (CLI exit code 1)."""


PRESETS = {
    "paper-sec4": {
        "model": "5d",
        "params": {"a": 0.8, "b": 0.6, "c": 1.0, "d": 2.0, "k": 2.0, "p": 1.0},
        "orders": [0.3, 0.5, 0.6, 0.24, 0.24],
        "x0": [0.4, 0.6, 0.8, 0.3, 0.4],
        "grid": {"h": 0.002, "n_steps": 200000, "transient": 10000},
    },
}

TOP_KEYS = {"model", "params", "orders", "x0", "grid", "guard", "workers", "experiment", "output"}
PARAM_KEYS = {"a", "b", "c", "d", "k", "p", "m1", "m2", "m3"}
GRID_KEYS = {"h", "n_steps", "transient"}
OUTPUT_KEYS = {"csv", "svg"}
EXPERIMENT_KEYS = {
    "simulate": set(),
    "lyapunov": {"n_iter", "reorth_every", "eps"},
    "scan": {
        "target",
        "lo",
        "hi",
        "grid_points",
        "n_iter",
        "reorth_every",
        "eps",
        "sample_transient",
        "n_samples",
        "component",
    },
    "attractor": {"projection"},
}
EXPERIMENT_KEYS["bifurcate"] = EXPERIMENT_KEYS["scan"]

# which experiment kinds each CLI command may execute
COMMAND_KINDS = {
    "simulate": ("simulate",),
    "lyapunov": ("lyapunov",),
    "scan": ("scan", "bifurcate"),
    "attractor": ("attractor",),
}


@dataclass
class RunConfig:
    """Fully validated settings for one CLI invocation."""

    model: str
    params: models.FinanceParams
    orders: Tuple[float, ...]
    x0: Tuple[float, ...]
    h: float
    n_steps: int
    transient: int
    guard: float
    workers: int
    experiment: dict
    csv_path: Optional[str]
    svg_path: Optional[str]


def _require_dict(value, key: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be an object, got {value!r}")
    return value


def _reject_unknown(node: dict, allowed: set, prefix: str = "") -> None:
    for key in node:
        if key not in allowed:
            full = f"{prefix}{key}"
            raise ConfigError(f"unknown key '{full}'")


def _number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{key}' must be a number, got {value!r}")
    return float(value)


def _integer(value, key: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"'{key}' must be >= {minimum}, got {value}")
    return value


def _string(value, key: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"'{key}' must be a string, got {value!r}")
    return value


def _number_list(value, key: str, length: int) -> Tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"'{key}' must be a list of {length} numbers, got {value!r}")
    if len(value) != length:
        raise ConfigError(f"'{key}' must have length {length}, got {len(value)}")
    return tuple(_number(v, f"{key}[{i}]") for i, v in enumerate(value))


def parse_override(text: str) -> Tuple[str, object]:
    """Split 'dotted.key=value'; the value is parsed as JSON, else kept as a string."""
    key, sep, raw_value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"override must look like key=value, got '{text}'")
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value
    return key, value


def apply_override(raw: dict, key: str, value) -> None:
    """Set a dotted key in the raw tree, creating intermediate objects."""
    parts = key.split(".")
    node = raw
    for i, part in enumerate(parts[:-1]):
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(
                f"cannot override below '{'.'.join(parts[: i + 1])}': not an object"
            )
        node = child
    node[parts[-1]] = value


def _merge(base: dict, extra: dict) -> dict:
    """Recursive merge; extra wins, objects merge, everything else replaces."""
    out = dict(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _validate_experiment(raw: dict, command: str, dim: int, n_steps: int, transient: int) -> dict:
    node = _require_dict(raw.get("experiment", {}), "experiment")
    kinds = COMMAND_KINDS[command]
    kind = node.get("kind", kinds[0])
    kind = _string(kind, "experiment.kind")
    if kind not in EXPERIMENT_KEYS:
        raise ConfigError(f"'experiment.kind' must be one of {sorted(EXPERIMENT_KEYS)}, got '{kind}'")
    if kind not in kinds:
        raise ConfigError(
            f"experiment kind '{kind}' cannot run under command '{command}' "
            f"(expected one of {list(kinds)})"
        )
    _reject_unknown(node, EXPERIMENT_KEYS[kind] | {"kind"}, "experiment.")

    exp: dict = {"kind": kind}
    if kind == "lyapunov" or kind in ("scan", "bifurcate"):
        exp["n_iter"] = _integer(node.get("n_iter", 200000), "experiment.n_iter", 1)
        exp["reorth_every"] = _integer(
            node.get("reorth_every", 1), "experiment.reorth_every", 1
        )
        eps = _number(node.get("eps", 0.01), "experiment.eps")
        if eps <= 0.0:
            raise ConfigError(f"'experiment.eps' must be positive, got {eps}")
        exp["eps"] = eps
    if kind in ("scan", "bifurcate"):
        for required in ("target", "lo", "hi"):
            if required not in node:
                raise ConfigError(f"'experiment.{required}' is required for a {kind} experiment")
        target = _string(node["target"], "experiment.target")
        if target not in TARGETS:
            raise ConfigError(
                f"'experiment.target' must be one of {list(TARGETS)}, got '{target}'"
            )
        if target.startswith("alpha") and int(target[5:]) > dim:
            raise ConfigError(
                f"'experiment.target' {target} exceeds the model dimension {dim}"
            )
        exp["target"] = target
        exp["lo"] = _number(node["lo"], "experiment.lo")
        exp["hi"] = _number(node["hi"], "experiment.hi")
        if not exp["lo"] < exp["hi"]:
            raise ConfigError(
                f"'experiment.lo' must be below 'experiment.hi', got [{exp['lo']}, {exp['hi']}]"
            )
        exp["grid_points"] = _integer(node.get("grid_points", 97), "experiment.grid_points", 2)
        exp["sample_transient"] = _integer(
            node.get("sample_transient", 10000), "experiment.sample_transient", 0
        )
        exp["n_samples"] = _integer(node.get("n_samples", 200), "experiment.n_samples", 1)
        component = _string(node.get("component", "u" if dim == 5 else "x"), "experiment.component")
        if len(component) != 1 or COMPONENTS.find(component) not in range(dim):
            raise ConfigError(
                f"'experiment.component' must be one of '{COMPONENTS[:dim]}', got '{component}'"
            )
        exp["component"] = component
    if kind == "attractor":
        if "projection" not in node:
            raise ConfigError("'experiment.projection' is required for an attractor experiment")
        proj = node["projection"]
        if not isinstance(proj, (list, tuple)) or len(proj) != 3:
            raise ConfigError(
                f"'experiment.projection' must list exactly 3 components, got {proj!r}"
            )
        for i, comp in enumerate(proj):
            comp = _string(comp, f"experiment.projection[{i}]")
            if len(comp) != 1 or COMPONENTS.find(comp) not in range(dim):
                raise ConfigError(
                    f"'experiment.projection[{i}]' must be one of '{COMPONENTS[:dim]}', got '{comp}'"
                )
        exp["projection"] = tuple(proj)
        if not transient < n_steps:
            raise ConfigError(
                f"'grid.transient' must be below 'grid.n_steps' for an attractor "
                f"experiment, got {transient} of {n_steps}"
            )
    return exp


def build_config(raw: dict, command: str) -> RunConfig:
    """Validate a raw config tree for a command and resolve all defaults."""
    if command not in COMMAND_KINDS:
        raise ConfigError(f"unknown command '{command}'")
    _require_dict(raw, "config")
    _reject_unknown(raw, TOP_KEYS)

    model = _string(raw.get("model", "5d"), "model")
    if model not in models.MODELS:
        raise ConfigError(f"'model' must be one of {sorted(models.MODELS)}, got '{model}'")
    dim = models.MODELS[model].dim

    params_node = _require_dict(raw.get("params", {}), "params")
    _reject_unknown(params_node, PARAM_KEYS, "params.")
    kwargs = {key: _number(value, f"params.{key}") for key, value in params_node.items()}
    try:
        params = models.FinanceParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from exc

    if "orders" not in raw:
        raise ConfigError("'orders' is required")
    orders = _number_list(raw["orders"], "orders", dim)
    for i, alpha in enumerate(orders):
        if not 0.0 < alpha <= 1.0:
            raise ConfigError(f"'orders[{i}]' must be in (0, 1], got {alpha}")

    if "x0" not in raw:
        raise ConfigError("'x0' is required")
    x0 = _number_list(raw["x0"], "x0", dim)

    grid_node = _require_dict(raw.get("grid", {}), "grid")
    _reject_unknown(grid_node, GRID_KEYS, "grid.")
    if "h" not in grid_node:
        raise ConfigError("'grid.h' is required")
    h = _number(grid_node["h"], "grid.h")
    if h <= 0.0:
        raise ConfigError(f"'grid.h' must be positive, got {h}")
    n_steps = _integer(grid_node.get("n_steps", 200000), "grid.n_steps", 1)
    transient = _integer(grid_node.get("transient", 10000), "grid.transient", 0)

    guard = _number(raw.get("guard", 1e8), "guard")
    if guard <= 0.0:
        raise ConfigError(f"'guard' must be positive, got {guard}")
    workers = _integer(raw.get("workers", 1), "workers", 1)

    experiment = _validate_experiment(raw, command, dim, n_steps, transient)

    output_node = _require_dict(raw.get("output", {}), "output")
    _reject_unknown(output_node, OUTPUT_KEYS, "output.")
    csv_path = output_node.get("csv")
    if csv_path is not None:
        csv_path = _string(csv_path, "output.csv")
    svg_path = output_node.get("svg")
    if svg_path is not None:
        svg_path = _string(svg_path, "output.svg")
    if csv_path is None:
        raise ConfigError("'output.csv' is required (or pass --output)")

    return RunConfig(
        model=model,
        params=params,
        orders=orders,
        x0=x0,
        h=h,
        n_steps=n_steps,
        transient=transient,
        guard=guard,
        workers=workers,
        experiment=experiment,
        csv_path=csv_path,
        svg_path=svg_path,
    )


def load_config(
    path: Optional[str],
    preset: Optional[str],
    overrides: Sequence[str],
    command: str,
    csv_path: Optional[str] = None,
    svg_path: Optional[str] = None,
    workers: Optional[int] = None,
) -> RunConfig:
    """Assemble and validate a config from preset, file, and overrides.

    Precedence, lowest to highest: preset, config file, --override flags,
    then the direct CLI flags (--output, --svg, --workers).  An unreadable
    or unparseable config file is a configuration error, not an I/O error.
    """
    raw: dict = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset '{preset}' (available: {sorted(PRESETS)})")
        raw = copy.deepcopy(PRESETS[preset])
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file '{path}': {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file '{path}' is not valid JSON: {exc}") from exc
        raw = _merge(raw, _require_dict(data, "config"))
    if not raw:
        raise ConfigError("no configuration given: pass a config file or --preset")
    for item in overrides:
        key, value = parse_override(item)
        apply_override(raw, key, value)
    if csv_path is not None:
        apply_override(raw, "output.csv", csv_path)
    if svg_path is not None:
        apply_override(raw, "output.svg", svg_path)
    if workers is not None:
        raw["workers"] = workers
    return build_config(raw, command)
