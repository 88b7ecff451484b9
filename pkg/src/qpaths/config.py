"""Run-configuration schema shared by every CLI subcommand.

One JSON document describes either a finite model (start sequence plus a
weight q) or a scaled model (start-point density plus a base weight), along
with task parameters such as branch selection, sample counts and seeds.
Validation collects every violation before failing so a bad file is fixed
in one pass.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from .errors import ConfigError, InvalidArgument
from .exact import StartSequence
from .profile import StartDensity

Weight = Union[Fraction, float]

_TASK_KEYS = {
    "branch",
    "samples",
    "sweeps",
    "seed",
    "tolerance",
    "t_values",
    "out",
}


@dataclass(frozen=True)
class ModelConfig:
    """Validated model plus task parameters for one CLI invocation."""

    kind: str  # "finite" or "scaled"
    sequence: Optional[StartSequence] = None
    q: Optional[Weight] = None
    density: Optional[StartDensity] = None
    base: Optional[float] = None
    branch: str = "all"
    samples: int = 400
    sweeps: int = 100_000
    seed: int = 0
    tolerance: float = 1e-10
    t_values: tuple[float, ...] = ()
    out: Optional[str] = None


def _parse_weight(value: Any, problems: list[str]) -> Optional[Weight]:
    """Accept an integer, decimal, "num/den" string, or {base, n} pair."""
    if isinstance(value, bool):
        problems.append("model.finite.q: expected a number, fraction or {base, n}")
        return None
    if isinstance(value, int):
        if value <= 0:
            problems.append(f"model.finite.q: must be positive, got {value}")
            return None
        return Fraction(value)
    if isinstance(value, float):
        if not (value > 0.0 and math.isfinite(value)):
            problems.append(f"model.finite.q: must be positive and finite, got {value}")
            return None
        # repr() is the shortest decimal that round-trips, so the literal
        # written in the file is recovered exactly.
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            q = Fraction(value)
        except (ValueError, ZeroDivisionError):
            problems.append(f"model.finite.q: cannot parse fraction {value!r}")
            return None
        if q <= 0:
            problems.append(f"model.finite.q: must be positive, got {value!r}")
            return None
        return q
    if isinstance(value, dict):
        extra = set(value) - {"base", "n"}
        if extra:
            problems.append(
                f"model.finite.q: unknown keys {sorted(extra)} in the base/n form"
            )
        base = value.get("base")
        n = value.get("n")
        ok = True
        if not isinstance(base, (int, float)) or isinstance(base, bool) or not (
            base > 0 and math.isfinite(base)
        ):
            problems.append(f"model.finite.q.base: must be a positive number, got {base!r}")
            ok = False
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            problems.append(f"model.finite.q.n: must be a positive integer, got {n!r}")
            ok = False
        return float(base) ** (1.0 / n) if ok else None
    problems.append(f"model.finite.q: unsupported value {value!r}")
    return None


def _parse_finite(node: Any, problems: list[str]):
    if not isinstance(node, dict):
        problems.append("model.finite: expected an object")
        return None, None
    extra = set(node) - {"sequence", "q"}
    if extra:
        problems.append(f"model.finite: unknown keys {sorted(extra)}")
    seq = None
    raw = node.get("sequence")
    if not isinstance(raw, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in raw
    ):
        problems.append("model.finite.sequence: expected a list of integers")
    else:
        try:
            seq = StartSequence(raw)
        except InvalidArgument as exc:
            problems.append(f"model.finite.sequence: {exc}")
    q = None
    if "q" not in node:
        problems.append("model.finite.q: missing")
    else:
        q = _parse_weight(node["q"], problems)
    return seq, q


def _pair_list(node: Any, label: str, problems: list[str]) -> Optional[list[tuple[float, float]]]:
    if not isinstance(node, list):
        problems.append(f"{label}: expected a list of [number, number] pairs")
        return None
    pairs = []
    for i, item in enumerate(node):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)
        ):
            problems.append(f"{label}[{i}]: expected a [number, number] pair")
            return None
        pairs.append((float(item[0]), float(item[1])))
    return pairs


def _parse_scaled(node: Any, problems: list[str]):
    if not isinstance(node, dict):
        problems.append("model.scaled: expected an object")
        return None, None
    extra = set(node) - {"segments", "jumps", "base"}
    if extra:
        problems.append(f"model.scaled: unknown keys {sorted(extra)}")
    segments = _pair_list(node.get("segments"), "model.scaled.segments", problems)
    jumps: Optional[list[tuple[float, float]]] = []
    if "jumps" in node:
        jumps = _pair_list(node["jumps"], "model.scaled.jumps", problems)
    density = None
    if segments is not None and jumps is not None:
        try:
            density = StartDensity(segments, jumps=jumps)
        except InvalidArgument as exc:
            # The density constructor reports every problem in one message.
            problems.extend(f"model.scaled: {part}" for part in str(exc).split("; "))
    base = node.get("base")
    if "base" not in node:
        problems.append("model.scaled.base: missing")
        base = None
    elif (
        not isinstance(base, (int, float))
        or isinstance(base, bool)
        or not (base > 0 and math.isfinite(base))
    ):
        problems.append(f"model.scaled.base: must be a positive number, got {base!r}")
        base = None
    elif base == 1.0:
        problems.append("model.scaled.base: weight 1 is the unweighted model, not supported")
        base = None
    else:
        base = float(base)
    return density, base


def _parse_task(node: Any, problems: list[str]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if node is None:
        return out
    if not isinstance(node, dict):
        problems.append("task: expected an object")
        return out
    extra = set(node) - _TASK_KEYS
    if extra:
        problems.append(f"task: unknown keys {sorted(extra)}")

    if "branch" in node:
        branch = node["branch"]
        ok = branch in ("all", "right", "left")
        if not ok and isinstance(branch, str) and branch.startswith("window:"):
            ok = branch[len("window:"):].isdigit()
        if ok:
            out["branch"] = branch
        else:
            problems.append(
                f"task.branch: expected all|right|left|window:<index>, got {branch!r}"
            )
    for key, minimum in (("samples", 2), ("sweeps", 1), ("seed", 0)):
        if key in node:
            v = node[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
                problems.append(f"task.{key}: expected an integer >= {minimum}, got {v!r}")
            else:
                out[key] = v
    if "tolerance" in node:
        v = node["tolerance"]
        if (
            not isinstance(v, (int, float))
            or isinstance(v, bool)
            or not (v > 0 and math.isfinite(v))
        ):
            problems.append(f"task.tolerance: expected a positive number, got {v!r}")
        else:
            out["tolerance"] = float(v)
    if "t_values" in node:
        v = node["t_values"]
        if not isinstance(v, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)
            for x in v
        ):
            problems.append("task.t_values: expected a list of finite numbers")
        else:
            out["t_values"] = tuple(float(x) for x in v)
    if "out" in node:
        v = node["out"]
        if not isinstance(v, str) or not v:
            problems.append(f"task.out: expected a non-empty string, got {v!r}")
        else:
            out["out"] = v
    return out


def parse_config(text: str) -> ModelConfig:
    """Parse and validate a JSON configuration document.

    Raises ConfigError carrying the complete list of violations; nothing is
    reported until the whole document has been checked.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            [f"line {exc.lineno} column {exc.colno}: {exc.msg}"]
        ) from None

    problems: list[str] = []
    if not isinstance(doc, dict):
        raise ConfigError(["top level: expected an object"])
    extra = set(doc) - {"model", "task"}
    if extra:
        problems.append(f"top level: unknown keys {sorted(extra)}")

    model = doc.get("model")
    kind = None
    seq = q = density = base = None
    if not isinstance(model, dict):
        problems.append("model: missing or not an object")
    else:
        extra = set(model) - {"finite", "scaled"}
        if extra:
            problems.append(f"model: unknown keys {sorted(extra)}")
        has_finite = "finite" in model
        has_scaled = "scaled" in model
        if has_finite == has_scaled:
            problems.append("model: exactly one of finite/scaled must be present")
        elif has_finite:
            kind = "finite"
            seq, q = _parse_finite(model["finite"], problems)
        else:
            kind = "scaled"
            density, base = _parse_scaled(model["scaled"], problems)

    task = _parse_task(doc.get("task"), problems)
    if problems:
        raise ConfigError(problems)
    assert kind is not None
    return ModelConfig(
        kind=kind, sequence=seq, q=q, density=density, base=base, **task
    )


def load_config(path: str) -> ModelConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
