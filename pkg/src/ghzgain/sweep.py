"""Batch evaluation of the gain over one- and two-dimensional grids.

The gain depends on three variables: the two overhead ratios
x_ent = tau_tilde_ent/t_c and x_sep = tau_tilde_sep/t_c, and the particle
number n.  A sweep fixes one (or two) of them and grids the rest.  Output
is a deterministic table: same config, byte-identical file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .bath import BathModel, coherence_time
from .errors import InfeasibleTimingError, ValidationError
from .gain import gain

__all__ = [
    "AXIS_NAMES",
    "CSV_COLUMNS",
    "format_sig",
    "AxisSpec",
    "SweepConfig",
    "SweepRow",
    "load_config",
    "config_from_dict",
    "run_sweep",
    "rows_to_csv",
    "rows_to_json",
    "save_rows",
]

AXIS_NAMES = ("x_ent", "x_sep", "n")
CSV_COLUMNS = ("x_ent", "x_sep", "n", "r", "tau_opt_sep", "tau_opt_ent",
               "f_sep", "f_ent", "feasible")


def format_sig(value: float) -> str:
    """Fixed 12-significant-digit rendering used for every numeric output."""
    return format(float(value), "#.12g")


@dataclass(frozen=True)
class AxisSpec:
    """One swept variable: endpoints, point count and spacing."""

    name: str
    minimum: float
    maximum: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValidationError(
                f"unknown axis {self.name!r} (expected one of: {', '.join(AXIS_NAMES)})"
            )
        if self.points < 2:
            raise ValidationError(f"axis '{self.name}': points must be >= 2")
        if not self.maximum > self.minimum:
            raise ValidationError(f"axis '{self.name}': max must exceed min")
        if self.spacing not in ("linear", "log"):
            raise ValidationError(
                f"axis '{self.name}': spacing must be 'linear' or 'log'"
            )
        if self.spacing == "log" and not self.minimum > 0.0:
            raise ValidationError(f"axis '{self.name}': log spacing needs min > 0")
        if self.minimum < 0.0:
            raise ValidationError(f"axis '{self.name}': values must be non-negative")
        if self.name == "n" and self.minimum < 1.0:
            raise ValidationError("axis 'n': particle counts start at 1")

    def values(self) -> list[float]:
        span = self.points - 1
        if self.spacing == "linear":
            step = (self.maximum - self.minimum) / span
            vals = [self.minimum + i * step for i in range(self.points)]
        else:
            lo, hi = math.log(self.minimum), math.log(self.maximum)
            step = (hi - lo) / span
            vals = [math.exp(lo + i * step) for i in range(self.points)]
        vals[-1] = self.maximum
        return vals


@dataclass(frozen=True)
class SweepConfig:
    """Model, one or two axes, fixed values for the rest, output target."""

    model: BathModel
    axes: tuple[AxisSpec, ...]
    fixed: dict
    output_format: str
    output_path: str

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValidationError("config needs one or two axes")
        axis_names = [a.name for a in self.axes]
        if len(set(axis_names)) != len(axis_names):
            raise ValidationError("axes must sweep distinct variables")
        expected_fixed = set(AXIS_NAMES) - set(axis_names)
        if set(self.fixed) != expected_fixed:
            raise ValidationError(
                f"fixed values must cover exactly {sorted(expected_fixed)}, "
                f"got {sorted(self.fixed)}"
            )
        for name, value in self.fixed.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"fixed.{name} must be a number")
            if name == "n":
                if int(value) != value or value < 1:
                    raise ValidationError("fixed.n must be a positive integer")
            elif value < 0.0:
                raise ValidationError(f"fixed.{name} must be non-negative")
        if self.output_format not in ("csv", "json"):
            raise ValidationError("output.format must be 'csv' or 'json'")
        if not self.output_path:
            raise ValidationError("output.path must be a non-empty string")


@dataclass(frozen=True)
class SweepRow:
    """One grid point; the value fields are None when infeasible."""

    x_ent: float
    x_sep: float
    n: int
    r: float | None
    tau_opt_sep: float | None
    tau_opt_ent: float | None
    f_sep: float | None
    f_ent: float | None
    feasible: bool


def _axis_from_dict(name: str, data: dict) -> AxisSpec:
    if not isinstance(data, dict):
        raise ValidationError(f"axes.{name} must be an object")
    unknown = set(data) - {"min", "max", "points", "spacing"}
    if unknown:
        raise ValidationError(f"axes.{name}: unknown fields {sorted(unknown)}")
    for field in ("min", "max", "points"):
        if field not in data:
            raise ValidationError(f"axes.{name} is missing field '{field}'")
        if not isinstance(data[field], (int, float)) or isinstance(data[field], bool):
            raise ValidationError(f"axes.{name}.{field} must be a number")
    points = data["points"]
    if int(points) != points:
        raise ValidationError(f"axes.{name}.points must be an integer")
    return AxisSpec(
        name=name,
        minimum=float(data["min"]),
        maximum=float(data["max"]),
        points=int(points),
        spacing=data.get("spacing", "linear"),
    )


def config_from_dict(data: dict) -> SweepConfig:
    if not isinstance(data, dict):
        raise ValidationError("sweep config must be a JSON object")
    unknown = set(data) - {"model", "axes", "fixed", "output"}
    if unknown:
        raise ValidationError(f"unknown top-level fields {sorted(unknown)}")
    for field in ("model", "axes", "output"):
        if field not in data:
            raise ValidationError(f"config is missing field '{field}'")
    model = BathModel.from_dict(data["model"])
    if not isinstance(data["axes"], dict) or not data["axes"]:
        raise ValidationError("axes must be a non-empty object")
    axes = tuple(_axis_from_dict(name, spec) for name, spec in data["axes"].items())
    fixed = data.get("fixed", {})
    if not isinstance(fixed, dict):
        raise ValidationError("fixed must be an object")
    output = data["output"]
    if not isinstance(output, dict):
        raise ValidationError("output must be an object")
    if "format" not in output or "path" not in output:
        raise ValidationError("output needs fields 'format' and 'path'")
    return SweepConfig(
        model=model,
        axes=axes,
        fixed=dict(fixed),
        output_format=output["format"],
        output_path=str(output["path"]),
    )


def load_config(path: str) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(data)


def _evaluate_point(model: BathModel, t_c: float, x_ent: float, x_sep: float,
                    n: int) -> SweepRow:
    try:
        result = gain(model, n, x_sep * t_c, x_ent * t_c)
    except InfeasibleTimingError:
        return SweepRow(x_ent, x_sep, n, None, None, None, None, None, False)
    return SweepRow(
        x_ent, x_sep, n,
        result.r, result.tau_opt_sep, result.tau_opt_ent,
        result.f_sep, result.f_ent, True,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate the gain on the configured grid, row-major in axis order.

    Infeasible points (isolated probe with overhead >= t_c) become rows
    with feasible=False instead of aborting the sweep.
    """
    t_c = coherence_time(config.model)
    grids = [axis.values() for axis in config.axes]
    if len(grids) == 1:
        combos = [(v,) for v in grids[0]]
    else:
        combos = [(v0, v1) for v0 in grids[0] for v1 in grids[1]]
    names = [axis.name for axis in config.axes]
    rows = []
    for combo in combos:
        point = dict(config.fixed)
        point.update(zip(names, combo))
        n = max(1, int(round(point["n"])))
        rows.append(
            _evaluate_point(config.model, t_c, float(point["x_ent"]),
                            float(point["x_sep"]), n)
        )
    return rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format_sig(value)


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_csv_cell(getattr(row, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _json_cell(value):
    if value is None or isinstance(value, (bool, int)):
        return value
    return float(format_sig(value))


def rows_to_json(rows: list[SweepRow]) -> str:
    payload = [
        {col: _json_cell(getattr(row, col)) for col in CSV_COLUMNS} for row in rows
    ]
    return json.dumps(payload, indent=1) + "\n"


def save_rows(rows: list[SweepRow], config: SweepConfig) -> None:
    text = rows_to_csv(rows) if config.output_format == "csv" else rows_to_json(rows)
    with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
