"""Command-line sweeps and figure presets.

Examples::

    ris-sop --axis avg_snr_d_db --values 0:160:10 --methods closedform,montecarlo --out sweep.csv
    ris-sop --figure fig4 --methods closedform,quadrature --svg
    ris-sop --config sweep.json --set scenario=own_ris --set l_eves=4

Every row of the CSV is one ``(curve, axis value, method)`` triple with
columns ``curve, axis, value, method, sop, uncertainty, wall_time_ms,
status``. Rows are written in a fixed order, and ``wall_time_ms`` is only
filled with ``--timing`` so that repeated runs give byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .config import Case, Scenario, SystemConfig
from .errors import ParameterDomainError, RisSopError
from .montecarlo import Mode, estimate_sop
from .sop import Method, SopEstimate, evaluate

__all__ = ["SweepSpec", "FigurePreset", "FIGURES", "CSV_COLUMNS", "run_sweep", "reproduce_figure", "write_csv", "main"]

log = logging.getLogger(__name__)

CSV_COLUMNS = ("curve", "axis", "value", "method", "sop", "uncertainty", "wall_time_ms", "status")
OUTPUT_DIR_ENV = "RISSOP_OUTPUT_DIR"
DEFAULT_GRID = tuple(float(v) for v in range(0, 161, 10))
_CONFIG_FIELDS = {f.name for f in dataclasses.fields(SystemConfig)}
_DB_AXES = {"avg_snr_d_db", "avg_snr_e_db", "avg_snr_ris_e_db", "avg_snr_i_db"}


@dataclass
class SweepSpec:
    """One or more curves swept over a common axis.

    ``curves`` maps a label to parameter overrides applied on top of
    ``base``; a single unnamed curve is used when it is empty.
    """

    base: SystemConfig = field(default_factory=SystemConfig)
    axis: str = "avg_snr_d_db"
    values: tuple[float, ...] = DEFAULT_GRID
    methods: tuple[Method, ...] = (Method.CLOSED_FORM, Method.QUADRATURE)
    curves: dict[str, dict[str, Any]] = field(default_factory=dict)
    seed: int = 0
    trials: int = 1_000_000
    mc_mode: Mode = Mode.LOWER_BOUND
    timing: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.axis not in _CONFIG_FIELDS and self.axis not in _DB_AXES:
            raise ParameterDomainError(f"axis {self.axis!r} is not a SystemConfig field")
        if len(self.values) == 0:
            raise ParameterDomainError("sweep needs at least one axis value")
        self.values = tuple(self.values)
        self.methods = tuple(Method(m) for m in self.methods)
        self.mc_mode = Mode(self.mc_mode)
        for label, over in self.curves.items():
            self.base.with_(**over)  # validates names early
        self.point_configs()  # validates values early

    def curve_items(self) -> list[tuple[str, dict[str, Any]]]:
        return list(self.curves.items()) if self.curves else [("", {})]

    def point_configs(self) -> list[tuple[str, float, SystemConfig]]:
        out = []
        for label, over in self.curve_items():
            cfg = self.base.with_(**over)
            for v in self.values:
                out.append((label, v, cfg.with_(**{self.axis: _axis_value(self.axis, v)})))
        return out


def _axis_value(axis: str, v: float):
    if axis in ("n_d", "n_e", "l_eves", "m_interferers"):
        if v != int(v):
            raise ParameterDomainError(f"{axis} values must be integers, got {v}")
        return int(v)
    if axis in ("scenario", "case"):
        return v
    return float(v)


@dataclass(frozen=True)
class FigurePreset:
    """Curve definitions for one of the reference figures (all swept over ``avg_snr_d``)."""

    id: str
    title: str
    curves: dict[str, dict[str, Any]]
    base: dict[str, Any] = field(default_factory=dict)


FIGURES: dict[str, FigurePreset] = {
    "fig1": FigurePreset(
        "fig1",
        "SOP vs avg_snr_d for several N_E, M = 20",
        {f"N_E={n}": {"n_e": n} for n in (2, 10, 20)},
        {"m_interferers": 20, "scenario": Scenario.OWN_RIS, "case": Case.COLLUDING},
    ),
    "fig2": FigurePreset(
        "fig2",
        "SOP vs avg_snr_d for several M and avg_snr_e",
        {
            f"M={m},avg_snr_e={e}dB": {"m_interferers": m, "avg_snr_e_db": e}
            for m in (2, 4)
            for e in (1.0, 5.0)
        },
        {"scenario": Scenario.DIRECT, "case": Case.COLLUDING},
    ),
    "fig3": FigurePreset(
        "fig3",
        "SOP vs avg_snr_d for several N_d, N_E = 20",
        {
            f"N_d={n},{sc.value}": {"n_d": n, "scenario": sc}
            for sc in (Scenario.DIRECT, Scenario.OWN_RIS)
            for n in (2, 10, 20)
        },
        {"n_e": 20, "case": Case.COLLUDING},
    ),
    "fig4": FigurePreset(
        "fig4",
        "SOP vs avg_snr_d for several L, colluding and non-colluding",
        {f"L={L},{ca.value}": {"l_eves": L, "case": ca} for L in (2, 4) for ca in (Case.COLLUDING, Case.NON_COLLUDING)},
        {"scenario": Scenario.DIRECT},
    ),
}


# ---------------------------------------------------------------------------
# evaluation


def _evaluate_point(task: tuple) -> dict[str, Any]:
    label, axis, value, cfg, method, seed, trials, mc_mode, point_index = task
    row = {"curve": label, "axis": axis, "value": value, "method": method.value}
    t0 = time.perf_counter()
    try:
        if method is Method.MONTE_CARLO:
            # same seed for every curve at a given point: common random numbers
            est: SopEstimate = estimate_sop(cfg, trials, mc_mode, seed=[seed, point_index])
        else:
            est = evaluate(cfg, method)
        row["sop"] = float(est.value)
        row["uncertainty"] = float(est.uncertainty)
        row["status"] = "flagged" if est.flagged else "ok"
    except RisSopError as exc:
        row["sop"] = None
        row["uncertainty"] = None
        row["status"] = f"error:{type(exc).__name__}: {exc}"
    row["wall_time_ms"] = (time.perf_counter() - t0) * 1e3
    return row


def run_sweep(spec: SweepSpec) -> list[dict[str, Any]]:
    """Evaluate every ``(curve, value, method)``; rows come back in a fixed order."""
    tasks = []
    n_values = len(spec.values)
    for i, (label, value, cfg) in enumerate(spec.point_configs()):
        for method in spec.methods:
            tasks.append((label, spec.axis, value, cfg, method, spec.seed, spec.trials, spec.mc_mode, i % n_values))
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_evaluate_point, tasks))
    else:
        rows = [_evaluate_point(t) for t in tasks]
    if not spec.timing:
        for r in rows:
            r["wall_time_ms"] = None
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        v = float(v)
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def write_csv(rows: list[dict[str, Any]], out) -> None:
    """RFC 4180 CSV (CRLF line ends, minimal quoting) to a path or text stream."""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
        return
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in CSV_COLUMNS])


def read_csv(path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def write_svg(rows: list[dict[str, Any]], path, title: str = "") -> None:
    """Log-scale SOP plot of every ``(curve, method)`` series. Needs matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    series: dict[tuple[str, str], list[tuple[float, float]]] = {}
    for r in rows:
        if r["sop"] is not None and r["sop"] > 0:
            series.setdefault((r["curve"], r["method"]), []).append((float(r["value"]), r["sop"]))
    styles = {"closedform": "-", "quadrature": "--", "montecarlo": "o", "asymptotic": ":"}
    for (curve, method), pts in series.items():
        x, y = zip(*pts)
        ax.plot(x, y, styles.get(method, "-"), label=f"{curve} {method}".strip(), markerfacecolor="none")
    ax.set_yscale("log")
    ax.set_ylim(bottom=1e-8, top=2.0)
    ax.set_xlabel(rows[0]["axis"] if rows else "")
    ax.set_ylabel("SOP")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def reproduce_figure(
    fig_id: str,
    methods=(Method.CLOSED_FORM, Method.QUADRATURE),
    *,
    values=DEFAULT_GRID,
    seed: int = 0,
    trials: int = 1_000_000,
    jobs: int = 1,
    timing: bool = False,
    out=None,
    svg=None,
) -> list[dict[str, Any]]:
    """Rows of one figure preset; optionally written to ``out`` and drawn to ``svg``."""
    if fig_id not in FIGURES:
        raise ParameterDomainError(f"unknown figure {fig_id!r}; choose from {sorted(FIGURES)}")
    preset = FIGURES[fig_id]
    spec = SweepSpec(
        base=SystemConfig().with_(**preset.base),
        axis="avg_snr_d_db",
        values=tuple(values),
        methods=tuple(methods),
        curves=preset.curves,
        seed=seed,
        trials=trials,
        timing=timing,
        jobs=jobs,
    )
    rows = run_sweep(spec)
    if out is not None:
        write_csv(rows, out)
    if svg is not None:
        write_svg(rows, svg, preset.title)
    return rows


# ---------------------------------------------------------------------------
# argument handling


def _parse_values(text: str) -> tuple[float, ...]:
    """``"0:160:10"`` (inclusive) or ``"1,2,5"``."""
    if ":" in text:
        lo, hi, step = (float(x) for x in text.split(":"))
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return tuple(float(lo + i * step) for i in range(n))
    return tuple(float(x) for x in text.split(",") if x.strip())


def _parse_methods(text: str) -> tuple[Method, ...]:
    aliases = {m.value: m for m in Method} | {m.name.lower(): m for m in Method} | {
        "mc": Method.MONTE_CARLO, "cf": Method.CLOSED_FORM, "quad": Method.QUADRATURE, "asym": Method.ASYMPTOTIC
    }
    out = []
    for name in text.split(","):
        key = name.strip().lower().replace("-", "_")
        if key.replace("_", "") in aliases:
            key = key.replace("_", "")
        if key not in aliases:
            raise ParameterDomainError(f"unknown method {name!r}; choose from {[m.value for m in Method]}")
        out.append(aliases[key])
    return tuple(out)


def _parse_set(items: list[str]) -> dict[str, Any]:
    out = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ParameterDomainError(f"--set expects key=value, got {item!r}")
        try:
            out[key.strip()] = json.loads(raw)
        except json.JSONDecodeError:
            out[key.strip()] = raw.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ris-sop", description="Secrecy outage sweeps for RIS links with interference.")
    p.add_argument("--config", type=Path, help="JSON file with SystemConfig fields and/or sweep keys")
    p.add_argument("--figure", choices=sorted(FIGURES), help="reproduce a figure preset")
    p.add_argument("--axis", help="SystemConfig field to sweep (dB aliases such as avg_snr_d_db allowed)")
    p.add_argument("--values", help="axis values, 'start:stop:step' (inclusive) or comma list")
    p.add_argument("--methods", help="comma list of closedform, quadrature, montecarlo, asymptotic")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a SystemConfig field")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--mc-mode", choices=[m.value for m in Mode], help="Monte-Carlo outage event")
    p.add_argument("--out", help=f"CSV path, '-' for stdout (default: ${OUTPUT_DIR_ENV} or cwd)")
    p.add_argument("--svg", nargs="?", const="", default=None, help="also draw an SVG (optional path)")
    p.add_argument("--timing", action="store_true", help="record wall_time_ms (makes output non-reproducible)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load_config(path: Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ParameterDomainError("config file must hold a JSON object")
    return data


def _resolve_out(out: str | None, default_name: str) -> str:
    if out is not None:
        return out
    return str(Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        file_cfg = _load_config(args.config)
        sweep_keys = {"axis", "values", "methods", "seed", "trials", "mc_mode", "curves", "figure", "jobs", "base"}
        base_dict = dict(file_cfg.get("base", {}))
        base_dict.update({k: v for k, v in file_cfg.items() if k not in sweep_keys})
        base_dict.update(_parse_set(args.set))

        figure = args.figure or file_cfg.get("figure")
        methods = _parse_methods(args.methods) if args.methods else tuple(
            _parse_methods(",".join(file_cfg["methods"])) if "methods" in file_cfg else (Method.CLOSED_FORM, Method.QUADRATURE)
        )
        values = _parse_values(args.values) if args.values else tuple(float(v) for v in file_cfg.get("values", DEFAULT_GRID))
        seed = args.seed if args.seed is not None else int(file_cfg.get("seed", 0))
        trials = args.trials if args.trials is not None else int(file_cfg.get("trials", 1_000_000))
        mc_mode = Mode(args.mc_mode or file_cfg.get("mc_mode", Mode.LOWER_BOUND.value))

        if figure:
            if figure not in FIGURES:
                raise ParameterDomainError(f"unknown figure {figure!r}")
            preset = FIGURES[figure]
            spec = SweepSpec(
                base=SystemConfig().with_(**{**preset.base, **base_dict}),
                axis="avg_snr_d_db",
                values=values,
                methods=methods,
                curves=preset.curves,
                seed=seed,
                trials=trials,
                mc_mode=mc_mode,
                timing=args.timing,
                jobs=args.jobs,
            )
            name, title = figure, preset.title
        else:
            spec = SweepSpec(
                base=SystemConfig.from_dict(base_dict),
                axis=args.axis or file_cfg.get("axis", "avg_snr_d_db"),
                values=values,
                methods=methods,
                curves=file_cfg.get("curves", {}),
                seed=seed,
                trials=trials,
                mc_mode=mc_mode,
                timing=args.timing,
                jobs=args.jobs,
            )
            name, title = "sweep", f"SOP vs {spec.axis}"
        rows = run_sweep(spec)
    except (RisSopError, ValueError, OSError) as exc:
        print(f"ris-sop: error: {exc}", file=sys.stderr)
        return 2

    out = _resolve_out(args.out, f"{name}.csv")
    if out == "-":
        buf = io.StringIO()
        write_csv(rows, buf)
        sys.stdout.write(buf.getvalue())
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        write_csv(rows, out)
        log.info("wrote %d rows to %s", len(rows), out)
    if args.svg is not None:
        svg = args.svg or (str(Path(out).with_suffix(".svg")) if out != "-" else _resolve_out(None, f"{name}.svg"))
        write_svg(rows, svg, title)
        log.info("wrote %s", svg)

    failed = [r for r in rows if r["status"].startswith("error")]
    for r in failed:
        log.warning("%s %s=%s %s: %s", r["curve"], r["axis"], r["value"], r["method"], r["status"])
    return 1 if rows and len(failed) == len(rows) else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
