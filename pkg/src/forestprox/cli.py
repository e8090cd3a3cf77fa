"""Command-line interface.

Subcommands: compute, indices, update, series, verify.  Results go to
stdout in CSV sections or as one JSON object; diagnostics go to stderr.
Exit codes: 0 success, 1 rejected input, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import enumeration
from .accessibility import block_structure, forest_accessibility, forest_distance
from .documents import parse_any, to_graph
from .errors import ConfigError, ValidationError
from .graph import WeightedMultigraph, components, kirchhoff
from .indices import classical_indices, derivative_indices
from .series import series_partial_sum, weight_bound
from .updates import DEFAULT_REFRESH_INTERVAL, EdgeIncrement, UpdateChain

VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by all subcommands.

    A JSON config file may set any field; command-line flags win over
    the file, which wins over the defaults.
    """

    alpha: float = 1.0
    output_format: str = "csv"
    digits: int | None = None
    stochastic_tol: float = 1e-9
    zero_tol: float = 1e-12
    oracle_max_vertices: int = enumeration.MAX_ORACLE_VERTICES
    oracle_max_edges: int = enumeration.MAX_ORACLE_EDGES
    refresh_interval: int = DEFAULT_REFRESH_INTERVAL

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.digits is not None and not (1 <= self.digits <= 17):
            raise ConfigError(f"digits must lie in 1..17, got {self.digits}")
        if not self.stochastic_tol > 0.0 or not self.zero_tol > 0.0:
            raise ConfigError("tolerances must be positive")
        if self.oracle_max_vertices < 1 or self.oracle_max_edges < 0:
            raise ConfigError("oracle size guards must be positive")
        if self.refresh_interval < 0:
            raise ConfigError("refresh interval must be >= 0")


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**data)


def _merge_flags(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates: dict[str, Any] = {}
    for name in (f.name for f in fields(RunConfig)):
        value = getattr(args, name, None)
        if value is not None:
            updates[name] = value
    return replace(config, **updates) if updates else config


def format_value(value: Any, digits: int | None = None) -> str:
    """Fixed textual form; floats default to 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits or 17}g}"
    return str(value)


class _CsvWriter:
    def __init__(self, out, digits: int | None):
        self.out = out
        self.digits = digits

    def scalar(self, name: str, value: Any) -> None:
        self.out.write(f"# {name}\n{format_value(value, self.digits)}\n")

    def matrix(self, name: str, labels: Sequence[str], m: np.ndarray) -> None:
        self.out.write(f"# {name}\n")
        self.out.write("," + ",".join(labels) + "\n")
        for label, row in zip(labels, m):
            cells = ",".join(format_value(x, self.digits) for x in row)
            self.out.write(f"{label},{cells}\n")

    def table(self, name: str, labels: Sequence[str], cols: dict[str, np.ndarray]) -> None:
        self.out.write(f"# {name}\n")
        self.out.write("vertex," + ",".join(cols) + "\n")
        for i, label in enumerate(labels):
            cells = ",".join(format_value(col[i], self.digits) for col in cols.values())
            self.out.write(f"{label},{cells}\n")

    def rows(self, name: str, pairs: dict[str, Any]) -> None:
        self.out.write(f"# {name}\n")
        for key, value in pairs.items():
            self.out.write(f"{key},{format_value(value, self.digits)}\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [_jsonable(x) for x in value.tolist()]
    if isinstance(value, (np.floating, float)):
        out = float(value)
        return out if np.isfinite(out) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(x) for x in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _round_floats(value: Any, digits: int) -> Any:
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    if isinstance(value, list):
        return [_round_floats(x, digits) for x in value]
    if isinstance(value, dict):
        return {k: _round_floats(v, digits) for k, v in value.items()}
    return value


def _emit_json(out, payload: dict, digits: int | None) -> None:
    data = _jsonable(payload)
    if digits is not None:
        data = _round_floats(data, digits)
    out.write(json.dumps(data, indent=2) + "\n")


def _load_graph(args: argparse.Namespace) -> WeightedMultigraph:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc}") from exc
    return to_graph(parse_any(text))


def _labels(g: WeightedMultigraph) -> list[str]:
    return [g.label_of(v) for v in range(g.n)]


def _cmd_compute(args: argparse.Namespace, config: RunConfig, out) -> int:
    g = _load_graph(args)
    acc = forest_accessibility(
        kirchhoff(g), config.alpha, config.stochastic_tol, config.zero_tol
    )
    labels = _labels(g)
    parts = components(g)
    dist = None
    certificate = None
    if not g.directed:
        dist = forest_distance(acc, config.stochastic_tol)
        certificate = block_structure(acc, parts, config.zero_tol)
    if config.output_format == "json":
        _emit_json(out, {
            "alpha": acc.alpha,
            "labels": labels,
            "total_forest_weight": acc.total_forest_weight,
            "accessibility": acc.matrix,
            "distances": None if dist is None else dist.distances,
            "block_certificate": certificate,
            "components": parts,
        }, config.digits)
        return 0
    writer = _CsvWriter(out, config.digits)
    writer.scalar("alpha", acc.alpha)
    writer.scalar("total_forest_weight", acc.total_forest_weight)
    writer.matrix("accessibility", labels, acc.matrix)
    if dist is not None:
        writer.matrix("distances", labels, dist.distances)
        writer.scalar("block_certificate", certificate)
    return 0


def _cmd_indices(args: argparse.Namespace, config: RunConfig, out) -> int:
    g = _load_graph(args)
    acc = forest_accessibility(
        kirchhoff(g), config.alpha, config.stochastic_tol, config.zero_tol
    )
    derived = derivative_indices(acc)
    classical = classical_indices(g, weighted=args.weighted) if g.directed else None
    labels = _labels(g)
    if config.output_format == "json":
        payload: dict[str, Any] = {
            "labels": labels,
            "derivative": {
                "alpha": derived.alpha,
                "directed_source": derived.directed_source,
                "solitariness": derived.solitariness,
                "dissociation": derived.dissociation,
                "heterogeneity": derived.heterogeneity,
                "provinciality_ratio": derived.provinciality_ratio,
                "provinciality_diff": derived.provinciality_diff,
            },
        }
        if classical is not None:
            payload["classical"] = {
                "weighted": classical.weighted,
                "normalization": classical.normalization,
                "reciprocity_denominator": classical.reciprocity_denominator,
                "status": classical.status,
                "effusiveness": classical.effusiveness,
                "reciprocity": classical.reciprocity,
                "density": classical.density,
                "cohesion": classical.cohesion,
                "status_heterogeneity": classical.status_heterogeneity,
            }
        _emit_json(out, payload, config.digits)
        return 0
    writer = _CsvWriter(out, config.digits)
    writer.table("derivative", labels, {
        "solitariness": derived.solitariness,
        "provinciality_ratio": derived.provinciality_ratio,
        "provinciality_diff": derived.provinciality_diff,
    })
    writer.rows("derivative_group", {
        "alpha": derived.alpha,
        "dissociation": derived.dissociation,
        "heterogeneity": derived.heterogeneity,
    })
    if classical is not None:
        writer.table("classical", labels, {
            "status": classical.status,
            "effusiveness": classical.effusiveness,
            "reciprocity": classical.reciprocity,
        })
        writer.rows("classical_group", {
            "density": classical.density,
            "cohesion": classical.cohesion,
            "status_heterogeneity": classical.status_heterogeneity,
            "weighted": classical.weighted,
            "normalization": classical.normalization,
            "reciprocity_denominator": classical.reciprocity_denominator,
        })
    return 0


def _cmd_update(args: argparse.Namespace, config: RunConfig, out) -> int:
    g = _load_graph(args)
    increments = []
    for u, v, d in args.edge:
        try:
            increments.append(EdgeIncrement(int(u), int(v), float(d)))
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"bad --edge arguments {(u, v, d)}: {exc}") from exc
    chain = UpdateChain(g, config.alpha, config.refresh_interval)
    before = chain.accessibility.matrix.copy()
    reports = [chain.apply(inc) for inc in increments]
    labels = _labels(g)
    if config.output_format == "json":
        _emit_json(out, {
            "alpha": config.alpha,
            "labels": labels,
            "accessibility_before": before,
            "accessibility_after": chain.accessibility.matrix,
            "updates": [
                {
                    "u": r.increment.u,
                    "v": r.increment.v,
                    "delta": r.increment.delta,
                    "gain": r.gain,
                    "endpoint_distance": r.endpoint_distance,
                    "column_diff": r.column_diff,
                    "delta_matrix": r.delta_matrix,
                    "signs": r.signs,
                }
                for r in reports
            ],
        }, config.digits)
        return 0
    writer = _CsvWriter(out, config.digits)
    writer.matrix("accessibility_before", labels, before)
    for step, r in enumerate(reports):
        writer.rows(f"update_{step}", {
            "u": r.increment.u,
            "v": r.increment.v,
            "delta": r.increment.delta,
            "gain": r.gain,
            "endpoint_distance": r.endpoint_distance,
        })
        writer.matrix(f"delta_matrix_{step}", labels, r.delta_matrix)
        writer.matrix(f"signs_{step}", labels, r.signs)
    writer.matrix("accessibility_after", labels, chain.accessibility.matrix)
    return 0


def _cmd_series(args: argparse.Namespace, config: RunConfig, out) -> int:
    g = _load_graph(args)
    result = series_partial_sum(g, args.max_len, config.alpha)
    labels = _labels(g)
    if config.output_format == "json":
        _emit_json(out, {
            "alpha": result.alpha,
            "max_len": result.max_len,
            "bound": result.bound,
            "within_bound": result.within_bound,
            "labels": labels,
            "partial_sum": result.partial_sum,
            "term_norms": list(result.term_norms),
        }, config.digits)
        return 0
    writer = _CsvWriter(out, config.digits)
    writer.rows("series", {
        "alpha": result.alpha,
        "max_len": result.max_len,
        "bound": result.bound,
        "within_bound": result.within_bound,
    })
    writer.matrix("partial_sum", labels, result.partial_sum)
    writer.out.write("# term_norms\n")
    for t, norm in enumerate(result.term_norms):
        writer.out.write(f"{t},{format_value(norm, config.digits)}\n")
    return 0


def _verify_checks(g: WeightedMultigraph, config: RunConfig) -> list[tuple[str, bool, str]]:
    guards = dict(
        max_vertices=config.oracle_max_vertices, max_edges=config.oracle_max_edges
    )
    scaled = g.with_scaled_weights(config.alpha) if config.alpha != 1.0 else g
    table, total = enumeration.forest_weight_table(scaled, **guards)
    oracle_q = table / total
    acc = forest_accessibility(
        kirchhoff(g), config.alpha, config.stochastic_tol, config.zero_tol
    )
    checks: list[tuple[str, bool, str]] = []

    gap = float(np.abs(acc.matrix - oracle_q).max())
    checks.append(("solver_vs_enumeration", gap <= VERIFY_TOL, f"max gap {gap:.3e}"))

    det_gap = abs(acc.total_forest_weight - total) / max(1.0, abs(total))
    checks.append((
        "determinant_vs_forest_weight", det_gap <= VERIFY_TOL, f"relative gap {det_gap:.3e}"
    ))

    cof = enumeration.tree_cofactor_check(g, VERIFY_TOL, **guards)
    checks.append(("cofactors_vs_trees", cof, "cofactor identities"))

    partition_gap = float(np.abs(table.sum(axis=1) - total).max()) / max(1.0, abs(total))
    checks.append((
        "root_partition_identity",
        partition_gap <= VERIFY_TOL,
        f"relative gap {partition_gap:.3e}",
    ))

    if not g.directed:
        doubled = enumeration.oracle_accessibility(
            scaled.as_doubled_digraph(), **guards
        )
        double_gap = float(np.abs(doubled - oracle_q).max())
        checks.append((
            "doubling_equivalence", double_gap <= VERIFY_TOL, f"max gap {double_gap:.3e}"
        ))
    return checks


def _cmd_verify(args: argparse.Namespace, config: RunConfig, out) -> int:
    g = _load_graph(args)
    checks = _verify_checks(g, config)
    if config.output_format == "json":
        _emit_json(out, {
            "checks": [
                {"name": name, "passed": ok, "detail": detail}
                for name, ok, detail in checks
            ],
            "passed": all(ok for _, ok, _ in checks),
        }, config.digits)
    else:
        for name, ok, detail in checks:
            out.write(f"{name} {'PASS' if ok else 'FAIL'} ({detail})\n")
    return 0 if all(ok for _, ok, _ in checks) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forestprox",
        description="Forest-accessibility analysis of small weighted graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="graph file (edge list or JSON)")
    common.add_argument("--config", help="JSON file of RunConfig fields")
    common.add_argument("--alpha", type=float, default=None, help="accessibility scale")
    common.add_argument(
        "--format", dest="output_format", choices=("csv", "json"), default=None,
        help="stdout format",
    )
    common.add_argument(
        "--digits", type=int, default=None, help="round output to this many significant digits"
    )
    common.add_argument("--stochastic-tol", dest="stochastic_tol", type=float, default=None)
    common.add_argument("--zero-tol", dest="zero_tol", type=float, default=None)
    common.add_argument(
        "--max-oracle-vertices", dest="oracle_max_vertices", type=int, default=None
    )
    common.add_argument(
        "--max-oracle-edges", dest="oracle_max_edges", type=int, default=None
    )
    common.add_argument(
        "--refresh-interval", dest="refresh_interval", type=int, default=None
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "compute", parents=[common],
        help="accessibility matrix, distances, block certificate",
    )
    indices = sub.add_parser("indices", parents=[common], help="sociometric indices")
    indices.add_argument(
        "--weighted", action="store_true",
        help="use weighted degrees for status and effusiveness",
    )
    update = sub.add_parser(
        "update", parents=[common], help="rank-one what-if edge increments"
    )
    update.add_argument(
        "--edge", nargs=3, metavar=("U", "V", "DELTA"), action="append", required=True,
        help="increment this pair's weight; repeatable, applied in order",
    )
    series = sub.add_parser(
        "series", parents=[common], help="power-series partial sum and diagnostics"
    )
    series.add_argument("--max-len", dest="max_len", type=int, default=60)
    sub.add_parser(
        "verify", parents=[common],
        help="cross-check the solver against exhaustive enumeration",
    )
    return parser


_COMMANDS = {
    "compute": _cmd_compute,
    "indices": _cmd_indices,
    "update": _cmd_update,
    "series": _cmd_series,
    "verify": _cmd_verify,
}


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else RunConfig()
        config = _merge_flags(config, args)
        return _COMMANDS[args.command](args, config, out)
    except ValidationError as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
