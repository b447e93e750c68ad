"""Command-line surface: generate | run | sweep | validate | fixtures.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
4 numerical degeneracy. All primary outputs (report JSON, series CSV,
plot CSV) are byte-deterministic for fixed inputs; wall time is reported
on stderr only so it never perturbs the artifacts.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path
from statistics import fmean

from . import __version__
from .errors import DarlError, NumericalDegeneracy, ValidationError
from .ingest import (
    FIXTURE_NAMES,
    Fixture,
    config_to_mapping,
    load_config,
    load_fixture,
    load_reference_csv,
    load_series_csv,
)
from .model import (
    DARL_MODES,
    ExperimentConfig,
    build_series,
    compare_with_reference,
    run_configuration,
    select_best_seed,
)
from .prng import uniform_series
from .serialize import (
    render_json,
    render_plot_csv,
    render_series_csv,
    render_table,
)
from .stats import quartile_summary, rmse, shapiro_wilk

_ORDER_FLAGS = {"asc": "ascending", "desc": "descending"}


def _ensure_out_dir(out_dir: str) -> Path:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _parse_seeds(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValidationError(f"--seeds expects comma-separated integers, got {text!r}") from None


def _resolve_inputs(args) -> tuple[str, ExperimentConfig, list[tuple[float, float]] | None, Fixture | None]:
    """Source name, config, reference observations and fixture (if any)."""
    reference_path = getattr(args, "reference", None)
    if args.fixture is not None:
        if reference_path:
            raise ValidationError("--reference applies to --config runs; fixtures ship their own")
        fixture = load_fixture(args.fixture)
        return fixture.name, fixture.config, list(fixture.reference), fixture
    path = Path(args.config)
    config = load_config(path.read_bytes())
    reference = None
    if reference_path:
        reference = load_reference_csv(Path(reference_path).read_bytes())
    return path.stem, config, reference, None


def _apply_overrides(config: ExperimentConfig, args) -> ExperimentConfig:
    changes = {}
    if getattr(args, "n_override", None) is not None:
        changes["n_override"] = args.n_override
    if getattr(args, "sort_order", None) is not None:
        changes["sort_order"] = _ORDER_FLAGS[args.sort_order]
    if getattr(args, "darl_mode", None) is not None:
        changes["darl_mode"] = args.darl_mode
    if getattr(args, "seeds", None):
        changes["seeds"] = _parse_seeds(args.seeds)
    if changes:
        config = replace(config, **changes)
    config.validate()
    return config


def _series_stats(config: ExperimentConfig) -> list[dict]:
    rows = []
    for seed in sorted(config.seeds):
        _, series = build_series(config, seed)
        norm = shapiro_wilk(series.values)
        quart = quartile_summary(series.values)
        rows.append({
            "seed": seed,
            "n": series.n,
            "w_statistic": norm.w_statistic,
            "p_value": norm.p_value,
            "normality_rejected": norm.rejected,
            "q1": quart.q1,
            "median": quart.q2,
            "q3": quart.q3,
            "iqr": quart.iqr,
        })
    return rows


def _discrepancy_block(fixture: Fixture) -> dict:
    """Published comparison rows beside this artifact's values, every mode.

    Always evaluated on the pristine fixture config (the published
    protocol), regardless of run-time overrides, so the recorded
    discrepancy is stable.
    """
    modes = sorted(DARL_MODES)
    per_mode = {}
    for mode in modes:
        records = run_configuration(replace(fixture.config, darl_mode=mode))
        comps, _ = compare_with_reference(records, fixture.reference)
        per_mode[mode] = {(c.seed, c.target_length_m): c for c in comps}
    rows = []
    for pub in fixture.reported_rows:
        computed = {}
        for mode in modes:
            comp = per_mode[mode][(pub.seed, pub.target_length_m)]
            computed[mode] = {
                "t_sim_c": comp.t_sim_c,
                "delta_t_c": comp.delta_t_c,
                "relative_error_pct": comp.relative_error_pct,
            }
        rows.append({
            "target_length_m": pub.target_length_m,
            "seed": pub.seed,
            "reported_delta_t_c": pub.delta_t_c,
            "reported_relative_error_pct": pub.relative_error_pct,
            "computed": computed,
        })
    rmse_block = {"reported_c": fixture.reported_rmse_c, "computed_c": {}}
    for mode in modes:
        pairs = [per_mode[mode][(r.seed, r.target_length_m)] for r in fixture.reported_rows]
        rmse_block["computed_c"][mode] = rmse(
            [c.t_obs_c for c in pairs], [c.t_sim_c for c in pairs]
        )
    return {
        "note": (
            "Recorded, not asserted: the predictor evaluated as printed "
            "leaves the physical temperature range for every row of this "
            "fixture, so the published relative errors are not reproduced "
            "by any registered reading of the formula. Computed values are "
            "reported beside the published ones for inspection."
        ),
        "published_protocol_rows": rows,
        "rmse": rmse_block,
    }


def _build_report(
    name: str,
    config: ExperimentConfig,
    reference: list[tuple[float, float]] | None,
    fixture: Fixture | None,
):
    records = run_configuration(config)
    report = {
        "tool": "darl",
        "version": __version__,
        "source": name,
        "kind": "fixture" if fixture is not None else "config",
        "config": config_to_mapping(config),
        "sample_count": config.sample_count(),
        "series": _series_stats(config),
        "predictions": [
            {
                "seed": r.seed,
                "target_length_m": r.target_length_m,
                "t_phi_c": r.t_phi_c,
                "r_squared": r.r_squared,
                "t_sim_c": r.t_sim_c,
                "out_of_range": r.out_of_range,
            }
            for r in records
        ],
    }
    comparisons = None
    if reference is not None:
        comparisons, rmse_by_seed = compare_with_reference(records, reference)
        report["comparisons"] = [
            {
                "seed": c.seed,
                "target_length_m": c.target_length_m,
                "t_sim_c": c.t_sim_c,
                "t_obs_c": c.t_obs_c,
                "delta_t_c": c.delta_t_c,
                "relative_error_pct": c.relative_error_pct,
            }
            for c in comparisons
        ]
        report["rmse_by_seed"] = dict(sorted(rmse_by_seed.items()))
        report["best_seed"] = select_best_seed(comparisons)
    if fixture is not None:
        report["discrepancy_report"] = _discrepancy_block(fixture)
    return report, comparisons


def _run_tables(report: dict) -> str:
    cfg = report["config"]
    parts = [
        f"darl {report['version']}  source={report['source']}  "
        f"mode={cfg['darl_mode']}  sort={cfg['sort_order']}  n={report['sample_count']}",
        "",
        "series",
        render_table(
            ("seed", "n", "W", "p", "normal", "q1", "median", "q3", "iqr"),
            [
                (
                    s["seed"], s["n"], s["w_statistic"], format(s["p_value"], ".3e"),
                    "rejected" if s["normality_rejected"] else "retained",
                    s["q1"], s["median"], s["q3"], s["iqr"],
                )
                for s in report["series"]
            ],
        ),
        "predictions",
        render_table(
            ("seed", "length_m", "t_phi_c", "r_squared", "t_sim_c", "in_range"),
            [
                (
                    p["seed"], p["target_length_m"], p["t_phi_c"], p["r_squared"],
                    p["t_sim_c"], "no" if p["out_of_range"] else "yes",
                )
                for p in report["predictions"]
            ],
        ),
    ]
    if "comparisons" in report:
        parts.append("comparisons")
        parts.append(render_table(
            ("seed", "length_m", "t_sim_c", "t_obs_c", "delta_t_c", "rel_err_pct"),
            [
                (
                    c["seed"], c["target_length_m"], c["t_sim_c"], c["t_obs_c"],
                    c["delta_t_c"], c["relative_error_pct"],
                )
                for c in report["comparisons"]
            ],
        ))
        parts.append("rmse by seed")
        parts.append(render_table(
            ("seed", "rmse_c"),
            [(str(k), v) for k, v in report["rmse_by_seed"].items()],
        ))
        parts.append(f"best seed: {report['best_seed']}")
    if "discrepancy_report" in report:
        block = report["discrepancy_report"]
        modes = sorted(DARL_MODES)
        parts.append("")
        parts.append("published vs computed (published protocol rows)")
        headers = ["length_m", "seed", "rep_dT", "rep_err%"]
        for mode in modes:
            headers.extend((f"{mode} dT", f"{mode} err%"))
        rows = []
        for row in block["published_protocol_rows"]:
            cells = [
                row["target_length_m"], row["seed"],
                row["reported_delta_t_c"], row["reported_relative_error_pct"],
            ]
            for mode in modes:
                cells.extend((row["computed"][mode]["delta_t_c"],
                              row["computed"][mode]["relative_error_pct"]))
            rows.append(tuple(cells))
        parts.append(render_table(tuple(headers), rows))
        rmse_cells = [f"reported={block['rmse']['reported_c']:.4f}"]
        rmse_cells.extend(
            f"{mode}={block['rmse']['computed_c'][mode]:.4f}" for mode in modes
        )
        parts.append("rmse_c: " + "  ".join(rmse_cells))
        parts.append("note: " + block["note"])
    return "\n".join(parts) + "\n"


def cmd_generate(args) -> int:
    order = _ORDER_FLAGS[args.order]
    series = uniform_series(args.seed, args.n, args.min, args.max, order)
    text = render_series_csv(series.values)
    if args.out is not None:
        path = Path(args.out)
    else:
        path = _ensure_out_dir(args.out_dir) / f"series-seed{args.seed}-n{args.n}-{args.order}.csv"
    path.write_bytes(text.encode("utf-8"))
    print(f"wrote {path} ({series.n} values, {order})")
    return 0


def cmd_run(args) -> int:
    started = time.perf_counter()
    name, config, reference, fixture = _resolve_inputs(args)
    config = _apply_overrides(config, args)
    report, comparisons = _build_report(name, config, reference, fixture)
    json_text = render_json(report) + "\n"
    out_dir = _ensure_out_dir(args.out_dir)
    (out_dir / f"{name}-report.json").write_bytes(json_text.encode("utf-8"))
    plot_text = None
    if comparisons:
        best = report["best_seed"]
        rows = sorted(
            (c.target_length_m, c.t_sim_c, c.t_obs_c)
            for c in comparisons if c.seed == best
        )
        plot_text = render_plot_csv(rows)
        (out_dir / f"{name}-plot.csv").write_bytes(plot_text.encode("utf-8"))
    if args.format == "json":
        sys.stdout.write(json_text)
    elif args.format == "csv":
        sys.stdout.write(plot_text if plot_text is not None else "length_m,t_sim_c,t_obs_c\n")
    else:
        sys.stdout.write(_run_tables(report))
    print(f"wall_time_s={time.perf_counter() - started:.6f}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    name, config, reference, fixture = _resolve_inputs(args)
    config = _apply_overrides(config, args)
    if reference is None:
        raise ValidationError("sweep needs reference observations: use a fixture or --reference")
    records = run_configuration(config)
    comparisons, rmse_by_seed = compare_with_reference(records, reference)
    errors_by_seed: dict[int, list[float]] = {}
    for comp in comparisons:
        errors_by_seed.setdefault(comp.seed, []).append(comp.relative_error_pct)
    ranking = sorted(
        (fmean(errs), seed) for seed, errs in errors_by_seed.items()
    )
    best = select_best_seed(comparisons)
    doc = {
        "tool": "darl",
        "version": __version__,
        "source": name,
        "mode": config.darl_mode,
        "ranking": [
            {
                "seed": seed,
                "mean_relative_error_pct": mean_err,
                "rmse_c": rmse_by_seed[seed],
            }
            for mean_err, seed in ranking
        ],
        "best_seed": best,
    }
    json_text = render_json(doc) + "\n"
    out_dir = _ensure_out_dir(args.out_dir)
    (out_dir / f"{name}-sweep.json").write_bytes(json_text.encode("utf-8"))
    if args.format == "json":
        sys.stdout.write(json_text)
    else:
        table = render_table(
            ("seed", "mean_rel_err_pct", "rmse_c"),
            [(str(r["seed"]), r["mean_relative_error_pct"], r["rmse_c"]) for r in doc["ranking"]],
        )
        sys.stdout.write(f"sweep: {name}  mode={config.darl_mode}\n{table}best seed: {best}\n")
    return 0


def _validate_row(label: str, values) -> dict:
    norm = shapiro_wilk(values)
    quart = quartile_summary(values)
    return {
        "source": label,
        "n": norm.n,
        "w_statistic": norm.w_statistic,
        "p_value": norm.p_value,
        "normality_rejected": norm.rejected,
        "q1": quart.q1,
        "median": quart.q2,
        "q3": quart.q3,
        "iqr": quart.iqr,
    }


def cmd_validate(args) -> int:
    rows = []
    if args.series is not None:
        path = Path(args.series)
        values = load_series_csv(path.read_bytes())
        source = path.name
        rows.append(_validate_row(source, values))
    else:
        source, config, _, _ = _resolve_inputs(args)
        config = _apply_overrides(config, args)
        for seed in sorted(config.seeds):
            _, series = build_series(config, seed)
            rows.append(_validate_row(f"seed {seed}", series.values))
    doc = {
        "tool": "darl",
        "version": __version__,
        "source": source,
        "alpha": 0.05,
        "results": rows,
    }
    if args.format == "json":
        sys.stdout.write(render_json(doc) + "\n")
    else:
        table = render_table(
            ("source", "n", "W", "p", "normality", "q1", "median", "q3", "iqr"),
            [
                (
                    r["source"], r["n"], r["w_statistic"], format(r["p_value"], ".3e"),
                    "rejected" if r["normality_rejected"] else "not rejected",
                    r["q1"], r["median"], r["q3"], r["iqr"],
                )
                for r in rows
            ],
        )
        sys.stdout.write(f"validate: {source}  alpha=0.05\n{table}")
    return 0


def cmd_fixtures(args) -> int:
    entries = []
    for name in FIXTURE_NAMES:
        fixture = load_fixture(name)
        cfg = fixture.config
        entries.append({
            "name": name,
            "t_in_c": cfg.t_in_c,
            "t_end_c": cfg.t_end_c,
            "t_w_c": cfg.t_w_c,
            "total_length_m": cfg.total_length_m,
            "target_lengths_m": list(cfg.target_lengths_m),
            "seeds": list(cfg.seeds),
            "sample_count": cfg.sample_count(),
            "reference_points": len(fixture.reference),
            "reported_rmse_c": fixture.reported_rmse_c,
        })
    if args.format == "json":
        sys.stdout.write(render_json({"fixtures": entries}) + "\n")
    else:
        table = render_table(
            ("name", "t_in_c", "t_end_c", "t_w_c", "length_m", "targets", "n"),
            [
                (
                    e["name"], e["t_in_c"], e["t_end_c"], e["t_w_c"],
                    e["total_length_m"], len(e["target_lengths_m"]), e["sample_count"],
                )
                for e in entries
            ],
        )
        sys.stdout.write(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darl",
        description="Deterministic random-length temperature model: "
                    "synthetic series, regression-driven predictions, validation reports.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out-dir", default=".", help="directory for emitted files (created if missing)")
    shared.add_argument("--format", choices=("json", "table", "csv"), default="table",
                        help="stdout format (default: table)")

    overrides = argparse.ArgumentParser(add_help=False)
    overrides.add_argument("--n-override", type=int, default=None,
                           help="series length override (defaults to one value per centimetre)")
    overrides.add_argument("--sort-order", choices=tuple(_ORDER_FLAGS), default=None,
                           help="series sort direction override")
    overrides.add_argument("--darl-mode", choices=tuple(sorted(DARL_MODES)), default=None,
                           help="predictor reading override")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixture", help="built-in fixture name (see the fixtures command)")
    group.add_argument("--config", help="path to a config JSON document")
    source.add_argument("--reference", default=None,
                        help="CSV of observations (length_m,t_obs_c) for --config runs")

    p = sub.add_parser("generate", parents=[shared],
                       help="emit one sorted bounded series as a single-column CSV")
    p.add_argument("--seed", type=int, required=True, help="32-bit generator seed")
    p.add_argument("--n", type=int, required=True, help="number of values")
    p.add_argument("--min", type=float, required=True, help="lower bound, degrees C")
    p.add_argument("--max", type=float, required=True, help="upper bound, degrees C")
    p.add_argument("--order", choices=tuple(_ORDER_FLAGS), default="asc",
                   help="sort direction (default: asc)")
    p.add_argument("--out", default=None, help="output path (default: derived name in --out-dir)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", parents=[shared, overrides, source],
                       help="run an experiment and write report JSON plus plot CSV")
    p.add_argument("--seeds", default=None, help="comma-separated subset of the config seeds")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", parents=[shared, overrides, source],
                       help="rank every seed by mean relative error")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", parents=[shared, overrides],
                       help="normality and quartile report for a series or fixture")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixture", help="built-in fixture name")
    group.add_argument("--config", help="path to a config JSON document")
    group.add_argument("--series", help="CSV series file with an Ordered_Value column")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fixtures", parents=[shared], help="list built-in fixtures")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericalDegeneracy as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DarlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())
