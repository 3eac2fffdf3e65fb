"""Command-line entry points for single runs and table-style sweeps."""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .core import ConfigurationError
from .harness import (
    ALGORITHMS,
    RunConfig,
    emit_plot_data,
    resolve_setup,
    run_experiment,
    run_single,
    write_experiment_csv,
)
from .neuronet import save_params
from .problems import PROBLEM_NAMES
from .refvec import to_unit_vectors

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--generations", type=int, default=15, help="generations per run")
    parser.add_argument("--epochs", type=int, default=40, help="GAN epochs per generation")
    parser.add_argument("--runs", type=int, default=10, help="repeated runs per configuration")
    parser.add_argument("--seed", type=int, default=0, help="base seed; run i uses seed+i")
    parser.add_argument("--alpha", type=float, default=2.0, help="angle-penalty rate exponent")
    parser.add_argument("--out", type=str, default="results", help="output directory")
    parser.add_argument("--jobs", type=int, default=1, help="parallel worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rveawg",
        description="Many-objective optimization benchmark runner "
        "(reference-vector selection with GAN offspring, NSGA-II baseline).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one (problem, M, algorithm) configuration")
    run_p.add_argument("--algorithm", choices=ALGORITHMS, default="rvea-wg")
    run_p.add_argument("--problem", choices=PROBLEM_NAMES, default="dtlz2")
    run_p.add_argument("--objectives", type=int, default=3)
    run_p.add_argument(
        "--pop-size",
        type=int,
        default=None,
        help="requested population size; snapped up to the nearest lattice count",
    )
    _add_common(run_p)
    run_p.add_argument("--dump-refvecs", action="store_true", help="write refvecs.csv")
    run_p.add_argument("--emit-plots", action="store_true", help="write per-run trace CSVs")
    run_p.add_argument(
        "--dump-gan-params",
        action="store_true",
        help="write the base-seed run's final generator/critic parameters "
        "(flat little-endian float64, row-major, layer order)",
    )

    sweep_p = sub.add_parser("sweep", help="run a multi-row experiment from a config file")
    sweep_p.add_argument("--config", type=str, required=True, help="flat key = value file")
    sweep_p.add_argument("--out", type=str, default=None, help="override the file's out dir")
    sweep_p.add_argument("--jobs", type=int, default=None)
    sweep_p.add_argument("--runs", type=int, default=None)
    sweep_p.add_argument("--seed", type=int, default=None)
    return parser


def parse_config_file(path: Path) -> dict[str, str]:
    """Flat `key = value` lines; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got '{raw}'")
        key, value = line.split("=", 1)
        values[key.strip().lower()] = value.strip()
    return values


def _csv_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def sweep_configs(values: dict[str, str], args) -> tuple[list[RunConfig], Path, int]:
    problems = _csv_list(values.get("problems", "dtlz1,dtlz2,dtlz3,dtlz4"))
    objectives = [int(v) for v in _csv_list(values.get("objectives", "3,6,8,10"))]
    algorithms = _csv_list(values.get("algorithms", "rvea-wg,nsga2"))
    runs = args.runs if args.runs is not None else int(values.get("runs", 10))
    seed = args.seed if args.seed is not None else int(values.get("seed", 0))
    out = Path(args.out if args.out is not None else values.get("out", "results"))
    jobs = args.jobs if args.jobs is not None else int(values.get("jobs", 1))
    generations = int(values.get("generations", 15))
    epochs = int(values.get("epochs", 40))
    alpha = float(values.get("alpha", 2.0))

    configs = []
    for problem in problems:
        for m in objectives:
            for algorithm in algorithms:
                cfg = RunConfig(
                    algorithm=algorithm,
                    problem=problem,
                    objectives=m,
                    generations=generations,
                    alpha=alpha,
                    runs=runs,
                    seed=seed,
                )
                cfg.gan.epochs = epochs
                configs.append(cfg)
    return configs, out, jobs


def cmd_run(args) -> int:
    cfg = RunConfig(
        algorithm=args.algorithm,
        problem=args.problem,
        objectives=args.objectives,
        pop_size=args.pop_size,
        generations=args.generations,
        alpha=args.alpha,
        runs=args.runs,
        seed=args.seed,
    )
    cfg.gan.epochs = args.epochs
    problem, weights = resolve_setup(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.dump_refvecs:
        refs = to_unit_vectors(weights)
        with (out / "refvecs.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            for row in refs.current:
                writer.writerow([repr(float(v)) for v in row])

    rows_path = out / "results.csv"
    rows = run_experiment([cfg], jobs=args.jobs)
    write_experiment_csv(rows, rows_path)
    print(f"wrote {rows_path}")

    if args.emit_plots or args.dump_gan_params:
        record = run_single(cfg, cfg.seed)
        if args.emit_plots:
            for path in emit_plot_data(record, out):
                print(f"wrote {path}")
        if args.dump_gan_params:
            if not record.networks:
                print("no networks to dump (nsga2 run)", file=sys.stderr)
            else:
                for name, net in record.networks.items():
                    target = out / f"{name}_params.bin"
                    save_params(net, target)
                    print(f"wrote {target}")
    mean = rows[0].mean_igd
    print(f"{cfg.problem} M={cfg.objectives} {cfg.algorithm}: mean IGD {mean:.5e} over {cfg.runs} runs")
    return EXIT_OK


def cmd_sweep(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise ConfigurationError(f"config file not found: {path}")
    configs, out, jobs = sweep_configs(parse_config_file(path), args)
    rows = run_experiment(configs, jobs=jobs)
    out.mkdir(parents=True, exist_ok=True)
    write_experiment_csv(rows, out / "results.csv")
    print(f"wrote {out / 'results.csv'} ({len(rows)} rows)")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; those are config errors here.
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_sweep(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
