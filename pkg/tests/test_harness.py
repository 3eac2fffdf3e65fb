import csv

import numpy as np
import pytest

from rveawg import ConfigurationError, RandomSource, RunConfig, run_experiment, run_single
from rveawg.cli import main, parse_config_file
from rveawg.harness import emit_plot_data, resolve_setup, rvea_wg_run, write_experiment_csv


def small_cfg(algorithm="rvea-wg", **kw):
    cfg = RunConfig(
        algorithm=algorithm,
        problem=kw.pop("problem", "dtlz2"),
        objectives=3,
        pop_size=15,
        generations=kw.pop("generations", 3),
        runs=kw.pop("runs", 1),
        seed=kw.pop("seed", 0),
    )
    cfg.gan.epochs = 4
    cfg.gan.pretrain_epochs = 2
    for k, v in kw.items():
        setattr(cfg, k, v)
    return cfg


def test_single_generation_run():
    cfg = small_cfg(generations=1)
    record = rvea_wg_run(cfg, RandomSource(3))
    assert len(record.igd_trace) == 1
    assert record.final_f.shape[1] == 3
    assert record.evaluations == 15 + 15  # init + one offspring batch
    assert record.gan_trace, "adversarial loss trace missing"
    for s in record.gan_trace:
        assert np.isfinite([s.critic_loss, s.gen_loss, s.wasserstein, s.penalty]).all()


def test_trace_length_matches_generations():
    for alg in ("rvea-wg", "nsga2"):
        record = run_single(small_cfg(alg, generations=4), 1)
        assert len(record.igd_trace) == 4


def test_population_never_exceeds_lattice_size():
    cfg = small_cfg(generations=5)
    record = rvea_wg_run(cfg, RandomSource(9))
    assert record.final_f.shape[0] <= 15


def test_run_determinism_replay():
    cfg = small_cfg(generations=3)
    a = run_single(cfg, 7)
    b = run_single(cfg, 7)
    assert a.igd_trace == b.igd_trace
    assert np.array_equal(a.final_x, b.final_x)
    assert np.array_equal(a.final_f, b.final_f)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(algorithm="spea2").validate()
    with pytest.raises(ConfigurationError):
        RunConfig(generations=0).validate()
    with pytest.raises(ConfigurationError):
        resolve_setup(RunConfig(problem="nope"))


def test_resolved_pop_size_snaps_to_lattice():
    problem, weights = resolve_setup(RunConfig(problem="dtlz2", objectives=3, pop_size=16))
    assert weights.shape[0] == 21  # smallest 3-objective lattice count >= 16


def test_experiment_rows_paired_seeds_and_best_flag(tmp_path):
    cfgs = [small_cfg("rvea-wg", runs=2), small_cfg("nsga2", runs=2)]
    rows = run_experiment(cfgs)
    assert len(rows) == 2
    assert {row.algorithm for row in rows} == {"rvea-wg", "nsga2"}
    assert sum(row.best for row in rows) == 1
    # Paired seeds: rerunning either algorithm alone reproduces its row values.
    again = run_experiment([small_cfg("nsga2", runs=2)])[0]
    nsga_row = next(r for r in rows if r.algorithm == "nsga2")
    assert again.per_run == nsga_row.per_run

    out = tmp_path / "results.csv"
    write_experiment_csv(rows, out)
    with out.open() as fh:
        table = list(csv.reader(fh))
    assert table[0][:6] == ["problem", "M", "algorithm", "runs", "mean_igd", "std_igd"]
    assert table[0][6:] == ["run_0", "run_1", "best"]
    assert len(table) == 3


def test_experiment_cardinality_for_sweep_shape():
    # A table-shaped sweep is problems x objectives x algorithms rows.
    from rveawg.cli import sweep_configs

    class Args:
        runs = None
        seed = None
        out = None
        jobs = None

    values = {"problems": "dtlz1,dtlz2,dtlz3,dtlz4", "objectives": "3,6,8,10"}
    configs, _, _ = sweep_configs(values, Args())
    assert len(configs) == 4 * 4 * 2


def test_emit_plot_data_round_trip(tmp_path):
    cfg = small_cfg(generations=3)
    record = run_single(cfg, 2)
    paths = emit_plot_data(record, tmp_path)
    trace_file = tmp_path / "igd_trace.csv"
    assert trace_file in paths
    with trace_file.open() as fh:
        rows = list(csv.reader(fh))[1:]
    assert len(rows) == 3
    assert [float(v) for _, v in rows] == record.igd_trace

    with (tmp_path / "objectives.csv").open() as fh:
        obj_rows = list(csv.reader(fh))[1:]
    parsed = np.array([[float(v) for v in row] for row in obj_rows])
    assert np.array_equal(parsed, record.final_f)


def test_record_rerunnable_from_snapshot():
    from rveawg.harness import config_from_snapshot

    cfg = small_cfg(generations=2)
    record = run_single(cfg, 4)
    rebuilt = config_from_snapshot(record.config)
    again = run_single(rebuilt, record.seed)
    assert again.igd_trace == record.igd_trace
    assert np.array_equal(again.final_x, record.final_x)


def test_cli_dump_gan_params(tmp_path):
    code = main(
        [
            "run",
            "--problem", "dtlz2",
            "--pop-size", "15",
            "--generations", "2",
            "--epochs", "2",
            "--runs", "1",
            "--out", str(tmp_path),
            "--dump-gan-params",
        ]
    )
    assert code == 0
    raw = np.fromfile(tmp_path / "generator_params.bin", dtype="<f8")
    # latent 16 -> 64 -> 64 -> 12 variables, weights plus biases per layer.
    expected = (16 * 64 + 64) + (64 * 64 + 64) + (64 * 12 + 12)
    assert raw.shape == (expected,)
    assert np.all(np.isfinite(raw))
    assert (tmp_path / "critic_params.bin").exists()


def test_config_file_parsing(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text("# comment\nproblems = lsmop1, dtlz2\n\nobjectives= 3\nruns =2\n")
    values = parse_config_file(path)
    assert values == {"problems": "lsmop1, dtlz2", "objectives": "3", "runs": "2"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("no separator here\n")
    with pytest.raises(ConfigurationError):
        parse_config_file(bad)


def test_cli_run_writes_outputs(tmp_path):
    code = main(
        [
            "run",
            "--problem", "dtlz2",
            "--objectives", "3",
            "--pop-size", "15",
            "--generations", "2",
            "--epochs", "2",
            "--runs", "1",
            "--seed", "3",
            "--out", str(tmp_path),
            "--dump-refvecs",
            "--emit-plots",
        ]
    )
    assert code == 0
    assert (tmp_path / "results.csv").exists()
    assert (tmp_path / "igd_trace.csv").exists()
    with (tmp_path / "refvecs.csv").open() as fh:
        vecs = np.array([[float(v) for v in row] for row in csv.reader(fh)])
    assert vecs.shape == (15, 3)
    assert np.allclose(np.linalg.norm(vecs, axis=1), 1.0, atol=1e-12)


def test_cli_exit_codes(tmp_path):
    assert main(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("objectives = 1\n")  # lattice needs M >= 2
    assert main(["sweep", "--config", str(bad)]) == 1


def test_cli_sweep_small(tmp_path):
    cfgfile = tmp_path / "sweep.cfg"
    cfgfile.write_text(
        "problems = dtlz2\nobjectives = 3\nalgorithms = nsga2\n"
        "generations = 2\nruns = 2\nseed = 1\nepochs = 2\n"
    )
    code = main(["sweep", "--config", str(cfgfile), "--out", str(tmp_path / "out")])
    assert code == 0
    with (tmp_path / "out" / "results.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 2  # header + one row


def test_cli_run_byte_identical_repeat(tmp_path):
    args = [
        "run",
        "--problem", "dtlz2",
        "--pop-size", "15",
        "--generations", "2",
        "--epochs", "2",
        "--runs", "2",
        "--seed", "11",
    ]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    a = (tmp_path / "a" / "results.csv").read_bytes()
    b = (tmp_path / "b" / "results.csv").read_bytes()
    assert a == b
