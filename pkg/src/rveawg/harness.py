"""Run orchestration: the reference-vector + GAN main loop, the NSGA-II
counterpart, repeated-run experiments, and CSV/plot-data persistence."""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .baselines import nsga2_generation
from .core import (
    ConfigurationError,
    EvaluationCounter,
    Population,
    RandomSource,
    evaluate,
    init_population,
)
from .metrics import aggregate_runs, igd
from .problems import ProblemDef, make_problem, sample_front
from .refvec import adapt, lattice_for, to_unit_vectors
from .selection import elitism_select
from .variation import MutationConfig, mutate_population
from .wgan import EpochStats, GanConfig, OffspringGan, TrainingCorpus, normalize_to_net

ALGORITHMS = ("rvea-wg", "nsga2")


@dataclass
class RunConfig:
    algorithm: str = "rvea-wg"
    problem: str = "dtlz2"
    objectives: int = 3
    pop_size: int | None = None      # None: lattice default for the objective count
    generations: int = 15
    alpha: float = 2.0
    runs: int = 10
    seed: int = 0
    eta_c: float = 20.0
    gan: GanConfig = field(default_factory=GanConfig)
    mutation: MutationConfig = field(default_factory=MutationConfig)

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm '{self.algorithm}'")
        if self.generations < 1:
            raise ConfigurationError("need at least one generation")
        if self.runs < 1:
            raise ConfigurationError("need at least one run")
        self.gan.validate()


@dataclass
class RunRecord:
    config: dict
    seed: int
    igd_trace: list[float]
    final_x: np.ndarray
    final_f: np.ndarray
    evaluations: int
    duration: float
    gan_trace: list[EpochStats] = field(default_factory=list)
    networks: dict | None = None  # final generator/critic, rvea-wg runs only

    @property
    def final_igd(self) -> float:
        return self.igd_trace[-1]


def resolve_setup(cfg: RunConfig) -> tuple[ProblemDef, np.ndarray]:
    """Problem instance plus the weight lattice; the lattice size is the
    population size actually used."""
    cfg.validate()
    problem = make_problem(cfg.problem, cfg.objectives)
    weights = lattice_for(cfg.objectives, cfg.pop_size)
    return problem, weights


def reference_front_size(m: int) -> int:
    return 500 if m <= 5 else 1000


def config_snapshot(cfg: RunConfig, pop_size: int) -> dict:
    snap = asdict(cfg)
    snap["resolved_pop_size"] = pop_size
    return snap


def config_from_snapshot(snapshot: dict) -> RunConfig:
    """Rebuild the exact RunConfig a record was produced with."""
    data = dict(snapshot)
    data.pop("resolved_pop_size", None)
    gan = GanConfig(**data.pop("gan"))
    mutation = MutationConfig(**data.pop("mutation"))
    return RunConfig(gan=gan, mutation=mutation, **data)


def rvea_wg_run(cfg: RunConfig, rng: RandomSource) -> RunRecord:
    """One optimization run of the adversarial-offspring algorithm.

    Per generation: train the generator/critic pair on the current survivors
    (critic pre-trained against the previously eliminated individuals), sample
    N offspring, mutate them, merge with the parents, apply reference-vector
    selection, and adapt the vectors to the merged objective ranges.
    """
    problem, weights = resolve_setup(cfg)
    n_pop = weights.shape[0]
    refs = to_unit_vectors(weights)
    front = sample_front(problem, reference_front_size(problem.m))
    counter = EvaluationCounter()
    started = time.perf_counter()

    pop = evaluate(init_population(problem, n_pop, rng.child("init")), problem, counter)
    gan = OffspringGan(problem.n, cfg.gan, rng.child("gan"))
    mut_rng = rng.child("mutation")
    eliminated = Population()
    trace: list[float] = []
    gan_trace: list[EpochStats] = []

    for t in range(cfg.generations):
        corpus = TrainingCorpus(
            real=normalize_to_net(pop.decision_matrix(), problem.lower, problem.upper),
            bad=(
                normalize_to_net(eliminated.decision_matrix(), problem.lower, problem.upper)
                if len(eliminated)
                else np.zeros((0, problem.n))
            ),
        )
        gan_trace.extend(gan.next_generation(corpus))
        offspring = gan.sample(n_pop, problem.lower, problem.upper)
        offspring = mutate_population(offspring, problem.lower, problem.upper, cfg.mutation, mut_rng)
        offspring = evaluate(offspring, problem, counter)

        union = Population(members=list(pop.members) + list(offspring.members), generation=t)
        result = elitism_select(union, refs, t, cfg.generations, cfg.alpha)
        refs = adapt(refs, result.z_max, result.z_min)
        kept = set(int(i) for i in result.selected_indices)
        eliminated = Population(
            members=[union.members[i] for i in range(len(union)) if i not in kept]
        )
        pop = Population(members=list(result.population.members), generation=t + 1)
        trace.append(igd(front, pop.objective_matrix()).value)

    return RunRecord(
        config=config_snapshot(cfg, n_pop),
        seed=rng.seed,
        igd_trace=trace,
        final_x=pop.decision_matrix(),
        final_f=pop.objective_matrix(),
        evaluations=counter.count,
        duration=time.perf_counter() - started,
        gan_trace=gan_trace,
        networks={"generator": gan.generator, "critic": gan.critic},
    )


def nsga2_run(cfg: RunConfig, rng: RandomSource) -> RunRecord:
    """NSGA-II under the same evaluation protocol (N offspring per generation)."""
    problem, weights = resolve_setup(cfg)
    n_pop = weights.shape[0] if cfg.pop_size is None else cfg.pop_size
    front = sample_front(problem, reference_front_size(problem.m))
    counter = EvaluationCounter()
    started = time.perf_counter()

    pop = evaluate(init_population(problem, n_pop, rng.child("init")), problem, counter)
    loop_rng = rng.child("nsga2")
    trace: list[float] = []
    for _ in range(cfg.generations):
        pop = nsga2_generation(pop, problem, cfg.mutation, cfg.eta_c, loop_rng, counter)
        trace.append(igd(front, pop.objective_matrix()).value)

    return RunRecord(
        config=config_snapshot(cfg, n_pop),
        seed=rng.seed,
        igd_trace=trace,
        final_x=pop.decision_matrix(),
        final_f=pop.objective_matrix(),
        evaluations=counter.count,
        duration=time.perf_counter() - started,
    )


def run_single(cfg: RunConfig, seed: int) -> RunRecord:
    rng = RandomSource(seed)
    if cfg.algorithm == "rvea-wg":
        return rvea_wg_run(cfg, rng)
    return nsga2_run(cfg, rng)


@dataclass
class ExperimentRow:
    problem: str
    objectives: int
    algorithm: str
    runs: int
    mean_igd: float
    std_igd: float
    per_run: list[float]
    best: bool = False


def _run_job(args: tuple[RunConfig, int]) -> float:
    cfg, seed = args
    try:
        return run_single(cfg, seed).final_igd
    except Exception as exc:  # noqa: BLE001 - failed runs become NaN cells
        print(f"run failed ({cfg.algorithm}, {cfg.problem}, seed {seed}): {exc}")
        return float("nan")


def run_experiment(configs: list[RunConfig], jobs: int = 1) -> list[ExperimentRow]:
    """Execute runs x configs with paired per-run seeds (base seed + run index).

    Configs are validated up front; a run that fails afterwards contributes
    NaN to its row and the remaining rows are still produced. Within each
    (problem, M) group the minimum mean is flagged, mirroring the
    bold-minimum convention of benchmark tables.
    """
    jobs_list: list[tuple[RunConfig, int]] = []
    for cfg in configs:
        resolve_setup(cfg)
        for run_index in range(cfg.runs):
            jobs_list.append((cfg, cfg.seed + run_index))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_run_job, jobs_list))
    else:
        values = [_run_job(job) for job in jobs_list]

    rows: list[ExperimentRow] = []
    offset = 0
    for cfg in configs:
        per_run = values[offset : offset + cfg.runs]
        offset += cfg.runs
        finite = [v for v in per_run if np.isfinite(v)]
        stats = aggregate_runs(finite) if finite else None
        rows.append(
            ExperimentRow(
                problem=cfg.problem,
                objectives=cfg.objectives,
                algorithm=cfg.algorithm,
                runs=cfg.runs,
                mean_igd=stats.mean if stats else float("nan"),
                std_igd=stats.std if stats else float("nan"),
                per_run=per_run,
            )
        )

    groups: dict[tuple[str, int], list[ExperimentRow]] = {}
    for row in rows:
        groups.setdefault((row.problem, row.objectives), []).append(row)
    for group in groups.values():
        finite_rows = [r for r in group if np.isfinite(r.mean_igd)]
        if finite_rows:
            min(finite_rows, key=lambda r: r.mean_igd).best = True
    return rows


def _sci(v: float) -> str:
    return f"{v:.5e}"


def write_experiment_csv(rows: list[ExperimentRow], path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    max_runs = max((row.runs for row in rows), default=0)
    header = ["problem", "M", "algorithm", "runs", "mean_igd", "std_igd"]
    header += [f"run_{i}" for i in range(max_runs)]
    header.append("best")
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            cells = [row.problem, row.objectives, row.algorithm, row.runs]
            cells += [_sci(row.mean_igd), _sci(row.std_igd)]
            cells += [_sci(v) for v in row.per_run]
            cells += [""] * (max_runs - row.runs)
            cells.append(int(row.best))
            writer.writerow(cells)


def emit_plot_data(record: RunRecord, out_dir: Path) -> list[Path]:
    """Write igd_trace.csv and objectives.csv (full precision, round-trippable)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    trace_path = out_dir / "igd_trace.csv"
    with trace_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "igd"])
        for gen, value in enumerate(record.igd_trace):
            writer.writerow([gen, repr(float(value))])
    obj_path = out_dir / "objectives.csv"
    with obj_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i + 1}" for i in range(record.final_f.shape[1])])
        for row in record.final_f:
            writer.writerow([repr(float(v)) for v in row])
    written = [trace_path, obj_path]
    if record.gan_trace:
        gan_path = out_dir / "gan_trace.csv"
        with gan_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "critic_loss", "gen_loss", "wasserstein_estimate", "penalty"])
            for s in record.gan_trace:
                writer.writerow(
                    [s.epoch, repr(s.critic_loss), repr(s.gen_loss), repr(s.wasserstein), repr(s.penalty)]
                )
        written.append(gan_path)
    return written
