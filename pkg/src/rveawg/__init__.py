"""Many-objective evolutionary optimization with reference-vector guided
selection and adversarially generated offspring, plus the DTLZ/LSMOP
benchmark problems, an NSGA-II baseline, and IGD evaluation tooling."""

from .core import (
    ConfigurationError,
    EvaluationCounter,
    EvaluationError,
    Individual,
    Population,
    RandomSource,
    TrainingError,
    evaluate,
    init_population,
)
from .harness import RunConfig, RunRecord, nsga2_run, run_experiment, run_single, rvea_wg_run
from .metrics import IgdResult, aggregate_runs, igd
from .problems import PROBLEM_NAMES, ProblemDef, dtlz, lsmop, make_problem, sample_front
from .refvec import ReferenceVectorSet, adapt, lattice_for, simplex_lattice, to_unit_vectors, two_layer_lattice
from .selection import elitism_select, partition, translate
from .variation import MutationConfig, polynomial_mutation, sbx_crossover
from .wgan import GanConfig, OffspringGan, TrainingCorpus

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "EvaluationCounter",
    "EvaluationError",
    "GanConfig",
    "IgdResult",
    "Individual",
    "MutationConfig",
    "OffspringGan",
    "PROBLEM_NAMES",
    "Population",
    "ProblemDef",
    "RandomSource",
    "ReferenceVectorSet",
    "RunConfig",
    "RunRecord",
    "TrainingCorpus",
    "TrainingError",
    "adapt",
    "aggregate_runs",
    "dtlz",
    "elitism_select",
    "evaluate",
    "igd",
    "init_population",
    "lattice_for",
    "lsmop",
    "make_problem",
    "nsga2_run",
    "partition",
    "polynomial_mutation",
    "run_experiment",
    "run_single",
    "rvea_wg_run",
    "sample_front",
    "sbx_crossover",
    "simplex_lattice",
    "to_unit_vectors",
    "translate",
    "two_layer_lattice",
]
