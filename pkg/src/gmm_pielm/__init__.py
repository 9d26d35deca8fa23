"""Residual-adaptive Gaussian RBF collocation for stiff 1D boundary-value problems."""
from .adaptive import AdaptConfig, IterationRecord, RunResult, hybrid_resample, run, run_baseline
from .density import ResidualField
from .gmm import GmmParams, WeightedDataset
from .problems import ProblemKind, ProblemSpec, double_layer, exact_solution, operator_coefficients, single_layer
from .rbf import RbfBasis, knn_widths, uniform_init
from .system import LinearSystem, Solution, assemble, predict, residual_field, solve_least_squares

__version__ = "0.1.0"
