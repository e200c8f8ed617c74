# exact linear algebra
from .exactmath import (
    to_fraction, format_rational, rat_vector, rat_matrix, solve_linear,
    inverse, inverse_if_nonneg, nonneg_solution_exists, ceil_log2,
    DyadicVector, round_down_dyadic)

# polynomial systems and their analysis
from .equations import PolySystem, SccDag, build_system, evaluate, jacobian, scc_dag
from .analysis import (
    ReducedSystem, AnalysisReport, zero_variables, remove_zeros, one_variables,
    critical_sccs, bottom_critical_sccs, critical_depth, is_critical_overall,
    analyze, tweak_factor)

# rounded newton
from .solver import (
    SolveMode, NewtonConfig, SolveTrace, newton_step, residual,
    required_h_noncritical, required_h_critical, rounded_newton, kleene_oracle)

# balance and collapse
from .balance import (
    TripleVector, TripleMatrix, is_balanced_vector, is_balanced_matrix,
    collapse_vector, collapse_matrix, max_balance_defect)
