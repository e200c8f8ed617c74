"""
Probabilities of regular languages under stochastic context-free grammars
"""
__version__ = '0.1.0'

# grammars and automata
from .grammar import (
    Wcfg, SnfWcfg, Rule, Kind, GrammarClass, parse_grammar, classify, to_snf,
    encoding_size, bad_family, derivation_weight, sample_derivation)
from .automata import (
    Dfa, PatternKind, parse_dfa, complete_dfa, build_pattern_dfa, figure_dfa)
from .product import ProductWcfg, intersect, regular_probability_of

# equations, analysis and solver
from .core.equations import PolySystem, build_system
from .core.analysis import (
    AnalysisReport, analyze, analyze_grammar, zero_variables, one_variables,
    critical_sccs, critical_depth, tweak_grammar)
from .core.solver import (
    NewtonConfig, SolveMode, SolveTrace, rounded_newton, newton_step,
    required_h_noncritical, required_h_critical, kleene_oracle, sample_strings)
from .pipeline import ProbabilityResult, compute_regular_probability, termination

# balance and collapse
from .core.balance import (
    TripleVector, TripleMatrix, is_balanced_vector, is_balanced_matrix,
    collapse_vector, collapse_matrix, max_balance_defect)

# parameter estimation
from .estimation import (
    DerivationCorpus, load_corpus, parse_corpus, estimate, verify_estimated,
    sample_corpus)
