from fractions import Fraction

from .automata import PatternKind, build_pattern_dfa
from .core.analysis import AnalysisReport, remove_zeros, tweak_grammar
from .core.equations import build_system
from .core.exactmath import DyadicVector, format_rational
from .core.solver import (
    NewtonConfig, SolveMode, required_h_critical, required_h_noncritical,
    rounded_newton)
from .grammar import GrammarClass, SnfWcfg, classify, encoding_size, to_snf
from .product import intersect, regular_probability_of
from .utils._logger import Logged
from .utils.exceptions import InputError, NotScfgError


def _decimal(value, places=12):
    """ Decimal string of a rational, exact for dyadic values """
    value = Fraction(value)
    den = value.denominator
    if den & (den - 1) == 0:
        return DyadicVector([value.numerator], den.bit_length() - 1).decimal(0)
    return f'{float(value):.{places}g}'


class ProbabilityResult(Logged):
    """ Probability that a nonterminal generates a string of a language

    The probability is reported as the interval [lo, hi], lo is the sum
    of the rounded-down Newton values of the accepting triples and hi is
    lo + eps (at most 1).

    Attributes
    ----------
    start : str
        the nonterminal
    lo : Fraction
        lower end of the interval, a dyadic rational
    hi : Fraction
        upper end of the interval
    eps : Fraction
        the requested precision
    mode : SolveMode
        mode of the solver
    certified : bool
        True if q lies in [lo, hi] is proven
    h : int or None
        the (final) rounding parameter, None for an exact result
    iterations : int
        number of Newton iterations
    exact : bool
        True if the value is known exactly, lo equals hi
    analysis : AnalysisReport
        analysis of the system of the grammar in simple normal form
    trace : SolveTrace or None
        the solver trace, None for an exact result
    logger : dict
        dict of warnings and messages
    """

    def __init__(self, start, eps, mode, analysis):
        """ See help(ProbabilityResult) for more info """
        self._new_logger()
        self.start = start
        self.eps = Fraction(eps)
        self.mode = mode
        self.certified = mode.certified
        self.analysis = analysis
        self.lo = self.hi = Fraction(0)
        self.h = None
        self.iterations = 0
        self.exact = False
        self.trace = None

    def __repr__(self):
        return (f'ProbabilityResult({self.start}: [{_decimal(self.lo)}, '
                f'{_decimal(self.hi)}], mode={self.mode.value})')

    def _set_exact(self, value):
        self.lo = self.hi = Fraction(value)
        self.exact = True

    def _set_interval(self, lo):
        self.lo = Fraction(lo)
        self.hi = min(self.lo + self.eps, Fraction(1))

    @property
    def probability(self):
        """ The lower end of the interval """
        return self.lo

    def to_json(self):
        """ JSON serialisable dict of the result """
        return {'start': self.start,
                'probability': _decimal(self.lo),
                'probability_lo': format_rational(self.lo),
                'probability_hi': format_rational(self.hi),
                'epsilon': format_rational(self.eps),
                'mode': self.mode.value,
                'certified': self.certified,
                'exact': self.exact,
                'h': self.h,
                'iterations': self.iterations,
                'critical_depth': self.analysis.critical_depth,
                'encoding_size': self.analysis.encoding_size}


def _mode(mode, critical):
    """ Resolve the mode, 'certified' picks the certified mode that fits """
    if getattr(mode, 'value', mode) == 'certified':
        return (SolveMode.CERTIFIED_TWEAKED if critical
                else SolveMode.CERTIFIED_NONCRITICAL)
    try:
        mode = SolveMode(getattr(mode, 'value', mode))
    except ValueError:
        valid = ['certified'] + [m.value for m in SolveMode]
        raise InputError(f'{mode} is not a valid mode, must be in {valid}')
    if mode is SolveMode.CERTIFIED_NONCRITICAL and critical:
        raise InputError(
            'the grammar is critical, certified-noncritical gives no '
            'guarantee, use certified-tweaked or certified')
    return mode


def _prepare(g, eps, mode):
    """ SNF, analysis and the grammar to solve for a mode """
    if classify(g) is GrammarClass.WCFG:
        raise NotScfgError(
            'the grammar is not an SCFG, some nonterminal has rules with '
            'weights summing to more than 1')
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f'eps must be in (0, 1], is {eps}')

    snf = g if isinstance(g, SnfWcfg) else to_snf(g)
    size = encoding_size(snf)
    analysis = AnalysisReport(build_system(snf), encoding_size=size)
    mode = _mode(mode, analysis.is_critical)

    solved = snf
    if mode is SolveMode.CERTIFIED_TWEAKED:
        solved = tweak_grammar(snf, eps)
    return snf, solved, analysis, mode, eps


def _config(mode, eps, analysis, d_size, **kwargs):
    """ Newton configuration with the h of the mode """
    if mode is SolveMode.ADAPTIVE:
        return NewtonConfig(mode=mode, eps=eps, **kwargs)

    if kwargs.get('h') is None:
        size, c = analysis.encoding_size, analysis.critical_depth
        if mode is SolveMode.CERTIFIED_TWEAKED:
            kwargs['h'] = required_h_critical(size, d_size, eps, c)
        else:
            kwargs['h'] = required_h_noncritical(size, d_size, eps)
    return NewtonConfig(mode=mode, eps=eps, **kwargs)


def _solve(system, targets, cfg, result):
    """ Solve the dependency closure of the targets, zeros removed

    Returns
    -------
    dict
        value of every target, exact 0 for the zero variables
    """
    closure = system.dependency_closure(targets)
    sub = system.restrict([v for v in system.variables if v in closure])
    reduced = remove_zeros(sub)
    result._info(f'{len(sub)} of {len(system)} variables needed, '
                 f'{len(reduced.zeros)} with value 0')

    values = {name: Fraction(0) for name in targets}
    if not len(reduced.system):
        return values, None

    trace = rounded_newton(reduced.system, cfg)
    for name, value in zip(reduced.system.variables, trace.final):
        if name in values:
            values[name] = value
    return values, trace


def compute_regular_probability(g, d, A=None, eps=Fraction(1, 2**20),
                                mode='adaptive', **kwargs):
    """ Probability that a nonterminal generates a string accepted by a DFA

    The grammar is converted to simple normal form and analysed, in the
    certified-tweaked mode its critical components are tweaked. The
    system of the product with the DFA is restricted to the triples the
    accepting triples of A depend on, its zero variables are removed and
    it is solved with rounded Newton's method. Without any accepting
    triple with positive value the result is exactly 0.

    Parameters
    ----------
    g : Wcfg
        an SCFG
    d : Dfa
        the automaton
    A : str, optional, default: None
        the nonterminal, the start symbol if None
    eps : Fraction, optional, default: 2^-20
        requested precision in (0, 1]
    mode : {'adaptive', 'certified', 'certified-noncritical', 'certified-tweaked'}, optional, default: 'adaptive'
        mode of the solver, 'certified' picks the tweaked mode for a
        critical grammar and the noncritical mode otherwise
    **kwargs
        further keywords of :py:class:`NewtonConfig`, e.g. h to override
        the rounding parameter of a certified mode

    Returns
    -------
    ProbabilityResult
        the probability as an interval of width at most eps

    Raises
    ------
    NotScfgError
        If the grammar is not an SCFG
    InputError
        If eps is not in (0, 1] or the mode is invalid
    """
    A = g.start if A is None else A
    g.index(A)

    snf, solved, analysis, mode, eps = _prepare(g, eps, mode)
    result = ProbabilityResult(A, eps, mode, analysis)
    if solved is not snf:
        result._info('critical grammar tweaked to a noncritical grammar')

    product = intersect(solved, d)
    accepting = [product.name(d.start, A, t) for t in d.states
                 if t in d.accepting]
    if not accepting:
        result._info('the DFA has no accepting state')
        result._set_exact(0)
        return result

    cfg = _config(mode, eps, analysis, len(d.states), **kwargs)
    system = build_system(product.inner)
    values, trace = _solve(system, accepting, cfg, result)

    if trace is None:
        result._info(f'{A} generates no string accepted by the DFA')
        result._set_exact(0)
        return result

    result.trace = trace
    result.h = trace.h
    result.iterations = trace.iterations
    for msg in trace.logger['WARNING']:
        result._warning(msg)
    if not mode.certified:
        result._warning('adaptive mode, the interval is not certified')

    solution = {product.triple(name): value for name, value in values.items()}
    result._set_interval(regular_probability_of(solution, A, d))
    return result


def termination(g, eps=Fraction(1, 2**20), mode='adaptive', **kwargs):
    """ Termination probabilities of all nonterminals of a grammar

    Nonterminals that terminate with probability 0 or 1 are classified
    exactly, the others are solved as the probability of the language of
    all strings.

    Parameters
    ----------
    g : Wcfg
        an SCFG
    eps : Fraction, optional, default: 2^-20
        requested precision in (0, 1]
    mode : str, optional, default: 'adaptive'
        mode of the solver, see :py:func:`compute_regular_probability`
    **kwargs
        further keywords of :py:class:`NewtonConfig`

    Returns
    -------
    dict
        maps every nonterminal of g to a :py:class:`ProbabilityResult`
    """
    snf, solved, analysis, mode, eps = _prepare(g, eps, mode)
    d = build_pattern_dfa(PatternKind.ALL, '', g.terminals)

    results = {A: ProbabilityResult(A, eps, mode, analysis)
               for A in g.nonterminals}
    unknown = []
    for A, result in results.items():
        if A in analysis.zero_vars:
            result._set_exact(0)
        elif A in analysis.one_vars:
            result._set_exact(1)
        else:
            unknown.append(A)
    if not unknown:
        return results

    cfg = _config(mode, eps, analysis, 1, **kwargs)
    product = intersect(solved, d)
    names = {A: product.name(d.start, A, d.start) for A in unknown}
    system = build_system(product.inner)

    # one result object collects the log of the shared solve
    log = results[unknown[0]]
    values, trace = _solve(system, list(names.values()), cfg, log)
    for A in unknown:
        result = results[A]
        result.trace = trace
        result.h = trace.h
        result.iterations = trace.iterations
        result._set_interval(values[names[A]])
    return results
