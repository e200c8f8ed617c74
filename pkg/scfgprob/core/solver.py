from enum import Enum
from fractions import Fraction

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from tabulate import tabulate

from .exactmath import (
    ceil_log2, format_rational, identity, max_norm, rat_vector,
    round_down_dyadic, solve_linear, zeros)
from ..utils._kwarg_validator import _newton_vkwargs, _process_kwargs
from ..utils._logger import Logged
from ..utils._progress import ProgressBar
from ..utils.exceptions import (
    AlphabetMismatchError, InputError, IterationBudgetExceededError,
    SingularJacobianError, SingularMatrixError, solver_warning)


class SolveMode(Enum):
    """ Modes of the rounded Newton solver

    The certified modes run a fixed number of iterations with a rounding
    parameter for which the error is proven to be at most eps, adaptive
    mode doubles the rounding parameter until the answer stabilises.
    """
    CERTIFIED_NONCRITICAL = 'certified-noncritical'
    CERTIFIED_TWEAKED = 'certified-tweaked'
    ADAPTIVE = 'adaptive'

    @property
    def certified(self):
        return self is not SolveMode.ADAPTIVE


class NewtonConfig:
    """ Configuration of rounded Newton's method

    Parameters
    ----------
    mode : {'certified-noncritical', 'certified-tweaked', 'adaptive'}, optional, default: 'adaptive'
        mode of the solver
    h : int
        rounding parameter, iterates are rounded down to multiples of
        2^-(h+2). Required in the certified modes, in adaptive mode the
        first value of the doubling sequence
    max_iters : int, optional, default: h+1
        number of iterations of a certified solve
    eps : Fraction, int or str
        requested precision in (0, 1]. Required in adaptive mode and for
        a tweaked grammar, where it is the eps of the tweak
    initial_h : int, optional, default: None
        adaptive mode only, first rounding parameter, derived from eps
        as max(8, ceil(log2(1/eps)) + 4) if not given
    max_h : int, optional, default: 4096
        adaptive mode only, largest rounding parameter before giving up
    decomposed : bool, optional, default: True
        adaptive mode only, solve per SCC bottom up, substituting the
        solved values of the lower components

    Raises
    ------
    InputError
        If a keyword is unknown, invalid or a required one is missing
    """

    def __init__(self, mode='adaptive', **kwargs):
        """ See help(NewtonConfig) for more info """
        params = _process_kwargs({'mode': mode, **kwargs},
                                 _newton_vkwargs(mode))

        self.mode = SolveMode(getattr(params['mode'], 'value', params['mode']))
        self.h = params['h']
        self.eps = None if params['eps'] is None else Fraction(params['eps'])

        if self.mode.certified:
            self.max_iters = (self.h + 1 if params['max_iters'] is None
                              else params['max_iters'])
            self.initial_h, self.max_h, self.decomposed = None, None, False
        else:
            self.max_iters = params['max_iters']
            self.max_h = params['max_h']
            self.decomposed = params['decomposed']
            self.initial_h = params['initial_h'] or self.h or max(
                8, ceil_log2(1/self.eps) + 4)

    def __repr__(self):
        if self.mode.certified:
            return (f'NewtonConfig(mode={self.mode.value}, h={self.h}, '
                    f'max_iters={self.max_iters})')
        return (f'NewtonConfig(mode={self.mode.value}, eps={self.eps}, '
                f'initial_h={self.initial_h}, max_h={self.max_h})')


def newton_step(p, z):
    """ One exact Newton step

    .. math::
       N(z) = z + (I - B(z))^{-1} (P(z) - z)

    Parameters
    ----------
    p : PolySystem
        the system
    z : sequence of Fraction
        the current point, nonnegative

    Returns
    -------
    np.ndarray
        the exact Newton iterate N(z)

    Raises
    ------
    SingularJacobianError
        If I - B(z) is singular
    """
    z = rat_vector(z)
    n = len(z)
    try:
        delta = solve_linear(identity(n) - p.jacobian(z), p.evaluate(z) - z)
    except SingularMatrixError:
        raise SingularJacobianError(
            'I - B(z) is singular, z is outside the domain of Newton\'s method')
    return rat_vector(z + delta)


def residual(p, x):
    """ Maximum norm of P(x) - x """
    return max_norm(p.evaluate(x) - rat_vector(x))


def required_h_noncritical(g_size, d, eps):
    """ Rounding parameter for a noncritical grammar

    .. math::
       h = 14|G| + 3 + \\lceil \\log_{2}(1/\\varepsilon) + \\log_{2} d \\rceil

    Parameters
    ----------
    g_size : int
        encoding size of the grammar in simple normal form
    d : int
        number of states of the DFA
    eps : Fraction
        requested precision in (0, 1]

    Returns
    -------
    int
        the rounding parameter h
    """
    eps = _check_eps(eps)
    return 14*g_size + 3 + ceil_log2(Fraction(d)/eps)


def required_h_critical(g_size, d, eps, c):
    """ Rounding parameter for a tweaked critical grammar

    .. math::
       h = \\lceil \\log_{2} d + (3 \\cdot 2^{c}+1)(\\log_{2}(1/\\varepsilon)
       + 14|G|+3) \\rceil

    Parameters
    ----------
    g_size : int
        encoding size of the grammar in simple normal form, before the
        tweak
    d : int
        number of states of the DFA
    eps : Fraction
        requested precision in (0, 1]
    c : int
        critical depth of the grammar

    Returns
    -------
    int
        the rounding parameter h
    """
    eps = _check_eps(eps)
    m = 3*2**c + 1
    return m*(14*g_size + 3) + ceil_log2(Fraction(d)/eps**m)


def _check_eps(eps):
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f'eps must be in (0, 1], is {eps}')
    return eps


class SolveTrace(Logged):
    """ Iterates and outcome of rounded Newton's method

    Parameters
    ----------
    variables : tuple of str
        names of the variables of the solved system
    mode : SolveMode
        mode of the solver

    Attributes
    ----------
    variables : tuple of str
        names of the variables
    mode : SolveMode
        mode of the solver
    iterates : list of DyadicVector
        the rounded iterates, starting with the zero vector. In adaptive
        mode the final vector of every rounding parameter that was tried
    h : int
        the (final) rounding parameter
    iterations : int
        number of Newton steps that changed an iterate, summed over the
        rounding parameters and components in adaptive mode
    rounds : int
        number of rounding parameters tried, 1 in the certified modes
    residual : Fraction
        maximum norm of P(x) - x at the final iterate
    certified : bool
        True if the error bound is proven
    certified_error : Fraction or None
        the proven bound on the error, None if not certified
    logger : dict
        dict of warnings and messages
    """

    def __init__(self, variables, mode):
        """ See help(SolveTrace) for more info """
        self._new_logger()
        self.variables = tuple(variables)
        self.mode = mode
        self.iterates = []
        self.h = None
        self.iterations = 0
        self.rounds = 0
        self.residual = None
        self.certified = mode.certified
        self.certified_error = None

    def __repr__(self):
        return (f'SolveTrace(mode={self.mode.value}, h={self.h}, '
                f'{self.iterations} iterations)')

    @property
    def final(self):
        """ The last iterate """
        return self.iterates[-1]

    def value(self, name):
        """ Final value of a variable """
        return self.final[self.variables.index(name)]

    def to_json(self):
        """ JSON serialisable dict of the trace """
        return {'mode': self.mode.value,
                'certified': self.certified,
                'h': self.h,
                'iterations': self.iterations,
                'rounds': self.rounds,
                'variables': list(self.variables),
                'iterates': [x.to_json() for x in self.iterates],
                'residual': format_rational(self.residual),
                'certified_error': (None if self.certified_error is None
                                    else format_rational(self.certified_error))}

    def to_dataframe(self):
        """ Iterates as a pandas DataFrame, one row per iterate

        Values are converted to float, use :py:attr:`iterates` for the
        exact values.
        """
        data = [[float(value) for value in x] for x in self.iterates]
        df = pd.DataFrame(data, columns=list(self.variables))
        df.index.name = 'iterate'
        return df

    def print_trace(self, variables=None, decimals=6):
        """ Print a table of the iterates

        Parameters
        ----------
        variables : list of str, optional, default: None
            variables to print, all if None
        decimals : int, optional, default: 6
            number of decimals
        """
        df = self.to_dataframe()
        if variables is not None:
            df = df[list(variables)]
        print(tabulate(df.round(decimals), headers='keys', tablefmt='github'))

    def plot(self, variables=None, save_name=None):
        """ Plot the convergence of the iterates

        The distance to the final iterate is plotted on a log scale for
        every variable.

        Parameters
        ----------
        variables : list of str, optional, default: None
            variables to plot, all if None
        save_name : str, optional, default: None
            if given the plot is not shown but saved with the given name
        """
        variables = list(self.variables if variables is None else variables)
        final = self.final

        for name in variables:
            i = self.variables.index(name)
            gaps = [float(final[i] - x[i]) for x in self.iterates[:-1]]
            gaps = [gap if gap > 0 else np.nan for gap in gaps]
            plt.semilogy(range(len(gaps)), gaps, marker='.', label=name)

        plt.xlabel('iteration')
        plt.ylabel('distance to final iterate')
        plt.title(f'Rounded Newton, {self.mode.value}, h = {self.h}')
        plt.grid()
        if len(variables) <= 10:
            plt.legend()
        plt.tight_layout()

        if save_name is not None:
            plt.savefig(f'{save_name}.png')
            plt.close()
        else:
            plt.show()


def _iterate(p, h, max_iters, iterates=None, log=None):
    """ Rounded Newton from 0 until a repeated iterate or max_iters

    Parameters
    ----------
    p : PolySystem
        the system
    h : int
        rounding parameter, iterates are rounded at h+2 bits
    max_iters : int
        maximum number of iterations
    iterates : list, optional, default: None
        if given every iterate is appended to it
    log : SolveTrace, optional, default: None
        if given a singular Jacobian ends the iteration with a warning
        in its logger, otherwise the error is raised

    Returns
    -------
    tuple
        the last iterate as a DyadicVector and the number of Newton
        steps that changed it
    """
    x = round_down_dyadic(zeros(len(p)), h + 2)
    steps = 0
    if iterates is not None:
        iterates.append(x)

    for k in range(max_iters):
        try:
            exact = newton_step(p, x)
        except SingularJacobianError:
            if log is None:
                raise
            log._warning(
                f'singular Jacobian after {k} iterations at h = {h} for '
                f'{", ".join(p.variables[:3])}{"..." if len(p) > 3 else ""}, '
                'iteration stopped')
            break

        rounded = round_down_dyadic(exact, h + 2)
        if rounded == x:
            break
        x = rounded
        steps += 1
        if iterates is not None:
            iterates.append(x)
    return x, steps


def _solve_decomposed(p, h, trace):
    """ Rounded Newton per SCC, lower components first """
    dag = p.scc_dag()
    values = {}
    for S in dag.bottom_up():
        members = dag.members[S]
        block = p.subsystem(members, {j: values[j] for j in dag.below[S]})
        x, steps = _iterate(block, h, h + 1, log=trace)
        trace.iterations += steps
        for i, value in zip(members, x):
            values[i] = value
    return round_down_dyadic([values[i] for i in range(len(p))], h + 2)


def rounded_newton(p, cfg):
    """ Rounded-down Newton's method

    Starting at 0 every iterate is the exact Newton step of the previous
    one, rounded down to a nonnegative multiple of 2^-(h+2). A repeated
    iterate ends the iteration early, all later iterates would be equal.

    The certified modes run at most max_iters iterations with the given
    h. Adaptive mode starts at initial_h and doubles h until the final
    vectors of two successive rounding parameters differ at most eps/2,
    a singular Jacobian then ends the iteration with a warning instead
    of an error.

    Parameters
    ----------
    p : PolySystem
        the system, without zero variables
    cfg : NewtonConfig
        the configuration

    Returns
    -------
    SolveTrace
        the iterates and the outcome

    Raises
    ------
    SingularJacobianError
        In the certified modes, if I - B(x) is singular at an iterate
    IterationBudgetExceededError
        In adaptive mode, if h would exceed max_h
    """
    trace = SolveTrace(p.variables, cfg.mode)

    if cfg.mode.certified:
        trace.h = cfg.h
        if cfg.h > 10000:
            solver_warning(
                f'certified rounding parameter h = {cfg.h} is very large, '
                'the solve may not finish in reasonable time')
        _, trace.iterations = _iterate(p, cfg.h, cfg.max_iters,
                                       iterates=trace.iterates)
        trace.rounds = 1
        trace.certified_error = cfg.eps
        trace._info(f'{trace.iterations} iterations with h = {cfg.h}')
    else:
        h, previous = cfg.initial_h, None
        while True:
            if h > cfg.max_h:
                raise IterationBudgetExceededError(
                    f'no agreement within eps = {cfg.eps} up to h = '
                    f'{cfg.max_h}')

            if cfg.decomposed:
                x = _solve_decomposed(p, h, trace)
            else:
                x, steps = _iterate(p, h, cfg.max_iters or h + 1, log=trace)
                trace.iterations += steps
            trace.iterates.append(x)
            trace.rounds += 1
            trace._info(f'solved with h = {h}')

            if previous is not None:
                gap = max_norm(x.to_fractions() - previous.to_fractions())
                if gap <= cfg.eps/2:
                    break
            previous, h = x, 2*h
        trace.h = h

    trace.residual = residual(p, trace.final)
    return trace


def kleene_oracle(p, iters, bits=None):
    """ Kleene iteration x <- P(x) from 0

    Parameters
    ----------
    p : PolySystem
        the system
    iters : int
        number of iterations
    bits : int, optional, default: None
        if given every iterate is rounded down at this number of bits,
        which keeps the numbers small and the iterate below the exact one

    Returns
    -------
    np.ndarray
        the iterate, nondecreasing in iters and never above the LFP
    """
    x = zeros(len(p))
    for _ in range(iters):
        x = p.evaluate(x)
        if bits is not None:
            x = round_down_dyadic(x, bits).to_fractions()
    return x


def sample_strings(g, A, d, trials, step_cap=10000, seed=None,
                   progress=False):
    """ Monte-Carlo estimate of the probability of a regular language

    Samples leftmost derivations from A and counts the ones that end
    within step_cap rule applications with a string accepted by d.

    Parameters
    ----------
    g : Wcfg
        an SCFG
    A : str
        the nonterminal to start from
    d : Dfa
        the automaton
    trials : int
        number of samples
    step_cap : int, optional, default: 10000
        maximum number of rule applications of a derivation, longer ones
        count as not accepted
    seed : int, optional, default: None
        seed of ``numpy.random.default_rng``
    progress : bool, optional, default: False
        show a progress bar on stderr

    Returns
    -------
    Fraction
        the fraction of accepted samples
    """
    from ..grammar import sample_derivation

    missing = [a for a in g.terminals if a not in set(d.alphabet)]
    if missing:
        raise AlphabetMismatchError(
            f'terminals {missing} are not in the alphabet of the DFA')
    if trials < 1:
        raise InputError(f'trials must be at least 1, is {trials}')

    rng = np.random.default_rng(seed)
    accepted = 0
    with ProgressBar(trials, 'Sampling', disable=not progress) as bar:
        for _ in range(trials):
            sample = sample_derivation(g, rng, A=A, step_cap=step_cap)
            if sample is not None and d.run(sample[1])[1]:
                accepted += 1
            bar.next()
    return Fraction(accepted, trials)
