from fractions import Fraction

import pandas as pd
from tabulate import tabulate

from .equations import build_system
from .exactmath import inverse_if_nonneg, nonneg_solution_exists, rat_matrix
from ..utils._logger import Logged
from ..utils.exceptions import (
    ConsistencyError, NoInternalLRuleError, NotPpsError, NotScfgError,
    InputError)


class ReducedSystem:
    """ Polynomial system with the variables that are 0 in the LFP removed

    Parameters
    ----------
    system : PolySystem
        the reduced system
    kept : tuple of int
        for every variable of the reduced system its index in the
        original system
    zeros : frozenset of str
        names of the removed variables

    Attributes
    ----------
    system, kept, zeros
        see Parameters
    """

    def __init__(self, system, kept, zeros):
        """ See help(ReducedSystem) for more info """
        self.system = system
        self.kept = tuple(kept)
        self.zeros = frozenset(zeros)

    def __repr__(self):
        return (f'ReducedSystem({len(self.system)} variables, '
                f'{len(self.zeros)} zeros removed)')

    def expand(self, vector, size):
        """ Vector of the original system with 0 for removed variables

        Parameters
        ----------
        vector : sequence
            one value per variable of the reduced system
        size : int
            number of variables of the original system

        Returns
        -------
        list
            the expanded vector
        """
        full = [Fraction(0)]*size
        for i, value in zip(self.kept, vector):
            full[i] = value
        return full


def zero_variables(p):
    """ Variables with value 0 in the least fixed point

    A variable is nonzero if its polynomial has a positive constant term
    or a monomial of which all variables are nonzero. The marking is
    repeated until nothing changes, the unmarked variables are 0.

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    frozenset of str
        names of the zero variables
    """
    nonzero = set()
    changed = True
    while changed:
        changed = False
        for i, polynomial in enumerate(p.polynomials):
            if i in nonzero:
                continue
            if any(all(j in nonzero for j in monomial) for monomial in polynomial):
                nonzero.add(i)
                changed = True
    return frozenset(name for i, name in enumerate(p.variables)
                     if i not in nonzero)


def remove_zeros(p):
    """ Remove the zero variables and substitute 0 for them

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    ReducedSystem
        the system over the remaining variables, its LFP is positive
    """
    zeros = zero_variables(p)
    kept = [i for i, name in enumerate(p.variables) if name not in zeros]
    values = {i: 0 for i, name in enumerate(p.variables) if name in zeros}
    return ReducedSystem(p.subsystem(kept, values), kept, zeros)


def _eigen_feasible(B):
    """ Decide if B u = u has a solution u >= 0 with sum(u) = 1 """
    n = B.shape[0]
    rows = [[B[i, j] - int(i == j) for j in range(n)] for i in range(n)]
    rows.append([1]*n)
    return nonneg_solution_exists(rat_matrix(rows), [0]*n + [1])


class _Classification:
    """ Zero, one and critical classification of a PPS """

    def __init__(self, p):
        if not p.is_pps:
            raise NotPpsError(
                'the system is not probabilistic, some polynomial has '
                'coefficients that sum to more than 1')

        self.system = p
        self.reduced = remove_zeros(p)
        r = self.reduced.system
        self.dag = dag = r.scc_dag()

        one, critical = set(), []
        for S in dag.bottom_up():
            members, below = dag.members[S], dag.below[S]
            if not all(j in one for j in below):
                continue

            block = r.subsystem(members, {j: 1 for j in below})
            if any(sum(poly.values(), Fraction(0)) != 1
                   for poly in block.polynomials):
                continue

            B = block.jacobian([1]*len(block))
            feasible = _eigen_feasible(B)
            if feasible or inverse_if_nonneg(B) is not None:
                one.update(members)
                if feasible:
                    critical.append(S)

        self.one = one
        self.critical = critical

        # longest chain of critical components starting in or below S
        chain = {}
        for S in dag.bottom_up():
            lower = max((chain[T] for T in dag.successors[S]), default=0)
            chain[S] = lower + int(S in critical)
        self.chain = chain
        self.bottom = [S for S in critical
                       if max((chain[T] for T in dag.successors[S]),
                              default=0) == 0]

    def names(self, indices):
        r = self.reduced.system
        return frozenset(r.variables[i] for i in indices)

    def sccs(self, components):
        return [self.names(self.dag.members[S]) for S in components]

    @property
    def depth(self):
        return max(self.chain.values(), default=0)


def one_variables(p):
    """ Variables with value 1 in the least fixed point of a PPS

    Works on the system with zero variables removed. Per component, in
    bottom up order, the variables are 1 if every variable below it is
    1, every polynomial of the component sums to 1 after substituting 1
    for the variables below, and the spectral radius of the Jacobian
    B(1) of the component is at most 1. The last test is decided exactly:
    either (I - B(1))^-1 exists and is nonnegative or B(1) u = u has a
    nonnegative solution with sum 1.

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    frozenset of str
        names of the variables with value 1

    Raises
    ------
    NotPpsError
        If the system is not probabilistic
    """
    classification = _Classification(p)
    return classification.names(classification.one)


def critical_sccs(p):
    """ Critical strongly connected components of a PPS

    A component is critical if all its variables are 1 and the Jacobian
    B(1) of the component has an eigenvector u >= 0 with B(1) u = u.

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    list of frozenset
        the critical components as sets of variable names, in bottom up
        order

    Raises
    ------
    NotPpsError
        If the system is not probabilistic
    """
    classification = _Classification(p)
    return classification.sccs(classification.critical)


def bottom_critical_sccs(p):
    """ Critical components without a critical component below them """
    classification = _Classification(p)
    return classification.sccs(classification.bottom)


def critical_depth(p):
    """ Critical depth of a PPS

    The maximum length k of a chain of critical components S_1, ..., S_k
    in which S_(i+1) is below S_i, 0 for a noncritical system.

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    int
        the critical depth

    Raises
    ------
    NotPpsError
        If the system is not probabilistic
    """
    return _Classification(p).depth


def is_critical_overall(p, q):
    """ Decide if B(q) u = u has a solution u >= 0 with sum(u) = 1

    At the least fixed point q of a PPS this holds if and only if the
    system has a critical component.

    Parameters
    ----------
    p : PolySystem
        the system
    q : sequence of Fraction
        the exact least fixed point

    Returns
    -------
    bool
        True if the Jacobian at q has a nonnegative eigenvector for the
        eigenvalue 1
    """
    if not len(p):
        return False
    return _eigen_feasible(p.jacobian(q))


class AnalysisReport(Logged):
    """ Qualitative analysis of a polynomial system

    Parameters
    ----------
    p : PolySystem
        the analysed system
    encoding_size : int, optional, default: None
        encoding size of the grammar of the system

    Attributes
    ----------
    system : PolySystem
        the analysed system
    zero_vars : frozenset of str
        variables with value 0
    one_vars : frozenset of str
        variables with value 1, empty if the system is not a PPS
    critical_sccs : list of frozenset
        critical components as sets of variable names
    bottom_critical_sccs : list of frozenset
        critical components without a critical component below them
    critical_depth : int
        the critical depth
    encoding_size : int or None
        encoding size of the grammar, None for a bare system
    logger : dict
        dict of warnings and messages
    """

    def __init__(self, p, encoding_size=None):
        """ See help(AnalysisReport) for more info """
        self._new_logger()
        self.system = p
        self.encoding_size = encoding_size
        self.zero_vars = zero_variables(p)

        if p.is_pps:
            classification = _Classification(p)
            self.one_vars = classification.names(classification.one)
            self.critical_sccs = classification.sccs(classification.critical)
            self.bottom_critical_sccs = classification.sccs(classification.bottom)
            self.critical_depth = classification.depth
        else:
            self.one_vars = frozenset()
            self.critical_sccs = []
            self.bottom_critical_sccs = []
            self.critical_depth = 0
            self._warning(
                'system is not probabilistic, only zero variables are '
                'classified')

        self._info(f'{len(p)} variables, {len(self.zero_vars)} with value 0, '
                   f'{len(self.one_vars)} with value 1')
        if self.critical_sccs:
            self._info(f'{len(self.critical_sccs)} critical SCCs, critical '
                       f'depth {self.critical_depth}')
        else:
            self._info('system is noncritical')

    def __repr__(self):
        return (f'AnalysisReport({len(self.system)} variables, critical depth '
                f'{self.critical_depth})')

    @property
    def is_critical(self):
        """ True if the system has a critical component """
        return bool(self.critical_sccs)

    def _ordered(self, names):
        return [v for v in self.system.variables if v in names]

    def to_json(self):
        """ JSON serialisable dict of the report """
        return {'zero': self._ordered(self.zero_vars),
                'one': self._ordered(self.one_vars),
                'critical_sccs': [self._ordered(S) for S in self.critical_sccs],
                'critical_depth': self.critical_depth,
                'encoding_size': self.encoding_size}

    def to_dataframe(self):
        """ Classification per variable as a pandas DataFrame

        Returns
        -------
        pd.DataFrame
            one row per variable with the columns scc, zero, one and
            critical
        """
        p = self.system
        dag = p.scc_dag()
        critical = set().union(*self.critical_sccs)
        df = pd.DataFrame({
            'scc': list(dag.scc_of),
            'zero': [v in self.zero_vars for v in p.variables],
            'one': [v in self.one_vars for v in p.variables],
            'critical': [v in critical for v in p.variables]},
            index=pd.Index(p.variables, name='variable'))
        return df

    def print_report(self):
        """ Print a table with the classification of every variable """
        df = self.to_dataframe()
        print(tabulate(df, headers='keys', tablefmt='github'))
        print()
        print(f'critical depth: {self.critical_depth}')
        if self.encoding_size is not None:
            print(f'encoding size: {self.encoding_size}')


def analyze(p, encoding_size=None):
    """ Analyse a polynomial system, see :py:class:`AnalysisReport` """
    return AnalysisReport(p, encoding_size=encoding_size)


def analyze_grammar(g):
    """ Analyse the system of a grammar

    Parameters
    ----------
    g : Wcfg
        the grammar, converted to simple normal form if needed

    Returns
    -------
    AnalysisReport
        the report of the system of the grammar in simple normal form,
        with its encoding size
    """
    # circular import, the grammar module imports from core
    from ..grammar import SnfWcfg, encoding_size, to_snf

    snf = g if isinstance(g, SnfWcfg) else to_snf(g)
    return AnalysisReport(build_system(snf), encoding_size=encoding_size(snf))


def tweak_factor(size, eps, depth):
    """ The factor delta of the tweak of a critical grammar

    .. math::
       \\delta = 2^{-(14|G|+3) 2^{c}} \\varepsilon^{2^{c}}

    Parameters
    ----------
    size : int
        encoding size |G|
    eps : Fraction
        the requested precision, in (0, 1]
    depth : int
        critical depth c

    Returns
    -------
    Fraction
        the exact factor delta
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f'eps must be in (0, 1], is {eps}')
    power = 2**depth
    return Fraction(1, 2**((14*size + 3)*power))*eps**power


def tweak_grammar(g, eps):
    """ Make a critical grammar noncritical

    In every bottom-critical component the lexicographically first unit
    rule A -> B with A and B in the component gets its weight multiplied
    by 1 - delta, see :py:func:`tweak_factor`. A noncritical grammar is
    returned unchanged. Variables with value 0 are not analysed.

    Parameters
    ----------
    g : SnfWcfg
        an SCFG in simple normal form
    eps : Fraction
        the requested precision, in (0, 1]

    Returns
    -------
    SnfWcfg
        the noncritical grammar

    Raises
    ------
    NotScfgError
        If the grammar is not an SCFG
    NoInternalLRuleError
        If a bottom-critical component has no unit rule inside it
    ConsistencyError
        If the tweaked grammar is still critical
    """
    from ..grammar import Kind, Rule, SnfWcfg, encoding_size

    system = build_system(g)
    if not system.is_pps:
        raise NotScfgError('only an SCFG can be tweaked')

    report = AnalysisReport(system)
    if not report.is_critical:
        return g

    delta = tweak_factor(encoding_size(g), eps, report.critical_depth)
    rules = list(g.rules)
    for S in report.bottom_critical_sccs:
        candidates = sorted(
            (rule.lhs, rule.rhs[0], k) for k, rule in enumerate(g.rules)
            if g.kinds[rule.lhs] is Kind.L and rule.lhs in S
            and rule.rhs[0] in S)
        if not candidates:
            raise NoInternalLRuleError(
                f'critical SCC {sorted(S)} has no unit rule inside it')

        k = candidates[0][2]
        rule = rules[k]
        rules[k] = Rule(rule.lhs, rule.rhs, rule.weight*(1 - delta))

    tweaked = SnfWcfg(g.nonterminals, g.terminals, rules, g.start,
                      kinds=g.kinds, origin=g.origin)
    if critical_sccs(build_system(tweaked)):
        raise ConsistencyError('tweaked grammar is still critical')
    return tweaked
