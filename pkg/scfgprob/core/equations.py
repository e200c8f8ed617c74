from collections import deque
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exactmath import format_rational, rat_matrix, rat_vector, to_fraction
from ..utils.exceptions import (
    InputError, NotSupportedError, UnknownNonterminalError)


class PolySystem:
    """ Monotone polynomial system x = P(x) with rational coefficients

    Every polynomial is stored as a dict that maps a monomial, the sorted
    tuple of the indices of its variables, to a positive coefficient.
    The empty tuple is the constant term. Monomials have degree at most
    two, the degree of systems built from grammars in simple normal form.

    Parameters
    ----------
    variables : iterable of str
        names of the variables
    polynomials : iterable of dict
        one polynomial per variable, monomials may be given unsorted and
        equal monomials are merged

    Attributes
    ----------
    variables : tuple of str
        names of the variables
    polynomials : tuple of dict
        the merged polynomials
    is_pps : bool
        True if for every polynomial the coefficients sum to at most 1

    Raises
    ------
    InputError
        If a coefficient is negative or a monomial refers to an unknown
        variable
    NotSupportedError
        If a monomial has degree larger than two
    """

    def __init__(self, variables, polynomials):
        """ See help(PolySystem) for more info """
        self.variables = tuple(variables)
        self._index = {name: i for i, name in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise InputError('a variable is declared more than once')

        n = len(self.variables)
        merged = []
        for polynomial in polynomials:
            terms = {}
            for monomial, coefficient in polynomial.items():
                monomial = tuple(sorted(monomial))
                coefficient = to_fraction(coefficient)
                if coefficient < 0:
                    raise InputError('coefficients must be nonnegative')
                if len(monomial) > 2:
                    raise NotSupportedError(
                        f'monomial of degree {len(monomial)}, only degree '
                        'two systems are supported')
                if any(not 0 <= j < n for j in monomial):
                    raise InputError(f'monomial {monomial} has an unknown variable')
                if coefficient:
                    terms[monomial] = terms.get(monomial, 0) + coefficient
            merged.append(terms)

        if len(merged) != n:
            raise InputError(
                f'{len(merged)} polynomials given for {n} variables')

        self.polynomials = tuple(merged)
        self.is_pps = all(sum(p.values(), Fraction(0)) <= 1
                          for p in self.polynomials)
        self._dag = None

    def __len__(self):
        return len(self.variables)

    def __repr__(self):
        kind = 'PPS' if self.is_pps else 'MPS'
        return f'PolySystem({len(self)} variables, {kind})'

    def __eq__(self, other):
        if not isinstance(other, PolySystem):
            return NotImplemented
        return (self.variables == other.variables
                and self.polynomials == other.polynomials)

    def __hash__(self):
        return hash(self.variables)

    def index(self, name):
        """ Position of a variable

        Raises
        ------
        UnknownNonterminalError
            If there is no variable with this name
        """
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNonterminalError(f'{name} is not a variable')

    def constant(self, i):
        """ Constant term of polynomial i """
        return self.polynomials[i].get((), Fraction(0))

    def dependencies(self, i):
        """ Indices of the variables that occur in polynomial i """
        return {j for monomial in self.polynomials[i] for j in monomial}

    def _check_dimension(self, x):
        if len(x) != len(self):
            raise InputError(
                f'vector has length {len(x)}, the system has {len(self)} '
                'variables')

    def evaluate(self, x):
        """ Exact value P(x), see :py:func:`evaluate` """
        self._check_dimension(x)
        x = [Fraction(value) for value in x]
        values = []
        for polynomial in self.polynomials:
            total = Fraction(0)
            for monomial, coefficient in polynomial.items():
                term = coefficient
                for j in monomial:
                    term *= x[j]
                total += term
            values.append(total)
        return rat_vector(values)

    def jacobian(self, x):
        """ Exact Jacobian B(x), see :py:func:`jacobian` """
        self._check_dimension(x)
        x = [Fraction(value) for value in x]
        n = len(self)
        B = [[Fraction(0)]*n for _ in range(n)]
        for i, polynomial in enumerate(self.polynomials):
            for monomial, coefficient in polynomial.items():
                if len(monomial) == 1:
                    B[i][monomial[0]] += coefficient
                elif len(monomial) == 2:
                    j, k = monomial
                    B[i][j] += coefficient*x[k]
                    B[i][k] += coefficient*x[j]
        return rat_matrix(B)

    def scc_dag(self):
        """ SCC condensation of the dependency graph, see :py:func:`scc_dag` """
        if self._dag is None:
            self._dag = SccDag(self)
        return self._dag

    def subsystem(self, rows, values=None):
        """ Restrict the system to some equations, substituting values

        Parameters
        ----------
        rows : iterable of int
            indices of the equations to keep, in the order of the system
        values : dict, optional, default: None
            maps indices of variables that are not kept to the value
            substituted for them

        Returns
        -------
        PolySystem
            the system over the kept variables

        Raises
        ------
        InputError
            If a kept polynomial refers to a variable that is neither
            kept nor substituted
        """
        rows = sorted(set(rows))
        values = {j: Fraction(v) for j, v in (values or {}).items()}
        position = {i: k for k, i in enumerate(rows)}

        polynomials = []
        for i in rows:
            terms = {}
            for monomial, coefficient in self.polynomials[i].items():
                kept = []
                for j in monomial:
                    if j in position:
                        kept.append(position[j])
                    elif j in values:
                        coefficient *= values[j]
                    else:
                        raise InputError(
                            f'{self.variables[i]} depends on '
                            f'{self.variables[j]}, which is neither kept nor '
                            'substituted')
                if coefficient:
                    key = tuple(kept)
                    terms[key] = terms.get(key, 0) + coefficient
            polynomials.append(terms)

        return PolySystem([self.variables[i] for i in rows], polynomials)

    def dependency_closure(self, names):
        """ Names of the variables the given variables depend on, themselves
        included """
        seen = {self.index(name) for name in names}
        queue = deque(sorted(seen))
        while queue:
            i = queue.popleft()
            for j in self.dependencies(i):
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return {self.variables[i] for i in seen}

    def restrict(self, names):
        """ Subsystem of a dependency closed set of variables

        Newton's method on the subsystem gives the same iterates as on
        the full system restricted to these variables.
        """
        return self.subsystem([self.index(name) for name in names])

    def to_json(self):
        """ JSON serialisable report of the system """
        equations = []
        for name, polynomial in zip(self.variables, self.polynomials):
            monomials = []
            for monomial, coefficient in sorted(polynomial.items()):
                exponents = {}
                for j in monomial:
                    exponents[self.variables[j]] = exponents.get(
                        self.variables[j], 0) + 1
                monomials.append([format_rational(coefficient), exponents])
            equations.append({'variable': name, 'monomials': monomials})
        return {'variables': list(self.variables), 'is_pps': self.is_pps,
                'equations': equations}


class SccDag:
    """ Condensation of the dependency graph of a polynomial system

    The dependency graph has an edge from x_i to x_j if x_j occurs in
    P_i. Components are numbered by their smallest variable index.

    Parameters
    ----------
    p : PolySystem
        the system

    Attributes
    ----------
    scc_of : tuple of int
        component of every variable
    members : tuple of tuple
        sorted variable indices of every component
    successors : dict
        maps a component to the set of components it depends on directly
    topo_order : list of int
        components in topological order, dependents before their
        dependencies, ties broken by the smallest variable index
    below : dict
        maps a component S to D(S), the frozenset of variables outside S
        reachable from S
    """

    def __init__(self, p):
        """ See help(SccDag) for more info """
        n = len(p)
        rows, cols = [], []
        for i in range(n):
            for j in sorted(p.dependencies(i)):
                rows.append(i)
                cols.append(j)
        graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(n, n))
        if n:
            _, labels = connected_components(graph, directed=True,
                                             connection='strong')
        else:
            labels = np.zeros(0, dtype=int)

        # renumber by smallest member for a deterministic numbering
        first = {}
        for i, label in enumerate(labels):
            first.setdefault(int(label), len(first))
        self.scc_of = tuple(first[int(label)] for label in labels)
        members = [[] for _ in first]
        for i, S in enumerate(self.scc_of):
            members[S].append(i)
        self.members = tuple(tuple(m) for m in members)

        self.successors = {S: set() for S in range(len(self.members))}
        for i, j in zip(rows, cols):
            S, T = self.scc_of[i], self.scc_of[j]
            if S != T:
                self.successors[S].add(T)
        self.successors = {S: frozenset(T) for S, T in self.successors.items()}

        self.topo_order = self._topological_order()

        self.below = {}
        for S in reversed(self.topo_order):
            reach = set()
            for T in self.successors[S]:
                reach.update(self.members[T])
                reach.update(self.below[T])
            self.below[S] = frozenset(reach)

    def _topological_order(self):
        """ Kahn's algorithm, smallest component first among the ready ones """
        indegree = {S: 0 for S in self.successors}
        for targets in self.successors.values():
            for T in targets:
                indegree[T] += 1

        ready = sorted(S for S, k in indegree.items() if k == 0)
        order = []
        while ready:
            S = ready.pop(0)
            order.append(S)
            for T in sorted(self.successors[S]):
                indegree[T] -= 1
                if indegree[T] == 0:
                    ready.append(T)
            ready.sort()
        return order

    def __len__(self):
        return len(self.members)

    def bottom_up(self):
        """ Components with their dependencies first """
        return list(reversed(self.topo_order))

    def names(self, p, S):
        """ Names of the variables of component S of system p """
        return [p.variables[i] for i in self.members[S]]


def build_system(g):
    """ Polynomial system x = P_G(x) of a grammar

    Every nonterminal A gets the polynomial with one monomial per rule of
    A: the rule weight times the product of the variables of the
    nonterminals in the body. For a grammar in simple normal form an L
    nonterminal thus gets a linear polynomial, a Q nonterminal a single
    quadratic monomial and a T nonterminal the constant 1. A nonterminal
    without rules gets the polynomial 0.

    Parameters
    ----------
    g : Wcfg
        the grammar, usually in simple normal form

    Returns
    -------
    PolySystem
        the system with one variable per nonterminal, in the same order

    Raises
    ------
    NotSupportedError
        If a rule body has more than two nonterminals
    """
    polynomials = []
    for A in g.nonterminals:
        terms = {}
        for rule in g.rules_of(A):
            monomial = tuple(sorted(g.index(X) for X in rule.rhs
                                    if g.is_nonterminal(X)))
            terms[monomial] = terms.get(monomial, 0) + rule.weight
        polynomials.append(terms)
    return PolySystem(g.nonterminals, polynomials)


def evaluate(p, x):
    """ Evaluate the system at a vector

    Parameters
    ----------
    p : PolySystem
        the system
    x : sequence of Fraction
        nonnegative vector with one entry per variable

    Returns
    -------
    np.ndarray
        the exact vector P(x), monotone in x

    Raises
    ------
    InputError
        If the dimension of x does not match
    """
    return p.evaluate(x)


def jacobian(p, x):
    """ Jacobian of the system at a vector

    .. math::
       B(x)_{i,j} = \\frac{\\partial P_{i}(x)}{\\partial x_{j}}

    Parameters
    ----------
    p : PolySystem
        the system
    x : sequence of Fraction
        nonnegative vector with one entry per variable

    Returns
    -------
    np.ndarray
        the exact Jacobian, nonnegative for nonnegative x
    """
    return p.jacobian(x)


def scc_dag(p):
    """ Strongly connected components of the dependency graph

    Parameters
    ----------
    p : PolySystem
        the system

    Returns
    -------
    SccDag
        the condensation with topological order and D(S) per component
    """
    return p.scc_dag()
