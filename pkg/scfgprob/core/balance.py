from collections.abc import Mapping
from fractions import Fraction
from itertools import product as cartesian

import numpy as np

from .exactmath import format_rational, rat_matrix, rat_vector, to_fraction
from ..utils.exceptions import InputError, NotBalancedError


def _triples(states, nonterminals):
    return [(s, A, t) for s in states for A in nonterminals for t in states]


class TripleVector(Mapping):
    """ Vector indexed by triples (s, A, t) of states and nonterminals

    Parameters
    ----------
    states : iterable of str
        the states s and t
    nonterminals : iterable of str
        the nonterminals A
    values : Mapping
        maps every triple to a rational value

    Attributes
    ----------
    states : tuple of str
        the states
    nonterminals : tuple of str
        the nonterminals
    triples : list of tuple
        the triples in lexicographic order
    vector : np.ndarray
        the values in the order of triples

    Raises
    ------
    InputError
        If a triple has no value or an unknown triple is given
    """

    def __init__(self, states, nonterminals, values):
        """ See help(TripleVector) for more info """
        self.states = tuple(states)
        self.nonterminals = tuple(nonterminals)
        self.triples = _triples(self.states, self.nonterminals)
        self._position = {triple: i for i, triple in enumerate(self.triples)}

        unknown = [key for key in values if key not in self._position]
        if unknown:
            raise InputError(f'unknown triple {unknown[0]}')
        missing = [key for key in self.triples if key not in values]
        if missing:
            raise InputError(
                f'{len(missing)} triples have no value, e.g. {missing[0]}')

        self.vector = rat_vector(values[key] for key in self.triples)

    @classmethod
    def from_vector(cls, states, nonterminals, vector):
        """ TripleVector from values in the lexicographic triple order """
        triples = _triples(states, nonterminals)
        if len(vector) != len(triples):
            raise InputError(
                f'vector has length {len(vector)}, expected {len(triples)}')
        return cls(states, nonterminals, dict(zip(triples, vector)))

    @classmethod
    def from_product(cls, product, vector):
        """ TripleVector of a vector over the nonterminals of a product

        Parameters
        ----------
        product : ProductWcfg
            the product grammar
        vector : sequence
            one value per product nonterminal, in its canonical order
        """
        g, d = product.source
        return cls.from_vector(d.states, g.nonterminals, vector)

    @classmethod
    def zeros(cls, states, nonterminals):
        """ The zero vector """
        triples = _triples(states, nonterminals)
        return cls.from_vector(states, nonterminals, [0]*len(triples))

    @classmethod
    def from_json(cls, data):
        """ TripleVector from a dict with states, nonterminals and values

        The values are a list of [s, A, t, value] with value a rational
        string such as '1/2'.
        """
        try:
            values = {(s, A, t): to_fraction(value)
                      for s, A, t, value in data['values']}
            return cls(data['states'], data['nonterminals'], values)
        except (KeyError, TypeError, ValueError):
            raise InputError(
                'a triple vector must be a JSON object with "states", '
                '"nonterminals" and "values": [[s, A, t, value], ...]')

    def to_json(self):
        """ JSON serialisable dict, see :py:meth:`from_json` """
        return {'states': list(self.states),
                'nonterminals': list(self.nonterminals),
                'values': [[s, A, t, format_rational(self[(s, A, t)])]
                           for s, A, t in self.triples]}

    def __getitem__(self, key):
        return self.vector[self._position[key]]

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def __repr__(self):
        return (f'TripleVector({len(self.states)} states, '
                f'{len(self.nonterminals)} nonterminals)')

    def _same_shape(self, other):
        if (self.states, self.nonterminals) != (other.states, other.nonterminals):
            raise InputError('triple vectors have different shapes')

    def __add__(self, other):
        self._same_shape(other)
        return TripleVector.from_vector(self.states, self.nonterminals,
                                        self.vector + other.vector)

    def __rmul__(self, scalar):
        scalar = to_fraction(scalar)
        return TripleVector.from_vector(self.states, self.nonterminals,
                                        [scalar*value for value in self.vector])

    def row_sum(self, s, A):
        """ Sum over t of the values of (s, A, t) """
        return sum((self[(s, A, t)] for t in self.states), Fraction(0))

    def row_sums(self, A):
        """ Row sums of A for every state s """
        return [self.row_sum(s, A) for s in self.states]


class TripleMatrix:
    """ Matrix with rows and columns indexed by triples (s, A, t)

    Parameters
    ----------
    states : iterable of str
        the states
    nonterminals : iterable of str
        the nonterminals
    matrix : array_like
        square matrix with rows and columns in the lexicographic triple
        order

    Attributes
    ----------
    states, nonterminals, triples
        see :py:class:`TripleVector`
    matrix : np.ndarray
        the values
    """

    def __init__(self, states, nonterminals, matrix):
        """ See help(TripleMatrix) for more info """
        self.states = tuple(states)
        self.nonterminals = tuple(nonterminals)
        self.triples = _triples(self.states, self.nonterminals)
        self._position = {triple: i for i, triple in enumerate(self.triples)}

        n = len(self.triples)
        matrix = np.asarray(matrix, dtype=object)
        if matrix.shape != (n, n):
            raise InputError(f'matrix has shape {matrix.shape}, expected {(n, n)}')
        self.matrix = rat_matrix(matrix.tolist()) if n else matrix

    @classmethod
    def from_product(cls, product, matrix):
        """ TripleMatrix of a matrix over the nonterminals of a product """
        g, d = product.source
        return cls(d.states, g.nonterminals, matrix)

    @classmethod
    def from_entries(cls, states, nonterminals, entries):
        """ TripleMatrix from a dict {(row triple, column triple): value},
        missing entries are 0 """
        triples = _triples(states, nonterminals)
        position = {triple: i for i, triple in enumerate(triples)}
        n = len(triples)
        rows = [[0]*n for _ in range(n)]
        for (row, col), value in entries.items():
            try:
                rows[position[row]][position[col]] = value
            except KeyError:
                raise InputError(f'unknown entry ({row}, {col})')
        return cls(states, nonterminals, rows)

    @classmethod
    def identity(cls, states, nonterminals):
        """ The identity matrix """
        n = len(states)**2*len(nonterminals)
        return cls(states, nonterminals,
                   [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, key):
        row, col = key
        return self.matrix[self._position[row], self._position[col]]

    def __repr__(self):
        return (f'TripleMatrix({len(self.states)} states, '
                f'{len(self.nonterminals)} nonterminals)')

    def dot(self, other):
        """ Product with a TripleVector or a TripleMatrix of the same shape """
        if (self.states, self.nonterminals) != (other.states, other.nonterminals):
            raise InputError('operands have different shapes')
        if isinstance(other, TripleVector):
            return TripleVector.from_vector(self.states, self.nonterminals,
                                            self.matrix.dot(other.vector))
        return TripleMatrix(self.states, self.nonterminals,
                            self.matrix.dot(other.matrix))

    def block_sum(self, s, B, C, v):
        """ Sum over t and u of the entries ((s, B, t), (u, C, v)) """
        return sum((self[((s, B, t), (u, C, v))]
                    for t, u in cartesian(self.states, repeat=2)), Fraction(0))


def is_balanced_vector(y):
    """ Decide if the row sums of a triple vector do not depend on s

    Parameters
    ----------
    y : TripleVector
        the vector

    Returns
    -------
    bool
        True if for every A the sum over t of y(s, A, t) is the same for
        every state s, compared exactly
    """
    return all(len(set(y.row_sums(A))) <= 1 for A in y.nonterminals)


def max_balance_defect(y):
    """ Largest difference between two row sums of the same nonterminal

    Parameters
    ----------
    y : TripleVector
        the vector

    Returns
    -------
    Fraction
        0 if and only if y is balanced
    """
    defect = Fraction(0)
    for A in y.nonterminals:
        sums = y.row_sums(A)
        if sums:
            defect = max(defect, max(sums) - min(sums))
    return defect


def is_balanced_matrix(M):
    """ Decide if a triple matrix is balanced

    Both conditions are checked exactly: the sum over t of
    M((s, B, t), (u, C, v)) does not depend on v, and the sum over t and
    u does not depend on s and v.

    Parameters
    ----------
    M : TripleMatrix
        the matrix

    Returns
    -------
    bool
        True if the matrix is balanced
    """
    Q = M.states
    for B, C in cartesian(M.nonterminals, repeat=2):
        for s, u in cartesian(Q, repeat=2):
            sums = {sum((M[((s, B, t), (u, C, v))] for t in Q), Fraction(0))
                    for v in Q}
            if len(sums) > 1:
                return False
        if len({M.block_sum(s, B, C, v) for s, v in cartesian(Q, repeat=2)}) > 1:
            return False
    return True


def collapse_vector(y, strict=True):
    """ Collapse a triple vector to a vector over the nonterminals

    Parameters
    ----------
    y : TripleVector
        the vector
    strict : bool, optional, default: True
        if True y must be balanced and the common row sum is returned,
        otherwise the minimum over s of the row sums

    Returns
    -------
    np.ndarray
        one value per nonterminal

    Raises
    ------
    NotBalancedError
        If strict and y is not balanced
    """
    if strict and not is_balanced_vector(y):
        raise NotBalancedError(
            f'vector is not balanced, defect {max_balance_defect(y)}')
    return rat_vector(min(y.row_sums(A), default=Fraction(0))
                      for A in y.nonterminals)


def collapse_matrix(M):
    """ Collapse a balanced triple matrix to a matrix over the nonterminals

    Entry (B, C) is the sum over t and u of M((s, B, t), (u, C, v)),
    which does not depend on s and v for a balanced matrix.

    Parameters
    ----------
    M : TripleMatrix
        the matrix

    Returns
    -------
    np.ndarray
        square matrix over the nonterminals

    Raises
    ------
    NotBalancedError
        If M is not balanced
    """
    if not is_balanced_matrix(M):
        raise NotBalancedError('matrix is not balanced')
    if not M.states:
        return rat_matrix([[0]*len(M.nonterminals) for _ in M.nonterminals])
    s = v = M.states[0]
    return rat_matrix([[M.block_sum(s, B, C, v) for C in M.nonterminals]
                       for B in M.nonterminals])
