from fractions import Fraction

import numpy as np

from ..utils.exceptions import InputError, SingularMatrixError


def to_fraction(value):
    """ Convert a value to an exact rational

    Parameters
    ----------
    value : int, Fraction or str
        the value, strings are formatted as 'a/b', an integer or a
        finite decimal such as '0.25'

    Returns
    -------
    Fraction
        the exact rational value

    Raises
    ------
    InputError
        If the value can not be read as a rational
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InputError(
            f'{value} is a float, rationals must be exact (int, Fraction or str)')
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f'{value!r} is not a valid rational number')


def format_rational(value):
    """ Format a rational as 'num/den', den omitted when 1 """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def _frozen(array):
    array.flags.writeable = False
    return array


def rat_vector(values):
    """ Make a read-only vector of Fractions

    Parameters
    ----------
    values : iterable
        entries of the vector, see :py:func:`to_fraction`

    Returns
    -------
    np.ndarray
        one dimensional object array with Fraction entries
    """
    values = [to_fraction(value) for value in values]
    vector = np.empty(len(values), dtype=object)
    vector[:] = values
    return _frozen(vector)


def rat_matrix(rows):
    """ Make a read-only matrix of Fractions

    Parameters
    ----------
    rows : iterable of iterables
        rows of the matrix, all with equal length

    Returns
    -------
    np.ndarray
        two dimensional object array with Fraction entries

    Raises
    ------
    InputError
        If the rows do not all have the same length
    """
    rows = [[to_fraction(value) for value in row] for row in rows]
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise InputError('all rows of a matrix must have the same length')

    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        matrix[i, :] = row
    return _frozen(matrix)


def zeros(n):
    """ Read-only zero vector of length n """
    return rat_vector([0]*n)


def identity(n):
    """ Read-only n x n identity matrix """
    return rat_matrix([[int(i == j) for j in range(n)] for i in range(n)])


def max_norm(vector):
    """ Maximum norm of a rational vector, 0 for an empty vector """
    return max((abs(Fraction(value)) for value in vector), default=Fraction(0))


def _eliminate(A, rhs):
    """ Sparse Gaussian elimination with multiple right hand sides

    Pivots are chosen per column among the remaining rows, preferring
    the row with the fewest nonzeros.

    Parameters
    ----------
    A : np.ndarray
        square matrix
    rhs : list of lists
        one list of right hand side values per row of A

    Returns
    -------
    list of lists
        solution, one list of values per column of A
    """
    n = A.shape[0]
    rows = [{j: Fraction(a) for j, a in enumerate(A[i]) if a != 0}
            for i in range(n)]
    rhs = [[Fraction(value) for value in row] for row in rhs]

    remaining = set(range(n))
    order = []
    for col in range(n):
        candidates = [i for i in remaining if col in rows[i]]
        if not candidates:
            raise SingularMatrixError(
                f'matrix is singular, no pivot in column {col}')
        p = min(candidates, key=lambda i: (len(rows[i]), i))
        remaining.remove(p)
        prow, pval = rows[p], rows[p][col]

        for i in candidates:
            if i == p:
                continue
            row = rows[i]
            f = row[col]/pval
            for j, a in prow.items():
                value = row.get(j, 0) - f*a
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
            rhs[i] = [r - f*rp for r, rp in zip(rhs[i], rhs[p])]
        order.append((col, p))

    # back substitution, later columns are solved first
    x = [None]*n
    for col, p in reversed(order):
        prow = rows[p]
        solved = list(rhs[p])
        for j, a in prow.items():
            if j != col:
                solved = [s - a*xj for s, xj in zip(solved, x[j])]
        x[col] = [s/prow[col] for s in solved]

    return x if n else []


def _check_square(A, name='A'):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f'{name} must be a square matrix, has shape {A.shape}')


def solve_linear(A, b):
    """ Solve A x = b exactly

    Parameters
    ----------
    A : np.ndarray
        square rational matrix
    b : np.ndarray
        rational vector with len(b) equal to the size of A

    Returns
    -------
    np.ndarray
        the exact solution x

    Raises
    ------
    InputError
        If A is not square or the dimensions do not match
    SingularMatrixError
        If A has no unique solution
    """
    A = np.asarray(A, dtype=object)
    _check_square(A)
    if len(b) != A.shape[0]:
        raise InputError(
            f'dimension mismatch, A is {A.shape[0]}x{A.shape[1]} and b has '
            f'length {len(b)}')

    solution = _eliminate(A, [[value] for value in b])
    return rat_vector([value[0] for value in solution])


def inverse(A):
    """ Exact inverse of a square matrix

    Raises
    ------
    SingularMatrixError
        If A is singular
    """
    A = np.asarray(A, dtype=object)
    _check_square(A)
    n = A.shape[0]
    columns = _eliminate(A, [[int(i == j) for j in range(n)] for i in range(n)])
    # columns[j] holds row j of the inverse
    return rat_matrix(columns)


def inverse_if_nonneg(M):
    """ Compute (I - M)^-1 if it exists and is nonnegative

    For a nonnegative square matrix M the inverse of I - M exists and
    is nonnegative if and only if the spectral radius of M is smaller
    than 1, so a returned inverse certifies rho(M) < 1.

    Parameters
    ----------
    M : np.ndarray
        square nonnegative rational matrix

    Returns
    -------
    np.ndarray or None
        the inverse of I - M, None when I - M is singular or its
        inverse has a negative entry
    """
    M = np.asarray(M, dtype=object)
    _check_square(M, 'M')
    n = M.shape[0]
    try:
        W = inverse(identity(n) - M)
    except SingularMatrixError:
        return None

    if any(value < 0 for value in W.flat):
        return None
    return W


def nonneg_solution_exists(A, b):
    """ Decide if A u = b has a solution u >= 0

    Phase one of the simplex method in exact arithmetic: one artificial
    variable per row, minimise their sum with Bland's rule. The system
    is feasible if and only if the minimum is 0.

    Parameters
    ----------
    A : np.ndarray
        rational m x n matrix
    b : np.ndarray
        rational vector of length m

    Returns
    -------
    bool
        True if a nonnegative solution exists
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        A = A.reshape(len(b), -1)
    m, n = A.shape
    if len(b) != m:
        raise InputError(
            f'dimension mismatch, A has {m} rows and b has length {len(b)}')
    if m == 0:
        return True

    # tableau [A | I | b] with nonnegative right hand side
    width = n + m
    tableau = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign*Fraction(a) for a in A[i]]
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(sign*Fraction(b[i]))
        tableau.append(row)
    basis = [n + i for i in range(m)]

    # reduced costs of the phase one objective (sum of artificials)
    cost = [Fraction(0)]*(width + 1)
    for row in tableau:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break

        leaving, best = None, None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1]/row[entering]
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leaving])):
                    leaving, best = i, ratio
        if leaving is None:
            # unbounded direction, can not occur for the phase one objective
            break

        prow = tableau[leaving]
        pval = prow[entering]
        prow[:] = [value/pval for value in prow]
        for i, row in enumerate(tableau):
            if i != leaving and row[entering] != 0:
                f = row[entering]
                row[:] = [value - f*pv for value, pv in zip(row, prow)]
        f = cost[entering]
        cost[:] = [value - f*pv for value, pv in zip(cost, prow)]
        basis[leaving] = entering

    return cost[-1] == 0


def ceil_log2(value):
    """ Smallest integer k with 2^k >= value, exact for rationals

    Parameters
    ----------
    value : Fraction
        positive rational

    Returns
    -------
    int
        the ceiling of log2(value)
    """
    value = to_fraction(value)
    if value <= 0:
        raise InputError(f'log2 is undefined for {value}')

    p, q = value.numerator, value.denominator
    k = p.bit_length() - q.bit_length()
    while Fraction(2)**k < value:
        k += 1
    while Fraction(2)**(k - 1) >= value:
        k -= 1
    return k


class DyadicVector:
    """ Nonnegative vector with entries that are multiples of 2^-bits

    Parameters
    ----------
    numerators : iterable of int
        nonnegative numerators, entry i equals numerators[i]/2^bits
    bits : int
        number of fractional bits

    Attributes
    ----------
    numerators : tuple of int
        the numerators
    bits : int
        the number of fractional bits
    """

    def __init__(self, numerators, bits):
        """ See help(DyadicVector) for more info """
        self.numerators = tuple(int(n) for n in numerators)
        self.bits = int(bits)

        if any(n < 0 for n in self.numerators):
            raise InputError('entries of a DyadicVector must be nonnegative')

    def __len__(self):
        return len(self.numerators)

    def __getitem__(self, i):
        return Fraction(self.numerators[i], 2**self.bits)

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __eq__(self, other):
        if isinstance(other, DyadicVector):
            return list(self) == list(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f'DyadicVector({list(self.numerators)}, bits={self.bits})'

    def __str__(self):
        return '(' + ', '.join(self.decimal(i) for i in range(len(self))) + ')'

    def to_fractions(self):
        """ The entries as a rational vector """
        return rat_vector(self)

    def decimal(self, i):
        """ Exact decimal expansion of entry i as a string """
        n, k = self.numerators[i], self.bits
        if k <= 0:
            return str(n * 2**(-k))
        digits = str(n * 5**k).rjust(k + 1, '0')
        integer, fraction = digits[:-k], digits[-k:].rstrip('0')
        return f'{integer}.{fraction}' if fraction else integer

    def to_json(self):
        """ JSON serialisable dict with the bit parameter and decimals """
        return {'bits': self.bits,
                'values': [self.decimal(i) for i in range(len(self))]}


def round_down_dyadic(vector, bits):
    """ Round a vector down to multiples of 2^-bits

    Each coordinate becomes floor(max(v_i, 0) 2^bits)/2^bits, the result
    is thus nonnegative and never exceeds the input.

    Parameters
    ----------
    vector : iterable of Fraction
        the vector to round
    bits : int
        rounding parameter, at least 1

    Returns
    -------
    DyadicVector
        the rounded vector
    """
    if bits < 1:
        raise InputError(f'rounding parameter must be at least 1, is {bits}')

    numerators = []
    for value in vector:
        value = Fraction(value)
        if value <= 0:
            numerators.append(0)
        else:
            numerators.append((value.numerator << bits)//value.denominator)
    return DyadicVector(numerators, bits)
