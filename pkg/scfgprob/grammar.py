from collections import namedtuple
from enum import Enum
from fractions import Fraction

import numpy as np

from .core.exactmath import format_rational, to_fraction
from .utils._parsing import RULE, parse_sections
from .utils.exceptions import (
    InputError, GrammarSyntaxError, UndeclaredSymbolError,
    NonpositiveWeightError, UnknownNonterminalError, NotScfgError,
    NotSupportedError)

EPSILON = 'eps'

Rule = namedtuple('Rule', ['lhs', 'rhs', 'weight'])
Rule.__doc__ = """ Weighted rule lhs -> rhs

Parameters
----------
lhs : str
    nonterminal on the left hand side
rhs : tuple of str
    body of the rule, the empty tuple for an eps rule
weight : Fraction
    positive weight of the rule
"""


class GrammarClass(Enum):
    """ Classification of a weighted grammar by its rule sums """
    WCFG = 'Wcfg'
    SCFG = 'Scfg'
    PROPER_SCFG = 'ProperScfg'


class Kind(Enum):
    """ Kind of a nonterminal in simple normal form

    L nonterminals only have unit rules A -> B, Q nonterminals a single
    rule A -> B C with weight 1 and T nonterminals a single rule A -> a
    or A -> eps with weight 1.
    """
    L = 'L'
    Q = 'Q'
    T = 'T'


def _format_body(rhs):
    return ' '.join(rhs) if rhs else EPSILON


class Wcfg:
    """ Weighted context-free grammar

    Parameters
    ----------
    nonterminals : iterable of str
        names of the nonterminals, the order is kept
    terminals : iterable of str
        names of the terminals, the order is kept
    rules : iterable
        rules as :py:class:`Rule` or (lhs, rhs, weight) tuples, weights
        are converted to exact rationals
    start : str
        the start nonterminal

    Attributes
    ----------
    nonterminals : tuple of str
        the nonterminals
    terminals : tuple of str
        the terminals
    rules : tuple of Rule
        the rules, in the given order
    start : str
        the start nonterminal

    Raises
    ------
    InputError
        If names are repeated, shared between terminals and nonterminals
        or if a name is 'eps'
    UndeclaredSymbolError
        If a rule uses a symbol that is not declared, or the start is
        not a nonterminal
    NonpositiveWeightError
        If a rule has a weight that is not strictly positive
    """

    def __init__(self, nonterminals, terminals, rules, start):
        """ See help(Wcfg) for more info """
        self.nonterminals = tuple(nonterminals)
        self.terminals = tuple(terminals)
        self.start = start

        for names, what in [(self.nonterminals, 'nonterminal'),
                            (self.terminals, 'terminal')]:
            if len(set(names)) != len(names):
                raise InputError(f'a {what} is declared more than once')
            if EPSILON in names:
                raise InputError(
                    f'"{EPSILON}" denotes the empty body and can not be a '
                    f'{what}')

        shared = set(self.nonterminals) & set(self.terminals)
        if shared:
            raise InputError(
                f'{sorted(shared)} declared as terminal and nonterminal')

        if start not in self.nonterminals:
            raise UndeclaredSymbolError(
                f'start symbol {start} is not a declared nonterminal')

        self._index = {A: i for i, A in enumerate(self.nonterminals)}
        self._terminal_set = set(self.terminals)

        checked = []
        for rule in rules:
            lhs, rhs, weight = rule
            rhs = tuple(rhs)
            weight = to_fraction(weight)

            if lhs not in self._index:
                raise UndeclaredSymbolError(
                    f'rule {lhs} -> {_format_body(rhs)}: {lhs} is not a '
                    'declared nonterminal')
            for symbol in rhs:
                if symbol not in self._index and symbol not in self._terminal_set:
                    raise UndeclaredSymbolError(
                        f'rule {lhs} -> {_format_body(rhs)}: {symbol} is not '
                        'declared')
            if weight <= 0:
                raise NonpositiveWeightError(
                    f'rule {lhs} -> {_format_body(rhs)} has weight '
                    f'{format_rational(weight)}, weights must be positive')

            checked.append(Rule(lhs, rhs, weight))

        self.rules = tuple(checked)

        self._rules_of = {A: [] for A in self.nonterminals}
        for i, rule in enumerate(self.rules):
            self._rules_of[rule.lhs].append(i)

    def __repr__(self):
        return (f'{type(self).__name__}({len(self.nonterminals)} nonterminals, '
                f'{len(self.rules)} rules, start={self.start})')

    def __eq__(self, other):
        if not isinstance(other, Wcfg):
            return NotImplemented
        return (self.nonterminals == other.nonterminals
                and self.terminals == other.terminals
                and self.rules == other.rules
                and self.start == other.start)

    def __hash__(self):
        return hash((self.nonterminals, self.terminals, self.rules, self.start))

    def is_nonterminal(self, symbol):
        """ True if the symbol is a nonterminal of the grammar """
        return symbol in self._index

    def index(self, A):
        """ Position of nonterminal A

        Raises
        ------
        UnknownNonterminalError
            If A is not a nonterminal of the grammar
        """
        try:
            return self._index[A]
        except KeyError:
            raise UnknownNonterminalError(f'{A} is not a nonterminal')

    def rule_indices(self, A):
        """ Positions in :py:attr:`rules` of the rules of A """
        self.index(A)
        return tuple(self._rules_of[A])

    def rules_of(self, A):
        """ The rules with A on the left hand side """
        return tuple(self.rules[i] for i in self.rule_indices(A))

    def rule_sum(self, A):
        """ Exact sum of the weights of the rules of A """
        return sum((rule.weight for rule in self.rules_of(A)), Fraction(0))

    def to_text(self):
        """ Serialise the grammar in the grammar file format

        Returns
        -------
        str
            text that :py:func:`parse_grammar` reads back to an equal
            grammar
        """
        lines = [f'nonterminals: {" ".join(self.nonterminals)}',
                 f'terminals: {" ".join(self.terminals)}',
                 f'start: {self.start}',
                 'rules:']
        for rule in self.rules:
            lines.append(f'{rule.lhs} -> {_format_body(rule.rhs)} '
                         f'[{format_rational(rule.weight)}]')
        return '\n'.join(lines) + '\n'


class SnfWcfg(Wcfg):
    """ Weighted context-free grammar in simple normal form

    Parameters
    ----------
    nonterminals, terminals, rules, start
        see :py:class:`Wcfg`
    kinds : dict, optional, default: None
        kind of each nonterminal, inferred from the rules if not given
    origin : dict, optional, default: None
        maps nonterminals introduced by :py:func:`to_snf` to the position
        of the source rule they were created for
    strict : bool, optional, default: True
        if False Q nonterminals may have several binary rules and T
        nonterminals no rule at all, the shape of a product grammar

    Attributes
    ----------
    kinds : dict
        kind of each nonterminal
    origin : dict
        source rule position of each introduced nonterminal

    Raises
    ------
    InputError
        If the grammar is not in simple normal form
    """

    def __init__(self, nonterminals, terminals, rules, start, kinds=None,
                 origin=None, strict=True):
        """ See help(SnfWcfg) for more info """
        super().__init__(nonterminals, terminals, rules, start)

        if kinds is None:
            kinds = {A: self._infer_kind(A) for A in self.nonterminals}
        self.kinds = {A: Kind(kinds[A]) for A in self.nonterminals}
        self.origin = dict(origin or {})
        self.strict = strict

        self.validate(strict=strict)

    def _infer_kind(self, A):
        rules = self.rules_of(A)
        if all(len(r.rhs) == 1 and self.is_nonterminal(r.rhs[0])
               for r in rules):
            return Kind.L
        if len(rules) == 1 and len(rules[0].rhs) == 2:
            return Kind.Q
        if len(rules) == 1 and len(rules[0].rhs) <= 1:
            return Kind.T
        raise InputError(
            f'{A} has rules of mixed shape and is not in simple normal form')

    def validate(self, strict=True):
        """ Check the simple normal form

        Parameters
        ----------
        strict : bool, optional, default: True
            see help(SnfWcfg)

        Raises
        ------
        InputError
            If a nonterminal violates the rules of its kind
        """
        for A in self.nonterminals:
            kind, rules = self.kinds[A], self.rules_of(A)

            if kind is Kind.L:
                ok = all(len(r.rhs) == 1 and self.is_nonterminal(r.rhs[0])
                         for r in rules)
            elif kind is Kind.Q:
                ok = ((len(rules) == 1 or (not strict and len(rules) > 1))
                      and all(r.weight == 1 and len(r.rhs) == 2
                              and all(map(self.is_nonterminal, r.rhs))
                              for r in rules))
            else:
                ok = ((len(rules) == 1 or (not strict and not rules))
                      and all(r.weight == 1 and len(r.rhs) <= 1
                              and not any(map(self.is_nonterminal, r.rhs))
                              for r in rules))

            if not ok:
                form = 'strict' if strict else 'relaxed'
                raise InputError(
                    f'{A} of kind {kind.value} violates the {form} simple '
                    'normal form')


def parse_grammar(text, weighted=True):
    """ Parse a grammar from its text format

    The format is line oriented with '#' comments::

        nonterminals: S
        terminals: a
        start: S
        rules:
        S -> S S [1/2]
        S -> a [1/2]

    An empty body is written as 'eps'.

    Parameters
    ----------
    text : str
        the grammar text
    weighted : bool, optional, default: True
        if False the text is a skeleton, rule weights may be omitted and
        every rule gets weight 1

    Returns
    -------
    Wcfg
        the parsed grammar with exact rational weights

    Raises
    ------
    GrammarSyntaxError
        If a line is malformed, with its line number
    UndeclaredSymbolError
        If a rule uses a symbol that is not declared
    NonpositiveWeightError
        If a weight is not strictly positive
    """
    fields, rows = parse_sections(
        text, ['nonterminals', 'terminals', 'start'], 'rules', RULE,
        '"<nonterminal> -> <symbols or eps> [<weight>]"')

    lineno, start = fields['start']
    if len(start) != 1:
        raise GrammarSyntaxError('"start:" must name exactly one nonterminal',
                                 lineno)

    nonterminals = fields['nonterminals'][1]
    terminals = fields['terminals'][1]
    for key, (lineno, names) in fields.items():
        if EPSILON in names:
            raise GrammarSyntaxError(
                f'"{EPSILON}" is reserved for the empty body', lineno)
    declared = set(nonterminals) | set(terminals)

    rules = []
    for lineno, row in rows:
        lhs, body = row['lhs'], row['body'].as_list()
        if EPSILON in body:
            if len(body) > 1:
                raise GrammarSyntaxError(
                    f'"{EPSILON}" must be the whole body of a rule', lineno)
            body = []

        if lhs not in nonterminals:
            raise UndeclaredSymbolError(
                f'line {lineno}: {lhs} is not a declared nonterminal')
        for symbol in body:
            if symbol not in declared:
                raise UndeclaredSymbolError(
                    f'line {lineno}: symbol {symbol} is not declared')

        if 'weight' in row:
            try:
                weight = to_fraction(row['weight'])
            except InputError:
                raise GrammarSyntaxError(
                    f'invalid weight {row["weight"]}', lineno)
            if weight <= 0:
                raise NonpositiveWeightError(
                    f'line {lineno}: weight {row["weight"]} is not positive')
        elif weighted:
            raise GrammarSyntaxError('rule has no weight "[<rational>]"', lineno)
        else:
            weight = Fraction(1)

        if not weighted:
            weight = Fraction(1)
        rules.append(Rule(lhs, tuple(body), weight))

    return Wcfg(nonterminals, terminals, rules, start[0])


def classify(g):
    """ Classify a grammar by the exact sums of its rule weights

    Parameters
    ----------
    g : Wcfg
        the grammar

    Returns
    -------
    GrammarClass
        PROPER_SCFG if all sums are 1, SCFG if all are at most 1 and
        WCFG otherwise
    """
    sums = [g.rule_sum(A) for A in g.nonterminals]
    if any(total > 1 for total in sums):
        return GrammarClass.WCFG
    if all(total == 1 for total in sums):
        return GrammarClass.PROPER_SCFG
    return GrammarClass.SCFG


def _fresh(name, taken):
    """ Return name, or name with a numeric suffix, not yet in taken """
    candidate, k = name, 1
    while candidate in taken:
        k += 1
        candidate = f'{name}_{k}'
    taken.add(candidate)
    return candidate


def to_snf(g):
    """ Convert a grammar to simple normal form

    A nonterminal with a single weight-1 terminal or eps rule becomes
    kind T and one with a single weight-1 rule with a body of two or
    more symbols becomes kind Q. Every other nonterminal becomes kind L:
    unit rules are kept and every other rule is moved to a fresh
    nonterminal that the L rule points to with the original weight.
    Long bodies are binarized to the right and terminals in them are
    replaced by shared T nonterminals.

    Parameters
    ----------
    g : Wcfg
        the grammar

    Returns
    -------
    SnfWcfg
        grammar in simple normal form that contains the nonterminals of g
        and gives every nonterminal of g the same string weights
    """
    taken = set(g.nonterminals) | set(g.terminals) | {EPSILON}
    nonterminals = list(g.nonterminals)
    kinds, origin, rules = {}, {}, []
    terminal_nts = {}

    def add(A, kind, position):
        nonterminals.append(A)
        kinds[A] = kind
        origin[A] = position

    def as_nonterminal(symbol, position):
        if g.is_nonterminal(symbol):
            return symbol
        if symbol not in terminal_nts:
            T = _fresh(f'T_{symbol}', taken)
            terminal_nts[symbol] = T
            add(T, Kind.T, position)
            rules.append(Rule(T, (symbol,), Fraction(1)))
        return terminal_nts[symbol]

    def binarize(head, body, position):
        # head -> s1 Y1, Y1 -> s2 Y2, ..., Y_{k-2} -> s_{k-1} s_k
        symbols = [as_nonterminal(s, position) for s in body]
        while len(symbols) > 2:
            tail = _fresh(f'{head}_b', taken)
            add(tail, Kind.Q, position)
            rules.append(Rule(head, (symbols[0], tail), Fraction(1)))
            head, symbols = tail, symbols[1:]
        rules.append(Rule(head, tuple(symbols), Fraction(1)))

    for A in g.nonterminals:
        positions = g.rule_indices(A)
        single = g.rules[positions[0]] if len(positions) == 1 else None

        if single is not None and single.weight == 1 and len(single.rhs) >= 2:
            kinds[A] = Kind.Q
            binarize(A, single.rhs, positions[0])
        elif (single is not None and single.weight == 1
              and (not single.rhs or not g.is_nonterminal(single.rhs[0]))):
            kinds[A] = Kind.T
            rules.append(single)
        else:
            kinds[A] = Kind.L
            for k, position in enumerate(positions, start=1):
                rule = g.rules[position]
                if len(rule.rhs) == 1 and g.is_nonterminal(rule.rhs[0]):
                    rules.append(rule)
                    continue

                X = _fresh(f'{A}_r{k}', taken)
                rules.append(Rule(A, (X,), rule.weight))
                if len(rule.rhs) <= 1:
                    add(X, Kind.T, position)
                    rules.append(Rule(X, rule.rhs, Fraction(1)))
                else:
                    add(X, Kind.Q, position)
                    binarize(X, rule.rhs, position)

    return SnfWcfg(nonterminals, g.terminals, rules, g.start, kinds=kinds,
                   origin=origin)


def encoding_size(g):
    """ Encoding size |G| of a grammar in simple normal form

    Every nonterminal A contributes max(3, sum over its rules of the bit
    lengths of numerator and denominator of the weight plus twice the
    length of the body).

    Parameters
    ----------
    g : SnfWcfg
        grammar in simple normal form

    Returns
    -------
    int
        the encoding size in bits
    """
    if not isinstance(g, SnfWcfg):
        raise NotSupportedError(
            'the encoding size is only defined for grammars in simple normal '
            'form, convert with to_snf first')

    size = 0
    for A in g.nonterminals:
        bits = sum(r.weight.numerator.bit_length()
                   + r.weight.denominator.bit_length() + 2*len(r.rhs)
                   for r in g.rules_of(A))
        size += max(3, bits)
    return size


def bad_family(n):
    """ Grammar G_n of a family with critical depth n

    Rules A_i -> A_i A_i [1/2] and A_i -> A_(i+1) [1/2] for i < n,
    A_n -> c a B_n a c [1], B_i -> B_(i-1) B_(i-1) [1] for i >= 1 and
    B_0 -> eps [1/2], B_0 -> b [1/2] with start A_0. Every nonterminal
    terminates with probability 1, while A_i generates a string with
    infix 'aa' with probability 2^(-2^i).

    Parameters
    ----------
    n : int
        index of the grammar, n >= 0

    Returns
    -------
    Wcfg
        the proper SCFG G_n
    """
    if not isinstance(n, int) or n < 0:
        raise InputError(f'n must be a nonnegative integer, is {n}')

    half = Fraction(1, 2)
    A = [f'A_{i}' for i in range(n + 1)]
    B = [f'B_{i}' for i in range(n + 1)]

    rules = []
    for i in range(n):
        rules.append(Rule(A[i], (A[i], A[i]), half))
        rules.append(Rule(A[i], (A[i + 1],), half))
    rules.append(Rule(A[n], ('c', 'a', B[n], 'a', 'c'), Fraction(1)))
    for i in range(n, 0, -1):
        rules.append(Rule(B[i], (B[i - 1], B[i - 1]), Fraction(1)))
    rules.append(Rule(B[0], (), half))
    rules.append(Rule(B[0], ('b',), half))

    return Wcfg(A + B, ['a', 'b', 'c'], rules, A[0])


def nullable_nonterminals(g):
    """ Set of nonterminals that derive the empty string """
    nullable = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in nullable and all(s in nullable for s in rule.rhs):
                nullable.add(rule.lhs)
                changed = True
    return nullable


def derivation_weight(g, w, A=None):
    """ Total weight of all derivations of a string

    Sums the weights of all leftmost derivations of w from A by
    recursion over the rules and the splits of w between the symbols of
    a rule body, with exact rationals.

    Parameters
    ----------
    g : Wcfg
        the grammar
    w : sequence of str
        the string as a sequence of terminals
    A : str, optional, default: None
        the nonterminal to start from, the start symbol if None

    Returns
    -------
    Fraction
        p_A(w), the sum of the weights of the derivations of w from A

    Raises
    ------
    NotSupportedError
        If a nonterminal can derive itself on the same part of w (cycles
        of unit or eps rules), the number of derivations is then infinite
    """
    A = g.start if A is None else A
    g.index(A)
    w = tuple(w)
    nullable = nullable_nonterminals(g)
    symbols, spans, active = {}, {}, set()

    def symbol_weight(X, i, j):
        if not g.is_nonterminal(X):
            return Fraction(int(j == i + 1 and w[i] == X))
        if i == j and X not in nullable:
            return Fraction(0)
        key = (X, i, j)
        if key in symbols:
            return symbols[key]
        if key in active:
            raise NotSupportedError(
                f'{X} derives itself on {w[i:j]}, the string has infinitely '
                'many derivations')
        active.add(key)
        total = sum((rule.weight*sequence_weight(rule.rhs, i, j)
                     for rule in g.rules_of(X)), Fraction(0))
        active.discard(key)
        symbols[key] = total
        return total

    def sequence_weight(body, i, j):
        if not body:
            return Fraction(int(i == j))
        key = (body, i, j)
        if key not in spans:
            head, rest = body[0], body[1:]
            if not rest:
                total = symbol_weight(head, i, j)
            else:
                total = Fraction(0)
                head_nullable = head in nullable
                rest_nullable = all(s in nullable for s in rest)
                for k in range(i, j + 1):
                    # empty parts only for symbols that derive eps
                    if k == i and not head_nullable:
                        continue
                    if k == j and not rest_nullable:
                        continue
                    part = symbol_weight(head, i, k)
                    if part:
                        total += part*sequence_weight(rest, k, j)
            spans[key] = total
        return spans[key]

    return symbol_weight(A, 0, len(w))


def sample_derivation(g, rng, A=None, step_cap=10000):
    """ Sample a leftmost derivation

    Rules are chosen with their weights as probabilities. For a
    sub-stochastic nonterminal the missing mass stops the derivation.

    Parameters
    ----------
    g : Wcfg
        an SCFG
    rng : numpy.random.Generator
        source of randomness, e.g. ``np.random.default_rng(seed)``
    A : str, optional, default: None
        nonterminal to start from, the start symbol if None
    step_cap : int, optional, default: 10000
        maximum number of rule applications

    Returns
    -------
    tuple or None
        (rule positions, yield) of a complete derivation, None if the
        derivation is stopped or exceeds step_cap

    Raises
    ------
    NotScfgError
        If the grammar is not an SCFG
    """
    if classify(g) is GrammarClass.WCFG:
        raise NotScfgError('derivations can only be sampled from an SCFG')
    A = g.start if A is None else A
    g.index(A)

    tables = {}
    for X in g.nonterminals:
        positions = g.rule_indices(X)
        weights = [float(g.rules[i].weight) for i in positions]
        tables[X] = (positions, np.cumsum(weights))

    derivation, string = [], []
    stack = [A]
    while stack:
        symbol = stack.pop()
        if not g.is_nonterminal(symbol):
            string.append(symbol)
            continue
        if len(derivation) >= step_cap:
            return None

        positions, cumulative = tables[symbol]
        choice = int(np.searchsorted(cumulative, rng.random(), side='right'))
        if choice >= len(positions):
            # missing probability mass of a sub-stochastic nonterminal
            return None

        position = positions[choice]
        derivation.append(position)
        stack.extend(reversed(g.rules[position].rhs))

    return derivation, tuple(string)
