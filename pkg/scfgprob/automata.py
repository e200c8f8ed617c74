from enum import Enum

from .grammar import _fresh
from .utils._parsing import TRANSITION, parse_sections
from .utils.exceptions import (
    InputError, GrammarSyntaxError, DuplicateTransitionError,
    PartialTransitionError, UnknownSymbolError)


class PatternKind(Enum):
    """ Languages of the pattern automata """
    EXACT = 'Exact'
    PREFIX = 'Prefix'
    INFIX = 'Infix'
    ALL = 'All'


class Dfa:
    """ Complete deterministic finite automaton

    Parameters
    ----------
    states : iterable of str
        the states, the order is kept
    alphabet : iterable of str
        the input symbols, the order is kept
    delta : dict
        transition function, maps (state, symbol) to a state and must be
        defined for every pair
    start : str
        the start state
    accepting : iterable of str
        the accepting states

    Attributes
    ----------
    states : tuple of str
        the states
    alphabet : tuple of str
        the input symbols
    delta : dict
        the transition function
    start : str
        the start state
    accepting : frozenset of str
        the accepting states

    Raises
    ------
    UnknownSymbolError
        If delta, start or accepting refer to an unknown state or symbol
    PartialTransitionError
        If delta is not defined for every state and symbol
    """

    def __init__(self, states, alphabet, delta, start, accepting):
        """ See help(Dfa) for more info """
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.start = start
        self.accepting = frozenset(accepting)
        self.delta = dict(delta)

        if len(set(self.states)) != len(self.states):
            raise InputError('a state is declared more than once')
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError('a symbol is declared more than once')

        self._state_set = set(self.states)
        self._symbol_set = set(self.alphabet)

        if start not in self._state_set:
            raise UnknownSymbolError(f'start state {start} is not a state')
        unknown = self.accepting - self._state_set
        if unknown:
            raise UnknownSymbolError(
                f'accepting states {sorted(unknown)} are not states')

        for (s, a), t in self.delta.items():
            self._check_state(s)
            self._check_state(t)
            self._check_symbol(a)

        missing = [(s, a) for s in self.states for a in self.alphabet
                   if (s, a) not in self.delta]
        if missing:
            raise PartialTransitionError(
                f'{len(missing)} transitions are missing, e.g. '
                f'{missing[0][0]} {missing[0][1]}, add them or complete '
                'the DFA with a rejecting sink')

    def _check_state(self, s):
        if s not in self._state_set:
            raise UnknownSymbolError(f'{s} is not a state of the DFA')

    def _check_symbol(self, a):
        if a not in self._symbol_set:
            raise UnknownSymbolError(f'{a} is not in the alphabet of the DFA')

    def __repr__(self):
        return (f'Dfa({len(self.states)} states, alphabet '
                f'{{{", ".join(self.alphabet)}}}, start={self.start})')

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.states == other.states and self.alphabet == other.alphabet
                and self.delta == other.delta and self.start == other.start
                and self.accepting == other.accepting)

    def __hash__(self):
        return hash((self.states, self.alphabet, self.start, self.accepting))

    def step(self, s, a):
        """ Transition from state s on symbol a """
        self._check_state(s)
        self._check_symbol(a)
        return self.delta[(s, a)]

    def run(self, w, s=None):
        """ Run the automaton on a string

        Parameters
        ----------
        w : sequence of str
            the input symbols
        s : str, optional, default: None
            state to start in, the start state if None

        Returns
        -------
        state : str
            the state reached after reading w
        accepted : bool
            True if the reached state is accepting
        """
        state = self.start if s is None else s
        self._check_state(state)
        for a in w:
            self._check_symbol(a)
            state = self.delta[(state, a)]
        return state, state in self.accepting

    def to_text(self):
        """ Serialise the DFA in the DFA file format """
        accept = [s for s in self.states if s in self.accepting]
        lines = [f'states: {" ".join(self.states)}',
                 f'alphabet: {" ".join(self.alphabet)}',
                 f'start: {self.start}',
                 f'accept: {" ".join(accept)}',
                 'delta:']
        for s in self.states:
            for a in self.alphabet:
                lines.append(f'{s} {a} {self.delta[(s, a)]}')
        return '\n'.join(lines) + '\n'


def run(d, w):
    """ Run a DFA on a string, see :py:meth:`Dfa.run` """
    return d.run(w)


def complete_dfa(states, alphabet, delta, start, accepting):
    """ Build a DFA, sending missing transitions to a rejecting sink

    The sink, named 'dead' unless that name is taken, is only added if a
    transition is missing.

    Returns
    -------
    Dfa
        the completed automaton
    """
    states = list(states)
    delta = dict(delta)
    missing = [(s, a) for s in states for a in alphabet if (s, a) not in delta]
    if missing:
        sink = _fresh('dead', set(states))
        states.append(sink)
        for s, a in missing:
            delta[(s, a)] = sink
        for a in alphabet:
            delta[(sink, a)] = sink
    return Dfa(states, alphabet, delta, start, accepting)


def parse_dfa(text, complete=False):
    """ Parse a DFA from its text format

    The format is line oriented with '#' comments::

        states: t1 t2 t3
        alphabet: a b c
        start: t1
        accept: t3
        delta:
        t1 a t2
        ...

    Parameters
    ----------
    text : str
        the DFA text
    complete : bool, optional, default: False
        if True missing transitions go to a rejecting sink, otherwise a
        partial transition table is an error

    Returns
    -------
    Dfa
        the parsed automaton

    Raises
    ------
    GrammarSyntaxError
        If a line is malformed, with its line number
    DuplicateTransitionError
        If a transition is given twice
    UnknownSymbolError
        If a row uses an unknown state or symbol
    PartialTransitionError
        If transitions are missing and complete is False
    """
    fields, rows = parse_sections(
        text, ['states', 'alphabet', 'start', 'accept'], 'delta', TRANSITION,
        '"<state> <symbol> <state>"')

    lineno, start = fields['start']
    if len(start) != 1:
        raise GrammarSyntaxError('"start:" must name exactly one state', lineno)

    states = fields['states'][1]
    alphabet = fields['alphabet'][1]
    known_states, known_symbols = set(states), set(alphabet)

    delta = {}
    for lineno, row in rows:
        s, a, t = row['source'], row['symbol'], row['target']
        for state in (s, t):
            if state not in known_states:
                raise UnknownSymbolError(f'line {lineno}: unknown state {state}')
        if a not in known_symbols:
            raise UnknownSymbolError(f'line {lineno}: unknown symbol {a}')
        if (s, a) in delta:
            raise DuplicateTransitionError(
                f'line {lineno}: transition {s} {a} is given twice')
        delta[(s, a)] = t

    accepting = fields['accept'][1]
    if complete:
        return complete_dfa(states, alphabet, delta, start[0], accepting)
    return Dfa(states, alphabet, delta, start[0], accepting)


def _failure_function(w):
    """ Length of the longest proper border of every prefix of w """
    border = [0]*len(w)
    for i in range(1, len(w)):
        k = border[i - 1]
        while k > 0 and w[i] != w[k]:
            k = border[k - 1]
        if w[i] == w[k]:
            k += 1
        border[i] = k
    return border


def build_pattern_dfa(kind, w, alphabet):
    """ Automaton for a pattern language

    States are named t1, t2, ... where t(j+1) means that the first j
    symbols of w are matched, and 'dead' is the rejecting sink of the
    exact and prefix automata.

    Parameters
    ----------
    kind : PatternKind or str
        EXACT accepts {w}, PREFIX accepts w followed by anything, INFIX
        accepts all strings containing w and ALL accepts every string
    w : sequence of str
        the pattern, a str is read as a sequence of one character symbols
    alphabet : iterable of str
        the input symbols, a set is sorted to fix the order

    Returns
    -------
    Dfa
        the pattern automaton, the infix automaton has len(w) + 1 states
        with an absorbing accepting state

    Raises
    ------
    UnknownSymbolError
        If a symbol of w is not in the alphabet
    """
    kind = PatternKind(kind)
    if isinstance(alphabet, (set, frozenset)):
        alphabet = sorted(alphabet)
    alphabet = tuple(alphabet)
    w = tuple(w)

    for a in w:
        if a not in alphabet:
            raise UnknownSymbolError(
                f'symbol {a} of the pattern is not in the alphabet')

    if kind is PatternKind.ALL:
        return Dfa(['t1'], alphabet, {('t1', a): 't1' for a in alphabet},
                   't1', ['t1'])

    m = len(w)
    states = [f't{j + 1}' for j in range(m + 1)]
    final = states[m]
    delta = {}

    if kind is PatternKind.INFIX:
        border = _failure_function(w)
        for j in range(m):
            for a in alphabet:
                if a == w[j]:
                    delta[(states[j], a)] = states[j + 1]
                elif j == 0:
                    delta[(states[j], a)] = states[0]
                else:
                    delta[(states[j], a)] = delta[(states[border[j - 1]], a)]
        for a in alphabet:
            delta[(final, a)] = final
        return Dfa(states, alphabet, delta, states[0], [final])

    for j in range(m):
        delta[(states[j], w[j])] = states[j + 1]
    if kind is PatternKind.PREFIX:
        for a in alphabet:
            delta[(final, a)] = final
    return complete_dfa(states, alphabet, delta, states[0], [final])


def figure_dfa():
    """ The 3-state automaton over {a, b, c} for the infix 'aa' """
    return build_pattern_dfa(PatternKind.INFIX, 'aa', ['a', 'b', 'c'])
