from collections.abc import Mapping
from fractions import Fraction

from .grammar import Kind, Rule, SnfWcfg
from .utils.exceptions import (
    AlphabetMismatchError, InputError, NotSupportedError,
    UnknownNonterminalError)


class ProductWcfg:
    """ Product of a grammar in simple normal form and a DFA

    The nonterminals are the triples (s, A, t) of a state s, a source
    nonterminal A and a state t, named 's.A.t' and ordered
    lexicographically by the positions of s, A and t. The termination
    weight of (s, A, t) is the weight of the strings derived from A that
    drive the DFA from s to t.

    Parameters
    ----------
    g : SnfWcfg
        the source grammar
    d : Dfa
        the automaton

    Attributes
    ----------
    inner : SnfWcfg
        the product grammar in relaxed simple normal form, a kind Q
        nonterminal has one binary rule per intermediate state
    triples : tuple
        the triples in the canonical order
    index : dict
        maps a triple to the name of its nonterminal
    source : tuple
        the pair (g, d)
    """

    def __init__(self, g, d):
        """ See help(ProductWcfg) for more info """
        self.source = (g, d)

        self.triples = tuple((s, A, t) for s in d.states
                             for A in g.nonterminals for t in d.states)
        self.index = {triple: '.'.join(triple) for triple in self.triples}
        self._triple_of = {name: triple for triple, name in self.index.items()}
        if len(self._triple_of) != len(self.triples):
            raise InputError(
                'state and nonterminal names give ambiguous product names, '
                'rename states or nonterminals containing "."')

        name = self.index
        rules, kinds = [], {}
        for (s, A, u) in self.triples:
            kinds[name[(s, A, u)]] = g.kinds[A]
            for rule in g.rules_of(A):
                rules.extend(self._product_rules(g, d, rule, s, u))

        accepting = [f for f in d.states if f in d.accepting]
        end = accepting[0] if accepting else d.start
        self.inner = SnfWcfg([name[triple] for triple in self.triples],
                             g.terminals, rules,
                             name[(d.start, g.start, end)], kinds=kinds,
                             strict=False)

    def _product_rules(self, g, d, rule, s, u):
        name = self.index
        A, kind = rule.lhs, g.kinds[rule.lhs]
        head = name[(s, A, u)]

        if kind is Kind.L:
            # (sAu) -> (sBu) with the weight of A -> B
            yield Rule(head, (name[(s, rule.rhs[0], u)],), rule.weight)
        elif kind is Kind.Q:
            # (sAu) -> (sBt)(tCu) for every state t
            B, C = rule.rhs
            for t in d.states:
                yield Rule(head, (name[(s, B, t)], name[(t, C, u)]),
                           Fraction(1))
        elif not rule.rhs:
            if s == u:
                yield Rule(head, (), Fraction(1))
        elif d.delta[(s, rule.rhs[0])] == u:
            yield Rule(head, rule.rhs, Fraction(1))

    def __repr__(self):
        g, d = self.source
        return (f'ProductWcfg({len(self.triples)} nonterminals from '
                f'{len(g.nonterminals)} nonterminals and {len(d.states)} states)')

    def __len__(self):
        return len(self.triples)

    def name(self, s, A, t):
        """ Name of the product nonterminal of triple (s, A, t) """
        try:
            return self.index[(s, A, t)]
        except KeyError:
            raise UnknownNonterminalError(f'({s}, {A}, {t}) is not a triple')

    def triple(self, name):
        """ Triple (s, A, t) of a product nonterminal """
        try:
            return self._triple_of[name]
        except KeyError:
            raise UnknownNonterminalError(f'{name} is not a product nonterminal')

    def solution_map(self, vector):
        """ Map a vector in the canonical variable order to the triples

        Parameters
        ----------
        vector : sequence
            one value per triple, e.g. a solution of the product system

        Returns
        -------
        dict
            maps each triple to its value
        """
        if len(vector) != len(self.triples):
            raise InputError(
                f'vector has length {len(vector)}, the product has '
                f'{len(self.triples)} nonterminals')
        return dict(zip(self.triples, vector))

    def to_text(self):
        """ The product grammar in the grammar file format """
        return self.inner.to_text()


def intersect(g, d):
    """ Product G x D of a grammar in simple normal form and a DFA

    Parameters
    ----------
    g : SnfWcfg
        the grammar, its terminals must be symbols of the DFA
    d : Dfa
        the complete automaton

    Returns
    -------
    ProductWcfg
        the product grammar with d^2 n nonterminals

    Raises
    ------
    AlphabetMismatchError
        If a terminal of the grammar is not in the alphabet of the DFA
    """
    if not isinstance(g, SnfWcfg):
        raise NotSupportedError(
            'the product is defined for grammars in simple normal form, '
            'convert with to_snf first')

    missing = [a for a in g.terminals if a not in set(d.alphabet)]
    if missing:
        raise AlphabetMismatchError(
            f'terminals {missing} of the grammar are not in the alphabet '
            f'{list(d.alphabet)} of the DFA')

    return ProductWcfg(g, d)


def regular_probability_of(solution, A, d):
    """ Probability that A generates a string accepted by the DFA

    Sums the solution of the product system over the triples
    (start, A, t) with t accepting.

    Parameters
    ----------
    solution : Mapping
        maps triples (s, B, t) to values, e.g. a TripleVector or the
        result of :py:meth:`ProductWcfg.solution_map`
    A : str
        source nonterminal
    d : Dfa
        the automaton of the product

    Returns
    -------
    Fraction
        the sum over the accepting states

    Raises
    ------
    UnknownNonterminalError
        If the solution has no triple for A
    """
    if not isinstance(solution, Mapping):
        raise InputError('solution must map triples (s, A, t) to values')
    if not any((d.start, A, t) in solution for t in d.states):
        raise UnknownNonterminalError(f'{A} is not a nonterminal of the product')

    return sum((Fraction(solution.get((d.start, A, t), 0))
                for t in d.states if t in d.accepting), Fraction(0))
