""" Random grammars, systems and automata for the property tests """
from fractions import Fraction

from scfgprob.automata import Dfa
from scfgprob.core.equations import PolySystem
from scfgprob.grammar import Rule, Wcfg, to_snf


def _normalised(rng, m, total=Fraction(1)):
    raw = [int(k) for k in rng.integers(1, 6, size=m)]
    return [total*Fraction(k, sum(raw)) for k in raw]


def random_grammar(rng, nonterminals=4, terminals=('a', 'b'), max_body=4,
                   proper=True):
    """ Random SCFG without eps rules, unit rules only point to later
    nonterminals so every string has finitely many derivations """
    k = int(rng.integers(1, nonterminals + 1))
    V = [f'N{i}' for i in range(k)]
    symbols = list(V) + list(terminals)

    rules = []
    for i, A in enumerate(V):
        m = int(rng.integers(1, 4))
        total = Fraction(1) if proper else Fraction(int(rng.integers(1, 5)), 4)
        for weight in _normalised(rng, m, total):
            shape = rng.random()
            if shape < 0.4:
                body = (str(rng.choice(list(terminals))),)
            elif shape < 0.55 and i < k - 1:
                body = (V[int(rng.integers(i + 1, k))],)
            else:
                length = int(rng.integers(2, max_body + 1))
                body = tuple(str(s) for s in rng.choice(symbols, size=length))
            rules.append(Rule(A, body, weight))
    return Wcfg(V, terminals, rules, V[0])


def small_proper_grammar(rng, max_snf=5):
    """ Random proper SCFG with at most max_snf nonterminals in SNF """
    while True:
        g = random_grammar(rng, nonterminals=2, max_body=2)
        if len(to_snf(g).nonterminals) <= max_snf:
            return g


def random_pps(rng, n=6):
    """ Random probabilistic polynomial system with at most n variables """
    k = int(rng.integers(1, n + 1))
    polynomials = []
    for _ in range(k):
        m = int(rng.integers(0, 4))
        if not m:
            polynomials.append({})
            continue
        total = Fraction(1) if rng.random() < 0.6 else Fraction(1, 2)
        terms = {}
        for coefficient in _normalised(rng, m, total):
            degree = int(rng.integers(0, 3))
            monomial = tuple(int(j) for j in rng.integers(0, k, size=degree))
            terms[monomial] = terms.get(monomial, 0) + coefficient
        polynomials.append(terms)
    return PolySystem([f'x{i}' for i in range(k)], polynomials)


def random_dfa(rng, alphabet=('a', 'b'), states=3):
    """ Random complete DFA with at most the given number of states """
    d = int(rng.integers(1, states + 1))
    Q = [f'q{i}' for i in range(d)]
    delta = {(s, a): Q[int(rng.integers(0, d))] for s in Q for a in alphabet}
    accepting = [s for s in Q if rng.random() < 0.5] or [Q[-1]]
    return Dfa(Q, alphabet, delta, Q[0], accepting)
