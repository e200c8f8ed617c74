import json
from collections import Counter
from fractions import Fraction

from .core.analysis import analyze_grammar
from .core.exactmath import format_rational, to_fraction
from .grammar import (
    GrammarClass, Rule, Wcfg, classify, parse_grammar, sample_derivation)
from .utils.exceptions import (
    InputError, InvalidDerivationError, NotProperError, UnusedNonterminalError,
    UnusedRuleError, ZeroDenominatorError, user_warning)


def _leftmost(g, derivation):
    """ Replay a derivation and return its yield

    Raises
    ------
    InvalidDerivationError
        If a rule does not rewrite the leftmost nonterminal or the
        derivation ends with nonterminals left
    """
    form, string = [g.start], []
    for step, position in enumerate(derivation):
        if not isinstance(position, int) or not 0 <= position < len(g.rules):
            raise InvalidDerivationError(
                f'step {step}: {position} is not a rule index of the skeleton')
        while form and not g.is_nonterminal(form[0]):
            string.append(form.pop(0))
        if not form:
            raise InvalidDerivationError(
                f'step {step}: no nonterminal left to rewrite')

        rule = g.rules[position]
        if rule.lhs != form[0]:
            raise InvalidDerivationError(
                f'step {step}: rule {position} rewrites {rule.lhs} but the '
                f'leftmost nonterminal is {form[0]}')
        form[:1] = rule.rhs

    if any(g.is_nonterminal(symbol) for symbol in form):
        raise InvalidDerivationError(
            'derivation is not complete, nonterminals are left')
    return tuple(string + form)


class DerivationCorpus:
    """ Weighted corpus of complete leftmost derivations

    Parameters
    ----------
    skeleton : Wcfg
        the grammar whose rules the derivations use, weights are ignored
    entries : iterable
        (derivation, weight) pairs, a derivation is a sequence of rule
        positions in skeleton.rules and the weights are positive
        rationals that sum to 1
    require_coverage : bool, optional, default: True
        if True every nonterminal and rule of the skeleton must be used
        by some derivation

    Attributes
    ----------
    skeleton : Wcfg
        the grammar skeleton
    entries : list of tuple
        (derivation, weight) pairs with the derivation a tuple of ints
    yields : list of tuple
        the string derived by each entry

    Raises
    ------
    InputError
        If a weight is not positive or the weights do not sum to 1
    InvalidDerivationError
        If a derivation is not a complete leftmost derivation
    UnusedNonterminalError
        If require_coverage and a nonterminal is never rewritten
    UnusedRuleError
        If require_coverage and a rule is never used
    """

    def __init__(self, skeleton, entries, require_coverage=True):
        """ See help(DerivationCorpus) for more info """
        self.skeleton = skeleton
        self.entries = []
        self.yields = []

        for derivation, weight in entries:
            weight = to_fraction(weight)
            if weight <= 0:
                raise InputError(
                    f'corpus weights must be positive, got {weight}')
            derivation = tuple(derivation)
            self.yields.append(_leftmost(skeleton, derivation))
            self.entries.append((derivation, weight))

        total = sum((weight for _, weight in self.entries), Fraction(0))
        if total != 1:
            raise InputError(
                f'corpus weights sum to {format_rational(total)}, not 1')

        if require_coverage:
            used = self.rule_counts()
            expanded = {skeleton.rules[i].lhs for i in used}
            for A in skeleton.nonterminals:
                if A not in expanded:
                    raise UnusedNonterminalError(
                        f'nonterminal {A} is not rewritten in any derivation')
            for i, rule in enumerate(skeleton.rules):
                if i not in used:
                    raise UnusedRuleError(
                        f'rule {i} ({rule.lhs} -> {" ".join(rule.rhs) or "eps"})'
                        ' is not used in any derivation')

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f'DerivationCorpus({len(self)} derivations, {self.skeleton})'

    def rule_counts(self):
        """ Expected rule counts

        Returns
        -------
        dict
            maps each used rule position r to the sum over the entries of
            weight times the number of uses of r
        """
        counts = {}
        for derivation, weight in self.entries:
            for position, k in Counter(derivation).items():
                counts[position] = counts.get(position, Fraction(0)) + weight*k
        return counts

    def to_json(self):
        """ JSON serialisable dict, the format read by :py:func:`load_corpus` """
        return {'skeleton': self.skeleton.to_text(),
                'entries': [{'rules': list(derivation),
                             'weight': format_rational(weight)}
                            for derivation, weight in self.entries]}


def parse_corpus(data, require_coverage=True):
    """ Corpus from its JSON structure

    Parameters
    ----------
    data : dict
        {'skeleton': grammar text, 'entries': [{'rules': [int, ...],
        'weight': 'a/b'}, ...]}, the skeleton rules may omit weights
    require_coverage : bool, optional, default: True
        see :py:class:`DerivationCorpus`

    Returns
    -------
    DerivationCorpus
        the validated corpus
    """
    try:
        skeleton_text = data['skeleton']
        entries = [(entry['rules'], entry['weight']) for entry in data['entries']]
    except (KeyError, TypeError):
        raise InputError(
            'a corpus must be a JSON object with "skeleton" and "entries": '
            '[{"rules": [...], "weight": "a/b"}, ...]')

    skeleton = parse_grammar(skeleton_text, weighted=False)
    return DerivationCorpus(skeleton, entries, require_coverage=require_coverage)


def load_corpus(path, require_coverage=True):
    """ Read a corpus from a JSON file, see :py:func:`parse_corpus` """
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise InputError(f'can not read {path}: {e.strerror}')
    except json.JSONDecodeError as e:
        raise InputError(f'{path} is not valid JSON: {e}')
    return parse_corpus(data, require_coverage=require_coverage)


def estimate(corpus):
    """ Estimate rule probabilities from a derivation corpus

    The probability of a rule is its expected count divided by the
    expected number of rewrites of its left hand side:

    .. math::
       p(A \\rightarrow \\gamma) = \\frac{\\sum_\\pi P(\\pi)
       C(A \\rightarrow \\gamma, \\pi)}{\\sum_\\pi P(\\pi) C(A, \\pi)}

    Rules that are never used are dropped, which only happens for a
    corpus built with require_coverage=False.

    Parameters
    ----------
    corpus : DerivationCorpus
        the corpus

    Returns
    -------
    Wcfg
        a proper SCFG with the nonterminals, terminals and used rules of
        the skeleton and exact rational probabilities

    Raises
    ------
    ZeroDenominatorError
        If a nonterminal of the skeleton is never rewritten
    """
    g = corpus.skeleton
    counts = corpus.rule_counts()

    denominators = {A: Fraction(0) for A in g.nonterminals}
    for position, count in counts.items():
        denominators[g.rules[position].lhs] += count

    for A, total in denominators.items():
        if total == 0:
            raise ZeroDenominatorError(
                f'{A} is never rewritten, its rule probabilities are undefined')

    rules = [Rule(rule.lhs, rule.rhs, counts[i]/denominators[rule.lhs])
             for i, rule in enumerate(g.rules) if i in counts]
    if len(rules) < len(g.rules):
        user_warning(f'{len(g.rules) - len(rules)} unused rule(s) dropped '
                     'from the estimate')
    return Wcfg(g.nonterminals, g.terminals, rules, g.start)


def verify_estimated(g):
    """ Decide if a proper SCFG is consistent and noncritical

    Every grammar returned by :py:func:`estimate` is both.

    Parameters
    ----------
    g : Wcfg
        a proper SCFG

    Returns
    -------
    dict
        {'consistent': bool, 'noncritical': bool}, consistent if every
        variable of the system of the grammar in simple normal form has
        value 1 and noncritical if the system has no critical SCC

    Raises
    ------
    NotProperError
        If the rule probabilities of some nonterminal do not sum to 1
    """
    if classify(g) is not GrammarClass.PROPER_SCFG:
        raise NotProperError(
            'the rule probabilities of every nonterminal must sum to 1')

    report = analyze_grammar(g)
    return {'consistent': set(report.one_vars) == set(report.system.variables),
            'noncritical': not report.critical_sccs}


def sample_corpus(g, rng, size, step_cap=1000, max_tries=None):
    """ Corpus of derivations sampled from a grammar

    Derivations that are stopped or exceed step_cap are resampled. The
    skeleton is g restricted to the nonterminals and rules the sample
    uses, so the corpus covers its skeleton. The weights are random
    positive integers normalised to sum to 1.

    Parameters
    ----------
    g : Wcfg
        an SCFG
    rng : numpy.random.Generator
        source of randomness
    size : int
        number of derivations
    step_cap : int, optional, default: 1000
        see :py:func:`sample_derivation`
    max_tries : int, optional, default: None
        maximum number of sampled derivations, 100*size if None

    Returns
    -------
    DerivationCorpus
        the corpus

    Raises
    ------
    InputError
        If fewer than size complete derivations are found in max_tries
    """
    max_tries = 100*size if max_tries is None else max_tries
    derivations = []
    for _ in range(max_tries):
        if len(derivations) == size:
            break
        sampled = sample_derivation(g, rng, step_cap=step_cap)
        if sampled is not None:
            derivations.append(sampled[0])
    if len(derivations) < size:
        raise InputError(
            f'only {len(derivations)} of {size} derivations completed in '
            f'{max_tries} tries')

    used = sorted({position for derivation in derivations
                   for position in derivation})
    renumber = {position: i for i, position in enumerate(used)}
    lhs = {g.rules[position].lhs for position in used}
    skeleton = Wcfg([A for A in g.nonterminals if A in lhs], g.terminals,
                    [Rule(g.rules[p].lhs, g.rules[p].rhs, 1) for p in used],
                    g.start)

    raw = [int(k) for k in rng.integers(1, 11, size=size)]
    total = sum(raw)
    entries = [([renumber[p] for p in derivation], Fraction(k, total))
               for derivation, k in zip(derivations, raw)]
    return DerivationCorpus(skeleton, entries)
