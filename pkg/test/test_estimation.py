import context
import json
import os
import tempfile
import unittest
import warnings
from fractions import Fraction

import numpy as np

from scfgprob.estimation import (
    estimate, load_corpus, parse_corpus, sample_corpus, verify_estimated)
from scfgprob.grammar import Rule, Wcfg, bad_family, classify, GrammarClass
from scfgprob.utils.exceptions import (
    InputError, InvalidDerivationError, NotProperError, UnusedNonterminalError,
    UnusedRuleError, ZeroDenominatorError)

from generators import random_grammar

BINARY = """nonterminals: S
terminals: a
start: S
rules:
S -> S S
S -> a
"""


def corpus_data(skeleton, *entries):
    return {'skeleton': skeleton,
            'entries': [{'rules': rules, 'weight': weight}
                        for rules, weight in entries]}


class TestCorpus(unittest.TestCase):

    def test_yields(self):
        corpus = parse_corpus(corpus_data(BINARY, ([0, 1, 1], '1')))
        self.assertEqual(corpus.yields, [('a', 'a')])
        self.assertEqual(corpus.rule_counts(), {0: 1, 1: 2})

    def test_weights(self):
        self.assertRaises(InputError, parse_corpus,
                          corpus_data(BINARY, ([1], '1/2'), ([0, 1, 1], '1/4')))
        self.assertRaises(InputError, parse_corpus,
                          corpus_data(BINARY, ([1], '0'), ([0, 1, 1], '1')))

    def test_invalid_derivation(self):
        self.assertRaises(InvalidDerivationError, parse_corpus,
                          corpus_data(BINARY, ([0, 1], '1')))
        self.assertRaises(InvalidDerivationError, parse_corpus,
                          corpus_data(BINARY, ([1, 1], '1')))
        self.assertRaises(InvalidDerivationError, parse_corpus,
                          corpus_data(BINARY, ([2], '1')))

    def test_coverage(self):
        self.assertRaises(UnusedRuleError, parse_corpus,
                          corpus_data(BINARY, ([1], '1')))
        text = BINARY.replace('nonterminals: S', 'nonterminals: S B') + 'B -> a\n'
        self.assertRaises(UnusedNonterminalError, parse_corpus,
                          corpus_data(text, ([0, 1, 1], '1')))

    def test_format(self):
        self.assertRaises(InputError, parse_corpus, {'skeleton': BINARY})
        self.assertRaises(InputError, parse_corpus, [])

    def test_json_file(self):
        data = corpus_data(BINARY, ([1], '1/2'), ([0, 1, 1], '1/2'))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'corpus.json')
            with open(path, 'w') as f:
                json.dump(data, f)
            corpus = load_corpus(path)
            with open(path, 'w') as f:
                f.write('{not json')
            self.assertRaises(InputError, load_corpus, path)
            self.assertRaises(InputError, load_corpus,
                              os.path.join(tmp, 'missing.json'))
        again = parse_corpus(corpus.to_json())
        self.assertEqual(estimate(again), estimate(corpus))


class TestEstimate(unittest.TestCase):

    def test_single(self):
        data = corpus_data(BINARY.replace('S -> S S\n', ''), ([0], '1'))
        g = estimate(parse_corpus(data))
        self.assertEqual(g.rules, (Rule('S', ('a',), Fraction(1)),))

    def test_two_entries(self):
        corpus = parse_corpus(corpus_data(BINARY, ([1], '1/2'),
                                          ([0, 1, 1], '1/2')))
        g = estimate(corpus)
        self.assertEqual([r.weight for r in g.rules],
                         [Fraction(1, 4), Fraction(3, 4)])
        self.assertIs(classify(g), GrammarClass.PROPER_SCFG)
        self.assertEqual(verify_estimated(g),
                         {'consistent': True, 'noncritical': True})

    def test_unused_nonterminal(self):
        text = BINARY.replace('nonterminals: S', 'nonterminals: S B') + 'B -> a\n'
        corpus = parse_corpus(corpus_data(text, ([0, 1, 1], '1')),
                              require_coverage=False)
        self.assertRaises(ZeroDenominatorError, estimate, corpus)

    def test_unused_rule_dropped(self):
        text = BINARY + 'S -> eps\n'
        corpus = parse_corpus(corpus_data(text, ([0, 1, 1], '1')),
                              require_coverage=False)
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            g = estimate(corpus)

        self.assertEqual(len(w), 1)
        self.assertEqual(w[0].category, UserWarning)
        self.assertEqual(len(g.rules), 2)
        self.assertEqual([r.weight for r in g.rules],
                         [Fraction(1, 3), Fraction(2, 3)])

    def test_reordering(self):
        entries = [([1], '1/6'), ([0, 1, 1], '1/3'), ([0, 0, 1, 1, 1], '1/2')]
        g = estimate(parse_corpus(corpus_data(BINARY, *entries)))
        reordered = estimate(parse_corpus(corpus_data(BINARY, *entries[::-1])))
        self.assertEqual(g, reordered)
        split = entries[:2] + [([0, 0, 1, 1, 1], '1/4')]*2
        self.assertEqual(estimate(parse_corpus(corpus_data(BINARY, *split))), g)


class TestVerify(unittest.TestCase):

    def test_critical(self):
        g = Wcfg('S', 'a', [('S', 'SS', '1/2'), ('S', 'a', '1/2')], 'S')
        self.assertEqual(verify_estimated(g),
                         {'consistent': True, 'noncritical': False})

    def test_inconsistent(self):
        g = Wcfg('S', 'a', [('S', 'SS', '2/3'), ('S', 'a', '1/3')], 'S')
        self.assertEqual(verify_estimated(g),
                         {'consistent': False, 'noncritical': True})

    def test_not_proper(self):
        g = Wcfg('S', 'a', [('S', 'a', '1/3')], 'S')
        self.assertRaises(NotProperError, verify_estimated, g)

    def test_bad_family(self):
        self.assertEqual(verify_estimated(bad_family(2)),
                         {'consistent': True, 'noncritical': False})


class TestSampleCorpus(unittest.TestCase):

    def test_estimates_are_noncritical(self):
        rng = np.random.default_rng(51)
        checked = 0
        for _ in range(100):
            g = random_grammar(rng, nonterminals=3, max_body=3)
            try:
                corpus = sample_corpus(g, rng, 5, step_cap=500, max_tries=200)
            except InputError:
                continue
            self.assertEqual(len(corpus), 5)
            self.assertEqual(sum(w for _, w in corpus.entries), 1)
            checked += 1
            self.assertEqual(verify_estimated(estimate(corpus)),
                             {'consistent': True, 'noncritical': True})
        self.assertGreater(checked, 25)

    def test_skeleton_restricted(self):
        g = Wcfg('SB', 'ab', [('S', 'a', '1/2'), ('S', 'b', '1/2'),
                              ('B', 'b', 1)], 'S')
        corpus = sample_corpus(g, np.random.default_rng(52), 10)
        self.assertEqual(corpus.skeleton.nonterminals, ('S',))
        self.assertNotIn('B', {r.lhs for r in corpus.skeleton.rules})


if __name__ == '__main__':
    unittest.main()
