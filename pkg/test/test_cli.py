import context
import io
import json
import os
import tempfile
import unittest
from unittest import mock
from fractions import Fraction

from scfgprob import __version__
from scfgprob.cli import run_cli
from scfgprob.grammar import parse_grammar

BINARY = """nonterminals: S
terminals: a
start: S
rules:
S -> S S [2/3]
S -> a [1/3]
"""


def run(*argv):
    """ Exit code and output of the command line interface """
    out = io.StringIO()
    code = run_cli(list(argv), stdout=out)
    return code, out.getvalue()


class TestCli(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.binary = cls.write('binary.txt', BINARY)
        code, text = run('fixtures', '--n', '1')
        cls.family = cls.write('family.txt', text)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    @classmethod
    def write(cls, name, text):
        path = os.path.join(cls.tmp.name, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_prob(self):
        code, text = run('prob', '--grammar', self.family, '--infix', 'aa',
                         '--start', 'A_0', '--eps', '1/1048576', '--json')
        self.assertEqual(code, 0)
        out = json.loads(text)
        lo = Fraction(out['probability_lo'])
        self.assertLessEqual(lo, Fraction(1, 2))
        self.assertLessEqual(Fraction(1, 2) - lo, Fraction(1, 2**20))
        self.assertEqual(out['critical_depth'], 1)
        self.assertEqual(out['mode'], 'adaptive')

    def test_prob_samples(self):
        code, text = run('prob', '--grammar', self.binary, '--all',
                         '--samples', '20', '--seed', '3', '--json')
        self.assertEqual(code, 0)
        out = json.loads(text)
        self.assertEqual(out['samples'], 20)
        self.assertLessEqual(Fraction(out['sampled']), 1)

    def test_prob_text(self):
        code, text = run('prob', '--grammar', self.binary, '--all')
        self.assertEqual(code, 0)
        self.assertIn('probability', text)

    def test_analyze(self):
        path = self.write('family3.txt', run('fixtures', '--n', '3')[1])
        code, text = run('analyze', '--grammar', path, '--json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text)['critical_depth'], 3)

        code, text = run('analyze', '--grammar', path)
        self.assertIn('critical depth: 3', text)

    def test_termination(self):
        code, text = run('termination', '--grammar', self.family, '--json')
        self.assertEqual(code, 0)
        out = json.loads(text)
        self.assertEqual(set(out), {'A_0', 'A_1', 'B_0', 'B_1'})
        self.assertTrue(all(r['exact'] for r in out.values()))

    def test_snf(self):
        code, text = run('snf', '--grammar', self.binary)
        self.assertEqual(code, 0)
        path = self.write('snf.txt', text)
        code, text = run('prob', '--grammar', path, '--all', '--json')
        lo = Fraction(json.loads(text)['probability_lo'])
        self.assertLessEqual(lo, Fraction(1, 2))
        self.assertLessEqual(Fraction(1, 2) - lo, Fraction(1, 2**20))

    def test_product(self):
        code, text = run('product', '--grammar', self.binary, '--exact', 'a')
        self.assertEqual(code, 0)
        g = parse_grammar(text)
        self.assertIn('t1.S.t2', g.nonterminals)

    def test_fixtures(self):
        code, text = run('fixtures', '--automaton', '--json')
        self.assertEqual(code, 0)
        self.assertIn('states: t1 t2 t3', json.loads(text)['dfa'])

    def test_estimate(self):
        corpus = {'skeleton': BINARY.replace(' [2/3]', '').replace(' [1/3]', ''),
                  'entries': [{'rules': [1], 'weight': '1/2'},
                              {'rules': [0, 1, 1], 'weight': '1/2'}]}
        path = self.write('corpus.json', json.dumps(corpus))
        code, text = run('estimate', '--corpus', path, '--json')
        self.assertEqual(code, 0)
        out = json.loads(text)
        self.assertTrue(out['consistent'])
        self.assertTrue(out['noncritical'])
        self.assertIn('S -> a [3/4]', out['grammar'])

    def test_balance(self):
        vector = {'states': ['p', 'q'], 'nonterminals': ['A'],
                  'values': [['p', 'A', 'p', '1/2'], ['p', 'A', 'q', '1/2'],
                             ['q', 'A', 'p', '1'], ['q', 'A', 'q', '0']]}
        path = self.write('vector.json', json.dumps(vector))
        code, text = run('balance', '--vector', path, '--json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text), {'max_balance_defect': '0',
                                            'balanced': True})

    def test_invalid_eps(self):
        with io.StringIO() as err, mock.patch('sys.stderr', err):
            code, _ = run('prob', '--grammar', self.binary, '--all',
                          '--eps', '2')
        self.assertEqual(code, 2)

    def test_error(self):
        path = self.write('broken.txt', BINARY.replace('S -> a [1/3]', 'S a'))
        code, text = run('analyze', '--grammar', path)
        self.assertEqual(code, 1)
        error = json.loads(text)
        self.assertEqual(error['error'], 'GrammarSyntaxError')
        self.assertEqual(error['line'], 6)

    def test_missing_file(self):
        code, text = run('snf', '--grammar', os.path.join(self.tmp.name, 'no'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['error'], 'InputError')

    def test_missing_corpus(self):
        code, text = run('estimate', '--corpus',
                         os.path.join(self.tmp.name, 'no.json'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['error'], 'InputError')

    def test_not_scfg(self):
        path = self.write('weighted.txt', BINARY.replace('[2/3]', '[2]'))
        code, text = run('prob', '--grammar', path, '--all')
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['error'], 'NotScfgError')

    def test_version(self):
        with io.StringIO() as out, mock.patch('sys.stdout', out):
            code, _ = run('--version')
            self.assertIn(__version__, out.getvalue())
        self.assertEqual(code, 0)


if __name__ == '__main__':
    unittest.main()
