import context
import unittest
from fractions import Fraction

import numpy as np

from scfgprob.core.analysis import (
    zero_variables, remove_zeros, one_variables, critical_sccs,
    bottom_critical_sccs, critical_depth, is_critical_overall, analyze,
    analyze_grammar, tweak_factor, tweak_grammar, AnalysisReport)
from scfgprob.core.equations import PolySystem, build_system
from scfgprob.core.solver import NewtonConfig, kleene_oracle, rounded_newton
from scfgprob.grammar import (
    Rule, SnfWcfg, Wcfg, bad_family, encoding_size, to_snf)
from scfgprob.utils.exceptions import NotPpsError, NotScfgError

from generators import random_pps

HALF = Fraction(1, 2)

CRITICAL = PolySystem(['x'], [{(0, 0): HALF, (): HALF}])
QUADRATIC = PolySystem(['x'], [{(0, 0): Fraction(2, 3), (): Fraction(1, 3)}])
LINEAR = PolySystem(['x'], [{(0,): HALF, (): Fraction(1, 4)}])


def binary_grammar(p_binary):
    return Wcfg('S', 'a', [('S', 'SS', p_binary), ('S', 'a', 1 - p_binary)],
                'S')


def permuted(p, order):
    position = {i: k for k, i in enumerate(order)}
    polynomials = []
    for i in order:
        polynomials.append({tuple(position[j] for j in monomial): c
                            for monomial, c in p.polynomials[i].items()})
    return PolySystem([p.variables[i] for i in order], polynomials)


class TestZeroVariables(unittest.TestCase):

    def test_fixtures(self):
        self.assertEqual(zero_variables(PolySystem(['S'], [{(0, 0): 1}])), {'S'})
        self.assertEqual(zero_variables(CRITICAL), set())
        p = PolySystem(['A', 'B'], [{(0, 1): 1}, {(): 1}])
        self.assertEqual(zero_variables(p), {'A'})

    def test_remove(self):
        p = PolySystem(['A', 'B', 'C'], [{(0, 1): 1}, {(): 1},
                                         {(0,): 1, (): HALF}])
        reduced = remove_zeros(p)
        self.assertEqual(reduced.zeros, {'A'})
        self.assertEqual(reduced.system.variables, ('B', 'C'))
        self.assertEqual(reduced.system.polynomials[1], {(): HALF})
        self.assertEqual(reduced.expand([1, HALF], 3), [0, 1, HALF])

    def test_no_zeros(self):
        self.assertEqual(remove_zeros(CRITICAL).system, CRITICAL)

    def test_all_zero(self):
        reduced = remove_zeros(PolySystem(['S'], [{(0, 0): 1}]))
        self.assertEqual(len(reduced.system), 0)


class TestOneVariables(unittest.TestCase):

    def test_fixtures(self):
        self.assertEqual(one_variables(CRITICAL), {'x'})
        self.assertEqual(one_variables(QUADRATIC), set())
        self.assertEqual(one_variables(LINEAR), set())

    def test_not_pps(self):
        p = PolySystem(['x'], [{(0,): 2}])
        self.assertRaises(NotPpsError, one_variables, p)

    def test_bad_family_terminates(self):
        for n in range(4):
            p = build_system(to_snf(bad_family(n)))
            self.assertEqual(one_variables(p), set(p.variables))

    def test_kleene_oracle(self):
        rng = np.random.default_rng(12)
        one = Fraction(1, 2**40)
        for _ in range(200):
            p = random_pps(rng)
            zeros = {name for name, value in
                     zip(p.variables, kleene_oracle(p, len(p))) if value == 0}
            self.assertEqual(zero_variables(p), zeros)

            reduced = remove_zeros(p).system
            if not len(reduced):
                continue
            cfg = NewtonConfig(mode='adaptive', eps=Fraction(1, 2**44),
                               initial_h=48)
            trace = rounded_newton(reduced, cfg)
            ones = {name for name, value in zip(reduced.variables, trace.final)
                    if 1 - value < one}
            self.assertEqual(one_variables(p), ones)


class TestCriticality(unittest.TestCase):

    def test_fixtures(self):
        self.assertEqual(critical_sccs(CRITICAL), [{'x'}])
        self.assertEqual(critical_depth(CRITICAL), 1)
        self.assertEqual(critical_sccs(QUADRATIC), [])
        self.assertEqual(critical_depth(QUADRATIC), 0)

    def test_bad_family_three(self):
        p = build_system(to_snf(bad_family(3)))
        sccs = critical_sccs(p)
        self.assertEqual(len(sccs), 3)
        for i, S in enumerate(sorted(sccs, key=sorted)):
            self.assertIn(f'A_{i}', S)
        self.assertEqual(len(bottom_critical_sccs(p)), 1)
        self.assertIn('A_2', bottom_critical_sccs(p)[0])

    def test_bad_family_depth(self):
        for n in range(1, 6):
            self.assertEqual(analyze_grammar(bad_family(n)).critical_depth, n)

    def test_permutation(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            p = random_pps(rng)
            order = [int(i) for i in rng.permutation(len(p))]
            self.assertEqual(set(critical_sccs(p)),
                             set(critical_sccs(permuted(p, order))))

    def test_overall(self):
        self.assertTrue(is_critical_overall(CRITICAL, [1]))
        self.assertFalse(is_critical_overall(QUADRATIC, [HALF]))
        self.assertFalse(is_critical_overall(LINEAR, [HALF]))
        p = build_system(to_snf(bad_family(1)))
        self.assertTrue(is_critical_overall(p, [1]*len(p)))
        # critical component below a noncritical one
        p = PolySystem(['y', 'x'], [{(0,): Fraction(1, 4), (1,): Fraction(1, 4)},
                                    {(1, 1): HALF, (): HALF}])
        self.assertEqual(critical_sccs(p), [{'x'}])
        self.assertTrue(is_critical_overall(p, [Fraction(1, 3), 1]))


class TestAnalysisReport(unittest.TestCase):

    def test_critical(self):
        report = analyze(CRITICAL)
        self.assertTrue(report.is_critical)
        self.assertEqual(report.to_json(), {
            'zero': [], 'one': ['x'], 'critical_sccs': [['x']],
            'critical_depth': 1, 'encoding_size': None})

    def test_grammar(self):
        report = analyze_grammar(binary_grammar(Fraction(2, 3)))
        self.assertEqual(report.encoding_size, 21)
        self.assertFalse(report.is_critical)
        df = report.to_dataframe()
        self.assertEqual(list(df.columns), ['scc', 'zero', 'one', 'critical'])
        # only the terminal rule nonterminal terminates surely
        self.assertEqual(df['one'].to_dict(),
                         {'S': False, 'S_r1': False, 'S_r2': True})

    def test_not_pps(self):
        report = AnalysisReport(PolySystem(['x'], [{(0,): 2, (): 1}]))
        self.assertEqual(report.one_vars, set())
        self.assertEqual(len(report.logger['WARNING']), 1)


class TestTweak(unittest.TestCase):

    def test_factor(self):
        self.assertEqual(tweak_factor(20, 1, 1), Fraction(1, 2**566))
        self.assertEqual(tweak_factor(1, HALF, 0), Fraction(1, 2**18))

    def test_noncritical(self):
        g = to_snf(binary_grammar(Fraction(2, 3)))
        self.assertIs(tweak_grammar(g, HALF), g)

    def test_binary(self):
        g = to_snf(binary_grammar(HALF))
        eps = Fraction(1, 2**10)
        tweaked = tweak_grammar(g, eps)
        delta = tweak_factor(encoding_size(g), eps, 1)
        X = g.rules_of('S')[0].rhs[0]
        changed = [(old, new) for old, new in zip(g.rules, tweaked.rules)
                   if old != new]
        self.assertEqual(changed, [(Rule('S', (X,), HALF),
                                    Rule('S', (X,), HALF*(1 - delta)))])
        self.assertEqual(critical_depth(build_system(tweaked)), 0)

    def test_critical_fixtures(self):
        for g in [binary_grammar(HALF), bad_family(1), bad_family(2),
                  bad_family(3)]:
            tweaked = tweak_grammar(to_snf(g), Fraction(1, 2**20))
            self.assertEqual(analyze_grammar(tweaked).critical_depth, 0)

    def test_weighted(self):
        g = SnfWcfg('SX', 'a', [('S', 'X', 2), ('X', 'a', 1)], 'S')
        self.assertRaises(NotScfgError, tweak_grammar, g, HALF)


if __name__ == '__main__':
    unittest.main()
