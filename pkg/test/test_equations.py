import context
import unittest
from fractions import Fraction

import numpy as np

from scfgprob.core.equations import (
    PolySystem, build_system, evaluate, jacobian, scc_dag)
from scfgprob.grammar import Wcfg, SnfWcfg, bad_family, to_snf, classify, GrammarClass
from scfgprob.utils.exceptions import InputError, NotSupportedError

from generators import random_grammar, random_pps

HALF = Fraction(1, 2)


def reachable(p, i):
    seen, stack = set(), [i]
    while stack:
        k = stack.pop()
        for j in p.dependencies(k):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


class TestBuildSystem(unittest.TestCase):

    def test_binary(self):
        g = to_snf(Wcfg('S', 'a', [('S', 'SS', HALF), ('S', 'a', HALF)], 'S'))
        p = build_system(g)
        self.assertTrue(p.is_pps)
        x = [HALF]*len(p)
        # S dispatches to S_r1 -> S S and S_r2 -> a
        self.assertEqual(p.polynomials[0],
                         {(1,): HALF, (2,): HALF})
        self.assertEqual(evaluate(p, x)[1], Fraction(1, 4))

    def test_no_rules(self):
        g = SnfWcfg('SA', 'a', [('S', 'a', 1)], 'S', kinds={'S': 'T', 'A': 'L'})
        p = build_system(g)
        self.assertEqual(p.polynomials[1], {})
        self.assertEqual(evaluate(p, [1, 1])[1], 0)

    def test_weighted(self):
        g = SnfWcfg('A', 'a', [('A', 'A', 2)], 'A')
        p = build_system(g)
        self.assertFalse(p.is_pps)
        self.assertEqual(p.polynomials[0], {(0,): 2})

    def test_merged(self):
        p = PolySystem(['x', 'y'], [{(0, 1): HALF}, {(): 1}])
        q = PolySystem(['x', 'y'], [{(0, 1): '1/4', (1, 0): '1/4'}, {(): 1}])
        self.assertEqual(p, q)

    def test_degree(self):
        self.assertRaises(NotSupportedError, PolySystem, ['x'],
                          [{(0, 0, 0): 1}])

    def test_json(self):
        p = PolySystem(['x'], [{(0, 0): HALF, (): HALF}])
        self.assertEqual(p.to_json(), {
            'variables': ['x'], 'is_pps': True,
            'equations': [{'variable': 'x',
                           'monomials': [['1/2', {}], ['1/2', {'x': 2}]]}]})


class TestEvaluate(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.critical = PolySystem(['x'], [{(0, 0): HALF, (): HALF}])
        cls.quadratic = PolySystem(['x'], [{(0, 0): Fraction(2, 3),
                                            (): Fraction(1, 3)}])

    def test_values(self):
        self.assertEqual(evaluate(self.critical, [0])[0], HALF)
        self.assertEqual(evaluate(self.critical, [1])[0], 1)
        self.assertEqual(evaluate(self.quadratic, [HALF])[0], HALF)

    def test_dimension(self):
        self.assertRaises(InputError, evaluate, self.critical, [0, 0])

    def test_jacobian(self):
        self.assertEqual(jacobian(self.critical, [1])[0, 0], 1)
        self.assertEqual(jacobian(self.quadratic, [HALF])[0, 0], Fraction(2, 3))
        p = PolySystem(['x1', 'x2', 'x3'], [{(1, 2): 1}, {(): 1}, {(): 1}])
        B = jacobian(p, [1, 2, 3])
        self.assertEqual(list(B[0]), [0, 3, 2])

    def test_monotone(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            p = random_pps(rng)
            x = [Fraction(int(k), 8) for k in rng.integers(0, 9, size=len(p))]
            y = [v + Fraction(int(k), 16)
                 for v, k in zip(x, rng.integers(0, 4, size=len(p)))]
            self.assertTrue(all(a <= b for a, b in
                                zip(evaluate(p, x), evaluate(p, y))))

    def test_finite_differences(self):
        rng = np.random.default_rng(4)
        h = Fraction(1, 10**6)
        for _ in range(30):
            p = random_pps(rng)
            n = len(p)
            x = [Fraction(int(k), 7) for k in rng.integers(0, 8, size=n)]
            B = jacobian(p, x)
            Px = evaluate(p, x)
            for j in range(n):
                e = [h*int(i == j) for i in range(n)]
                shifted = evaluate(p, [a + b for a, b in zip(x, e)])
                for i in range(n):
                    # the second derivative of a degree two PPS is at most 2
                    error = abs((shifted[i] - Px[i])/h - B[i, j])
                    self.assertLessEqual(error, 2*h)

    def test_proper_at_one(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            g = random_grammar(rng)
            p = build_system(to_snf(g))
            self.assertIs(classify(g), GrammarClass.PROPER_SCFG)
            self.assertTrue(all(v == 1 for v in evaluate(p, [1]*len(p))))


class TestSccDag(unittest.TestCase):

    def test_self_loop(self):
        dag = scc_dag(PolySystem(['x'], [{(0, 0): HALF, (): HALF}]))
        self.assertEqual(len(dag), 1)
        self.assertEqual(dag.below[0], frozenset())

    def test_chain(self):
        p = PolySystem(['x1', 'x2'], [{(1,): 1}, {(): HALF}])
        dag = scc_dag(p)
        self.assertEqual(len(dag), 2)
        S = dag.scc_of[0]
        self.assertEqual(dag.below[S], {1})
        self.assertEqual(dag.topo_order, [dag.scc_of[0], dag.scc_of[1]])
        self.assertEqual(dag.bottom_up(), [dag.scc_of[1], dag.scc_of[0]])

    def test_bad_family(self):
        g = bad_family(2)
        p = build_system(g)
        dag = scc_dag(p)
        for A in ['A_0', 'A_1']:
            i = p.index(A)
            self.assertEqual(dag.members[dag.scc_of[i]], (i,))
            self.assertIn(i, p.dependencies(i))
        self.assertEqual(len(dag), len(p))

    def test_brute_force(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            p = random_pps(rng, n=8)
            dag = scc_dag(p)
            reach = [reachable(p, i) for i in range(len(p))]
            for i in range(len(p)):
                for j in range(len(p)):
                    same = (i == j) or (j in reach[i] and i in reach[j])
                    self.assertEqual(dag.scc_of[i] == dag.scc_of[j], same)
                below = dag.below[dag.scc_of[i]]
                members = set(dag.members[dag.scc_of[i]])
                self.assertEqual(set(below), reach[i] - members)
            position = {S: k for k, S in enumerate(dag.topo_order)}
            for S, targets in dag.successors.items():
                for T in targets:
                    self.assertLess(position[S], position[T])


if __name__ == '__main__':
    unittest.main()
