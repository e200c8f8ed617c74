from fractions import Fraction

import scfgprob as sp

# random binary trees, critical since the expected number of children is 1
g = sp.parse_grammar("""
nonterminals: S
terminals: a
start: S
rules:
S -> S S [1/2]
S -> a [1/2]
""")

# zero, one and critical variables of the system in simple normal form
report = sp.analyze_grammar(g)
report.print_report()

# the certified mode tweaks the critical component before solving
d = sp.build_pattern_dfa('All', '', g.terminals)
result = sp.compute_regular_probability(g, d, eps=Fraction(1, 16),
                                        mode='certified')
print(result.mode, result.h, result.lo, result.hi)

# termination probabilities of all nonterminals
g = sp.Wcfg('SA', 'a', [('S', 'SS', '2/3'), ('S', 'a', '1/3'),
                        ('A', 'AA', 1)], 'S')
for A, result in sp.termination(g).items():
    print(A, result.lo, result.hi, result.exact)
