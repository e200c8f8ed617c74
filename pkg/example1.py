from fractions import Fraction

import scfgprob as sp

# grammar of critical depth 2 and the automaton of strings containing aa
g = sp.bad_family(2)
d = sp.build_pattern_dfa('Infix', 'aa', g.terminals)

# probability that the start symbol generates a string with infix aa
result = sp.compute_regular_probability(g, d, eps=Fraction(1, 2**20))
print(result)

# print the logger to see which mode was used and if warnings were encountered
result.print_logger(level='info')

# inspect the convergence of the Newton iterates
result.trace.print_trace(variables=['t1.A_0.t3'])
result.trace.plot(variables=['t1.A_0.t3'])
