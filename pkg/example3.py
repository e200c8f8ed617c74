import numpy as np

import scfgprob as sp

rng = np.random.default_rng(1)

# sample a corpus of derivations and estimate the rule probabilities again
g = sp.Wcfg('SB', 'ab', [('S', 'SB', '1/3'), ('S', 'a', '2/3'),
                         ('B', 'b', '1/2'), ('B', 'ab', '1/2')], 'S')
corpus = sp.sample_corpus(g, rng, 50)
estimated = sp.estimate(corpus)
print(estimated.to_text())

# the estimated grammar is consistent and noncritical
print(sp.verify_estimated(estimated))

# the Newton iterates of a product system collapse to those of the grammar
snf = sp.to_snf(estimated)
d = sp.build_pattern_dfa('Infix', 'ab', snf.terminals)
product = sp.intersect(snf, d)
x = sp.newton_step(sp.build_system(product.inner), [0]*len(product))
y = sp.TripleVector.from_product(product, x)
print(sp.is_balanced_vector(y), list(sp.collapse_vector(y)))
