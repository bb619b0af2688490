# A first look at the cohomology rings H*(M_{a,b}).
#
# Each valid pair (a, b) gives a manifold over the product of simplices
# Δ^n x Δ^m.  The ring has two degree-2 generators x1, x2 and two relations.
import numpy as np

from qtoric.chars import QuasitoricPair, canonical_char_matrix, enumerate_pairs
from qtoric.ring import RingElement, make_presentation, multiply, power, rank_of_degree

p = QuasitoricPair(2, 3, (2, 2, 0), (1, 0))
R = make_presentation(p)
print(p)
print("characteristic matrix:")
print(np.array(canonical_char_matrix(p).rows))

# the relations, written in x1, x2
print("relations:", R.relation1, "|", R.relation2)

# ranks in each (internal) degree; topological degree is twice this
ranks = [rank_of_degree(R, d)[0] for d in range(p.n + p.m + 1)]
print("ranks by degree:", ranks)

# products reduce to a fixed normal form
x1, x2 = RingElement.monomial(1, 0), RingElement.monomial(0, 1)
print("x1^3 =", power(x1, 3, R))
print("x1^2 x2^3 =", multiply(power(x1, 2, R), power(x2, 3, R), R))

# how many pairs are there with small entries?
counts = np.zeros((4, 4), dtype=int)
for n in range(1, 4):
    for m in range(1, 4):
        counts[n, m] = len(enumerate_pairs(n, m, 2))
print("valid pairs with entries in [-2, 2], rows n, cols m:")
print(counts[1:, 1:])
