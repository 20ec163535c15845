"""
Weighted shuffle products
=========================

Degree-one generators carry a degree and one residue per marked point.
Multiplying two of them sums over shuffles, with the kernel h(t_i/t_j) and a
Gamma factor for every marked point where the residues differ.
"""

from parahall.curve import Curve
from parahall.lattice import Weights
from parahall.shuffle import TruncPolicy, deconcat, generator, min_height, restrict, shuffle_mul

W = Weights.of(2)
X = Curve(0)
pol = TruncPolicy(0)

a = generator(W, X, 0, (1,), pol)
b = generator(W, X, 0, (0,), pol)
ab = shuffle_mul(a, b, pol)
print("a*b, two-slot terms:")
for key, c in ab.terms.items():
    print("   ", key, ":", c)

# the product is graded: every term has the same total degree
print("total degrees:", {sum(d for d, _, _ in k) for k in ab.terms})

# associativity holds exactly below the truncation height; above it the two
# bracketings have dropped different tails of the kernel expansion
pol = TruncPolicy(3)
raw = [(0, (1,)), (1, (0,)), (0, (0,))]
x, y, z = (generator(W, X, d, r, pol) for d, r in raw)
lhs = shuffle_mul(shuffle_mul(x, y, pol), z, pol)
rhs = shuffle_mul(x, shuffle_mul(y, z, pol), pol)
hmax = min_height(raw, W) + 3
print("equal as truncated series:", lhs == rhs)
print("associative up to height", hmax, ":", restrict(lhs, hmax) == restrict(rhs, hmax))

# deconcatenation splits a two-slot element back into pairs of one-slot pieces
print("deconcat(a*b) has", len(deconcat(ab, 1, 1)), "terms")
