"""
Harder-Narasimhan types and Reineke inversion
=============================================

Inside a slope window we list the HN types of a class, expand the
semistable part by Reineke's alternating sum, and collect everything back
to the single semistable letter.
"""

from parahall.ktheory import KClass, slope
from parahall.lattice import Weights
from parahall.stability import (
    Window,
    enumerate_hn_types,
    hn_reineke_identity_check,
    hn_word,
    lower_hull,
    polygon_of,
    reineke_expand,
)

W = Weights.of(2)
alpha = KClass.make(W, 1, 0, [[1]])
win = Window(-1, 1, 2)
print("alpha =", alpha, " slope", slope(alpha))

types = enumerate_hn_types(alpha, win)
print(len(types), "HN types in the window")
for t in types[:4]:
    print("   ", [str(c) for c in t.classes], "->", hn_word(t, 0))

word = reineke_expand(alpha, win, 0)
print("Reineke expansion has", len(word.terms), "words")

ok, _, _ = hn_reineke_identity_check(alpha, win, 0)
print("collects to the single letter:", ok)

# the same identity with the tail condition imposed from the first block on
print("tail from k = 1:", hn_reineke_identity_check(alpha, win, 0, k_start=1)[0])

# HN polygons and their lower hull
polys = [polygon_of(t) for t in types if t.is_valid()]
hull = lower_hull(polys)
print("lower hull of", len(polys), "polygons:", [(str(x), str(y)) for x, y in hull.vertices])
