"""
Hall algebras of torsion sheaves
================================

At an unmarked point torsion sheaves are modules over a DVR with residue
field F_l; at a point of weight n they are nilpotent representations of the
cyclic quiver C_n.  Both Hall algebras are computed here by counting.
"""

from parahall.oracle import (
    HallElem,
    Multisegment,
    Partition,
    T,
    bracket_constants,
    hall_number,
    hl_correspondence_check,
    model_for,
    verify_cyclic_bracket,
    verify_T_shift,
)

D = model_for("dvr", 2)
one = HallElem.basis(D, Partition((1,)))
print("1_(1) * 1_(1) =", one * one)
print("g^(1,1)_(1),(1) =", hall_number(Partition((1, 1)), Partition((1,)), Partition((1,)), D))

# Hall-Littlewood functions reproduce these structure constants
print("HL correspondence to degree 3:", hl_correspondence_check(3, 2)["pass"])

# the cyclic quiver C_3 over F_2
Q = model_for("quiver", 2, 3)
x, y = Multisegment.segment(3, 0, 1), Multisegment.segment(3, 2, 1)
print("<S_0, S_2> =", Q.euler(x, y), " <S_2, S_0> =", Q.euler(y, x))
print("T(0)T(2) =", T(3, 2, 0, 1) * T(3, 2, 2, 1))

# the nested commutator identity, and the edge case j = n = 2
print("C_3, j = 2:", verify_cyclic_bracket(3, 2, 0, 2)["pass"])
print("C_2, j = 2:", verify_cyclic_bracket(2, 2, 0, 2, allow_outside=True)["pass"])
c = bracket_constants(2, 2, 1)
print("C_2 counted Euler forms:", c["euler(big, simple)"], c["euler(simple, big)"])

# the shift relation for a long segment
print("shift relation n = 2, m = 1 over F_3:", verify_T_shift(2, 3, 0, 1, 1)["pass"])
