"""
Classes, Euler form and parabolic degree
========================================

A class is a rank, a degree d0, and at each marked point a chain of jumps.
The Euler form pairs two classes; on constant classes it is ordinary
Riemann-Roch.
"""

import random

from parahall.ktheory import (
    KClass,
    basis_s,
    basis_u,
    euler_form,
    omega_class,
    parabolic_degree,
    rr_average_check,
    random_class,
    slope,
    sym_form,
)
from parahall.lattice import Weights

W = Weights.of(3)
u = basis_u(W)
s = [basis_s(W, i, 0) for i in range(3)]

print("<u,u> for g = 0, 1, 2:", [euler_form(u, u, g) for g in range(3)])
print("torsion block <s_i, s_k>:")
for i in range(3):
    print("   ", [euler_form(s[i], s[k], 0) for k in range(3)])
print("same block, printed orientation:")
for i in range(3):
    print("   ", [euler_form(s[i], s[k], 0, orientation="printed") for k in range(3)])
print("(s_0, s_1) =", sym_form(s[0], s[1], 0))

# constant classes: (1 - g) r r' + r e - d r'
a, b = KClass.constant(W, 2, 1), KClass.constant(W, 1, -3)
print("<O^2(1), O(-3)> at g = 1:", euler_form(a, b, 1))

# the parabolic degree of the canonical class
W23 = Weights.of(2, 3)
print("Par(omega), g = 0, weights (2,3):", parabolic_degree(omega_class(W23, 0, 1)))
print("slope of a torsion class:", slope(basis_s(W23, 1, 0)))

# the averaged Riemann-Roch identity on random pairs
rng = random.Random(7)
pairs = [(random_class(W23, rng), random_class(W23, rng)) for _ in range(20)]
print("RR average holds on 20 random pairs:", all(rr_average_check(x, y, 1)[0] for x, y in pairs))
