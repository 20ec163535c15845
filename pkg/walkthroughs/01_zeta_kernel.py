"""
The zeta kernel of a curve
==========================

Everything downstream is built from the zeta function of a curve over F_l.
Scalars live in Q(v) with l = v^-2, so a curve can stay symbolic in l and
only be evaluated at a number when we ask for it.
"""

from fractions import Fraction

from parahall.curve import Curve, functional_equation_check, h_series, point_count, xi_coeffs, zeta_series

# the projective line: zeta(t) = 1/((1 - t)(1 - l t))
line = Curve(0)
print("zeta of P^1:", [str(c) for c in zeta_series(line, 4).coeffs])

# an elliptic curve given by its numerator 1 - a t + l t^2, here with a = 1
E = Curve(1, [-1])
print("functional equation holds:", functional_equation_check(E)[0])

# point counts, symbolic in l and then at l = 2
for k in (1, 2, 3):
    n = point_count(E, k)
    print(f"#E(F_l^{k}) = {n}   at l = 2: {n.at_l_rational(2)}")

# the shuffle kernel h(t) and the coefficients xi_k
print("h(t) to order 3:", [str(c) for c in h_series(line, 3).coeffs])
print("xi_1 .. xi_3 of P^1:", [str(x) for x in xi_coeffs(line, 3).coeffs[1:]])

# a genus two curve with rational Frobenius data
C = Curve(2, [Fraction(1, 2), -2])
print("genus 2 numerator:", [str(c) for c in C.numerator()])
