"""
Generator families and the Green pairing
========================================

The torsion part of the Hall algebra has three natural families of
generators, related by plethystic exponentials.  The pairing of T_{0,d}
with itself has a closed form in the point counts.
"""

from parahall.curve import Curve
from parahall.oracle import TPoly, closed_points, exp_convert, green_pairing_T0

N = 4
ones = exp_convert("T", "one", N)
thetas = exp_convert("T", "theta", N)
print("1_{0,2} in the T basis:", ones[1].to_json())
print("theta_{0,1} =", thetas[0].to_json())

back = exp_convert("theta", "T", N, thetas)
print("roundtrip exact:", back == [TPoly.gen(N, d) for d in range(1, N + 1)])

line = Curve.from_numerator(0, [1], l=2)
print("closed points of P^1 over F_2 of degree 1..3:", [str(closed_points(line, e)) for e in (1, 2, 3)])
for curve, d in [(line, 1), (line, 2), (Curve.from_numerator(1, [1, 1, 2], l=2), 1)]:
    r = green_pairing_T0(curve, d)
    # values at l = 2, written as a + b v
    lhs, rhs = (" + ".join(map(str, r[k])) + " v" for k in ("lhs", "rhs"))
    print(f"g = {curve.genus}, d = {d}: pairing {lhs}, closed form {rhs}, match {r['pass']}")
