"""Curves through their zeta numerators, and the kernels derived from them.

A curve of genus g is known here only through P(t) = 1 + p1 t + ... + p2g t^2g.
The functional equation fixes p_{2g-i} = l^{g-i} p_i, so only p1..pg are data.
Everything is exact in Q(v) with l = v^-2; Weil numbers are never computed.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GenericScalar, Scalar, coerce_scalar, vpow
from .series import RatFunc, Series

__all__ = [
    "Curve",
    "CurveError",
    "zeta_rational",
    "zeta_series",
    "point_count",
    "h_series",
    "h_rational",
    "xi_coeffs",
    "g_rational",
    "functional_equation_check",
    "h_g_identity_check",
    "specialize_curve",
    "report_scalar",
    "xi_rational",
]


class CurveError(ValueError):
    pass


class Curve:
    """Genus plus the free zeta-numerator coefficients p1..pg.

    ``l`` is an optional positive integer: when given, scalar results may be
    reported as numbers by reading v^-2 as l.  ``mode`` is "numeric" when the
    p_i are Scalars and "generic" when they are the indeterminates c_i.
    """

    __slots__ = ("genus", "l", "free", "mode")

    def __init__(self, genus: int, free=None, l: int | None = None, generic: bool = False):
        if genus < 0:
            raise CurveError("genus must be nonnegative")
        self.genus = genus
        self.l = None if l is None else int(l)
        if self.l is not None and self.l < 2:
            raise CurveError("l must be a prime power >= 2")
        if generic:
            self.mode = "generic"
            self.free = tuple(GenericScalar.gen(genus, i) for i in range(1, genus + 1))
        else:
            self.mode = "numeric"
            free = list(free or [])
            if len(free) != genus:
                raise CurveError(f"need {genus} free coefficients, got {len(free)}")
            self.free = tuple(coerce_scalar(x) for x in free)

    @classmethod
    def from_numerator(cls, genus: int, numerator, l: int | None = None) -> "Curve":
        """Accept the full list [1, p1, ..., p2g]; the tail is checked against l."""
        coeffs = [coerce_scalar(x) for x in numerator]
        if len(coeffs) != 2 * genus + 1:
            raise CurveError(f"numerator of a genus {genus} curve has {2 * genus + 1} coefficients")
        if coeffs[0] != 1:
            raise CurveError("P(0) must be 1")
        curve = cls(genus, coeffs[1 : genus + 1], l=l)
        derived = curve.numerator()
        for i, (given, want) in enumerate(zip(coeffs, derived)):
            if given == want:
                continue
            if l is None or not given.is_rational():
                raise CurveError(f"p_{i} = {given} violates the functional equation (expected {want})")
            if given.to_fraction() != want.at_l_rational(l):
                raise CurveError(f"p_{i} = {given} violates the functional equation at l = {l}")
        return curve

    @classmethod
    def from_json(cls, data: dict) -> "Curve":
        genus = int(data.get("genus", 0))
        l = data.get("l")
        num = data.get("numerator")
        if num == "generic":
            return cls(genus, generic=True, l=l)
        if num is None:
            if genus:
                raise CurveError("a positive-genus curve needs a numerator")
            num = [1]
        return cls.from_numerator(genus, num, l=l)

    def to_json(self) -> dict:
        out: dict = {"genus": self.genus}
        if self.l is not None:
            out["l"] = self.l
        if self.mode == "generic":
            out["numerator"] = "generic"
        else:
            out["numerator"] = [str(c) for c in self.numerator()]
        return out

    @property
    def is_generic(self) -> bool:
        return self.mode == "generic"

    @property
    def rf_genus(self):
        """Key for the RatFunc coefficient ring."""
        return self.genus if self.is_generic else None

    def one(self):
        return GenericScalar.from_scalar(self.genus, Scalar.from_fraction(1)) if self.is_generic else Scalar.from_fraction(1)

    def numerator(self) -> list:
        """[p0, ..., p2g] with p0 = 1 and the functional-equation tail."""
        g = self.genus
        p = [self.one()] + list(self.free)
        for i in range(g - 1, -1, -1):
            p.append(p[i] * vpow(-2 * (g - i)))
        return p

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return (self.genus, self.mode, self.free) == (other.genus, other.mode, other.free)

    def __hash__(self):
        return hash((self.genus, self.mode, self.free))

    def __repr__(self):
        if self.is_generic:
            return f"Curve(genus={self.genus}, generic)"
        return f"Curve(genus={self.genus}, P={[str(c) for c in self.numerator()]}, l={self.l})"


def _p_rational(curve: Curve) -> RatFunc:
    return RatFunc.poly_in_t(curve.rf_genus, curve.numerator())


def zeta_rational(curve: Curve) -> RatFunc:
    """P(t)/((1 - t)(1 - l t)) in reduced form."""
    gk = curve.rf_genus
    t = RatFunc.t(gk)
    l = RatFunc.const(gk, vpow(-2))
    return _p_rational(curve) / ((1 - t) * (1 - l * t))


def zeta_series(curve: Curve, order: int) -> Series:
    return zeta_rational(curve).series(order)


def _power_sums(curve: Curve, kmax: int) -> list:
    """s_k = sum of alpha_i^k for k = 1..kmax, by Newton's identities."""
    p = curve.numerator()
    zero = curve.one() * 0
    e = [(-1) ** k * p[k] if k < len(p) else zero for k in range(kmax + 1)]
    s = [zero]
    for k in range(1, kmax + 1):
        acc = e[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + e[i] * s[k - i] * (-1) ** (i - 1)
        s.append(acc)
    return s


def point_count(curve: Curve, k: int):
    """#X(F_{l^k}) = 1 + l^k - sum alpha_i^k, exact in Q(v)."""
    if k < 1:
        raise CurveError("point counts are defined for k >= 1")
    return _power_sums(curve, k)[k] * -1 + 1 + vpow(-2 * k)


def h_rational(curve: Curve) -> RatFunc:
    """h(t) = v^(2g-2) zeta(t) / zeta(v^2 t)."""
    z = zeta_rational(curve)
    return RatFunc.const(curve.rf_genus, vpow(2 * curve.genus - 2)) * z / z.scale_t(2)


def xi_rational(curve: Curve) -> RatFunc:
    z = zeta_rational(curve)
    return z / z.scale_t(2)


def _xi_series(curve: Curve, order: int) -> Series:
    # zeta(z)/zeta(v^2 z) = P(z)(1 - v^2 z) / (P(v^2 z)(1 - v^-2 z)), expanded directly
    p = curve.numerator()
    zero = curve.one() * 0
    width = order + 1

    def poly(cs):
        cs = list(cs) + [zero] * width
        return Series(cs[:width], order)

    num = poly(p) * poly([curve.one(), -vpow(2) * curve.one()])
    den = poly([c * vpow(2 * i) for i, c in enumerate(p)]) * poly([curve.one(), -vpow(-2) * curve.one()])
    return num / den


def xi_coeffs(curve: Curve, order: int) -> Series:
    """xi_0..xi_order, the coefficients of zeta(z)/zeta(v^2 z)."""
    return _xi_series(curve, order)


def h_series(curve: Curve, order: int) -> Series:
    return _xi_series(curve, order) * vpow(2 * curve.genus - 2)


def g_rational(curve: Curve) -> RatFunc:
    """g(t) = t^(g-1) * zeta~(1/t), where zeta~(t) = zeta(t)(1 - l t)(1 - l/t)."""
    gk = curve.rf_genus
    t = RatFunc.t(gk)
    l = RatFunc.const(gk, vpow(-2))
    ztilde = zeta_rational(curve) * (1 - l * t) * (1 - l / t)
    return t ** (curve.genus - 1) * ztilde.invert_t()


def functional_equation_check(curve: Curve) -> tuple[bool, RatFunc, RatFunc]:
    """zeta(v^2 t) against (v t)^(2g-2) zeta(1/t); returns (equal, lhs, rhs)."""
    gk = curve.rf_genus
    z = zeta_rational(curve)
    lhs = z.scale_t(2)
    vt = RatFunc.const(gk, vpow(1)) * RatFunc.t(gk)
    rhs = vt ** (2 * curve.genus - 2) * z.invert_t()
    return lhs == rhs, lhs, rhs


def h_g_identity_check(curve: Curve) -> tuple[bool, RatFunc]:
    """h(t) g(t) - g(1/t); returns (vanishes, difference)."""
    g = g_rational(curve)
    diff = h_rational(curve) * g - g.invert_t()
    return diff.is_zero(), diff


def specialize_curve(curve: Curve, values, l: int | None = None) -> Curve:
    """Numeric curve obtained by c_i -> values[i-1]."""
    if not curve.is_generic:
        return curve
    return Curve(curve.genus, [Fraction(x) for x in values], l=l if l is not None else curve.l)


def report_scalar(x, l: int | None) -> str:
    """String form of a scalar, collapsed to a number when l is known and it is rational there."""
    if l is not None and isinstance(x, Scalar):
        a, b = x.at_l(l)
        if b == 0:
            return str(a)
    return str(x)
