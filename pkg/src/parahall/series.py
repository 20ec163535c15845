"""Truncated power series and rational functions in one extra variable t.

Coefficients are ``Scalar`` or ``GenericScalar`` values.  A ``Series``
records its truncation order explicitly; ``RatFunc`` is an exact fraction of
integer polynomials in (c1..cg, v, t), used for identities such as the zeta
functional equation.
"""

from __future__ import annotations

import math
from fractions import Fraction

import flint

from .scalars import GenericScalar, Scalar, format_poly

__all__ = ["Series", "RatFunc"]


def _zero_like(x):
    return x * 0


class Series:
    """Coefficients of t^0..t^order; nothing beyond ``order`` is claimed."""

    __slots__ = ("var", "coeffs", "order")

    def __init__(self, coeffs, order: int | None = None, var: str = "t"):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        if not coeffs:
            coeffs = [Scalar.from_fraction(0)]
        zero = _zero_like(coeffs[0])
        coeffs = coeffs[: order + 1] + [zero] * (order + 1 - len(coeffs))
        self.var = var
        self.coeffs = tuple(coeffs)
        self.order = order

    def __getitem__(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient t^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, min(order, self.order), self.var)

    def _check(self, other: "Series"):
        if self.var != other.var:
            raise ValueError("series in different variables")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        n = min(self.order, other.order)
        return Series([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n, self.var)

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs], self.order, self.var)
        self._check(other)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = _zero_like(self.coeffs[0])
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return Series(out, n, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = _zero_like(a0)
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return Series(out, self.order, self.var)

    def __truediv__(self, other: "Series") -> "Series":
        return self * other.inverse()

    def derivative_shift(self) -> list:
        """Coefficients of t*d/dt."""
        return [c * k for k, c in enumerate(self.coeffs)]

    def exp(self) -> "Series":
        """exp of a series with zero constant term, via n*b_n = sum k*a_k*b_{n-k}."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        one = _zero_like(self.coeffs[0]) + 1
        out = [one]
        for n in range(1, self.order + 1):
            acc = _zero_like(one)
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * k * out[n - k]
            out.append(acc * Fraction(1, n))
        return Series(out, self.order, self.var)

    def log(self) -> "Series":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        d = Series(self.derivative_shift(), self.order, self.var) / self
        out = [_zero_like(self.coeffs[0])] + [d.coeffs[k] * Fraction(1, k) for k in range(1, self.order + 1)]
        return Series(out, self.order, self.var)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.var == other.var and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.order, self.coeffs))

    def to_json(self) -> dict:
        return {"var": self.var, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Series[{self.var}]({body}; O({self.var}^{self.order + 1}))"


# -- rational functions -----------------------------------------------------

_RF_CTX: dict[int | None, flint.fmpz_mpoly_ctx] = {}


def _rf_ctx(genus: int | None):
    """Context (v, t) for numeric data, (c1..cg, v, t) for generic data."""
    if genus not in _RF_CTX:
        names = (() if genus is None else tuple(f"c{i}" for i in range(1, genus + 1))) + ("v", "t")
        _RF_CTX[genus] = flint.fmpz_mpoly_ctx.get(names, "lex")
    return _RF_CTX[genus]


class RatFunc:
    """Fraction num/den of integer polynomials in (c.., v, t), kept reduced.

    Laurent monomials are absorbed by moving negative powers of v and t into
    the denominator, so the pair is always genuinely polynomial.
    """

    __slots__ = ("genus", "num", "den")

    def __init__(self, genus: int | None, num, den=None, *, _canonical: bool = False):
        ctx = _rf_ctx(genus)
        if den is None:
            den = ctx.from_dict({(0,) * ctx.nvars(): 1})
        self.genus = genus
        if not _canonical:
            num, den = self._canonicalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _canonicalize(num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in RatFunc")
        ctx = den.context()
        if num.is_zero():
            return num, ctx.from_dict({(0,) * ctx.nvars(): 1})
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        c = math.gcd(int(num.content()), int(den.content()))
        if c > 1:
            num = num // c
            den = den // c
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return num, den

    @property
    def ctx(self):
        return _rf_ctx(self.genus)

    @classmethod
    def from_laurent(cls, genus, terms: dict[tuple[int, ...], int]) -> "RatFunc":
        """Build from {exponent tuple: integer} where exponents may be negative."""
        ctx = _rf_ctx(genus)
        if not terms:
            return cls(genus, ctx.from_dict({}))
        n = ctx.nvars()
        low = [min(min(e[i] for e in terms), 0) for i in range(n)]
        num = ctx.from_dict({tuple(e[i] - low[i] for i in range(n)): c for e, c in terms.items() if c})
        den = ctx.from_dict({tuple(-x for x in low): 1})
        return cls(genus, num, den)

    @classmethod
    def t(cls, genus=None) -> "RatFunc":
        return cls.from_laurent(genus, {(0,) * (_rf_ctx(genus).nvars() - 1) + (1,): 1})

    @classmethod
    def const(cls, genus, value) -> "RatFunc":
        """Lift a Scalar, GenericScalar or rational number."""
        ctx = _rf_ctx(genus)
        n = ctx.nvars()
        if isinstance(value, GenericScalar):
            if genus != value.genus:
                raise ValueError("genus mismatch lifting a GenericScalar")

            def lift(poly):
                return ctx.from_dict({tuple(int(x) for x in e) + (0,): int(c) for e, c in poly.to_dict().items()})

            return cls(genus, lift(value._num), lift(value._den), _canonical=True)
        if not isinstance(value, Scalar):
            value = Scalar.from_fraction(value)
        pad = (0,) * (n - 2)

        def lift1(coeffs):
            return ctx.from_dict({pad + (k, 0): int(c) for k, c in enumerate(coeffs) if c})

        return cls(genus, lift1(value.numerator), lift1(value.denominator), _canonical=True)

    @classmethod
    def poly_in_t(cls, genus, coeffs) -> "RatFunc":
        """sum coeffs[k] * t^k with Scalar/GenericScalar coefficients."""
        out = cls.const(genus, 0)
        tt = cls.t(genus)
        for k, c in enumerate(coeffs):
            if c != 0:
                out = out + cls.const(genus, c) * tt ** k
        return out

    def _wrap(self, other):
        if isinstance(other, RatFunc):
            if other.genus != self.genus:
                raise ValueError("rational functions over different coefficient rings")
            return other
        if isinstance(other, (int, Fraction, Scalar, GenericScalar)):
            return RatFunc.const(self.genus, other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.genus, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.genus, -self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.genus, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.genus, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.genus, self.num ** k, self.den ** k, _canonical=True)
        return (RatFunc.const(self.genus, 1) / self) ** (-k)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.genus, str(self.num), str(self.den)))

    # substitutions in t

    def _map_terms(self, fn):
        ctx = self.ctx

        def mp(poly):
            out: dict[tuple[int, ...], int] = {}
            for e, c in poly.to_dict().items():
                e2 = fn(tuple(int(x) for x in e))
                out[e2] = out.get(e2, 0) + int(c)
            return out

        return mp(self.num), mp(self.den)

    def scale_t(self, vpower: int) -> "RatFunc":
        """Substitute t -> v^vpower * t."""

        def fn(e):
            return e[:-2] + (e[-2] + vpower * e[-1], e[-1])

        n, d = self._map_terms(fn)
        return RatFunc.from_laurent(self.genus, n) / RatFunc.from_laurent(self.genus, d)

    def invert_t(self) -> "RatFunc":
        """Substitute t -> 1/t."""

        def fn(e):
            return e[:-1] + (-e[-1],)

        n, d = self._map_terms(fn)
        return RatFunc.from_laurent(self.genus, n) / RatFunc.from_laurent(self.genus, d)

    def series(self, order: int) -> Series:
        """Expansion at t = 0; requires the denominator not to vanish at t = 0."""
        num = self._t_coeffs(self.num)
        den = self._t_coeffs(self.den)
        low = min((k for k, c in enumerate(den) if c != 0))
        if low:
            raise ValueError("rational function has a pole at t = 0")
        width = order + 1
        pad = lambda xs: (xs + [xs[0] * 0] * width)[:width]
        return Series(pad(num), order) / Series(pad(den), order)

    def _t_coeffs(self, poly) -> list:
        """Split a polynomial into coefficients of powers of t, each a scalar."""
        by_t: dict[int, dict] = {}
        for e, c in poly.to_dict().items():
            e = tuple(int(x) for x in e)
            by_t.setdefault(e[-1], {})[e[:-1]] = int(c)
        top = max(by_t) if by_t else 0
        out = []
        for k in range(top + 1):
            terms = by_t.get(k, {})
            out.append(self._scalar_from_terms(terms))
        return out

    def _scalar_from_terms(self, terms):
        if self.genus is None:
            top = max((e[0] for e in terms), default=0)
            coeffs = [0] * (top + 1)
            for e, c in terms.items():
                coeffs[e[0]] += c
            return Scalar.from_coeffs(coeffs)
        from .scalars import _generic_ctx

        ctx = _generic_ctx(self.genus)
        return GenericScalar(self.genus, ctx.from_dict(terms) if terms else ctx.from_dict({}))

    def __str__(self):
        names = tuple(str(x) for x in self.ctx.names())

        def render(poly):
            terms = sorted((tuple(int(x) for x in e), int(c)) for e, c in poly.to_dict().items())
            return format_poly([(c, e) for e, c in terms], names)

        if self.den.is_one():
            return render(self.num)
        return f"({render(self.num)})/({render(self.den)})"

    def __repr__(self):
        return f"RatFunc('{self}')"
