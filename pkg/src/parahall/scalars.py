"""Exact coefficients in Q(v), where the symbol l is always read as v^-2.

Two coefficient types live here:

``Scalar``
    an element of Q(v), stored as a reduced fraction of integer polynomials.
``GenericScalar``
    a rational function in the free zeta coefficients c1..cg and v.

Both are immutable, hashable, and compare equal exactly when their
canonical forms agree.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from numbers import Rational

import flint

__all__ = [
    "Scalar",
    "GenericScalar",
    "SpecializationPoleError",
    "coerce_scalar",
    "v",
    "vpow",
    "ONE",
    "ZERO",
    "format_poly",
]


class SpecializationPoleError(ZeroDivisionError):
    """Raised when a substitution makes a denominator vanish."""


def _int_content(coeffs) -> int:
    return reduce(math.gcd, (abs(int(c)) for c in coeffs), 0)


def _term(coeff: int, exps: tuple[int, ...], names: tuple[str, ...], first: bool) -> str:
    mono = []
    for name, e in zip(names, exps):
        if e == 1:
            mono.append(name)
        elif e:
            mono.append(f"{name}^{e}")
    body = "*".join(mono)
    mag = abs(coeff)
    if not body:
        text = str(mag)
    elif mag == 1:
        text = body
    else:
        text = f"{mag}*{body}"
    if first:
        return ("-" if coeff < 0 else "") + text
    return (" - " if coeff < 0 else " + ") + text


def format_poly(terms: list[tuple[int, tuple[int, ...]]], names: tuple[str, ...]) -> str:
    """Render integer polynomial terms (coefficient, exponent tuple) as text."""
    if not terms:
        return "0"
    return "".join(_term(c, e, names, i == 0) for i, (c, e) in enumerate(terms))


class Scalar:
    """Element of Q(v) in canonical reduced form.

    The numerator and denominator are integer polynomials with no common
    factor (not even a constant one) and the denominator has a positive
    leading coefficient.
    """

    __slots__ = ("_num", "_den", "_key")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, flint.fmpz_poly):
            num = flint.fmpz_poly(num if isinstance(num, list) else [int(num)])
        if den is None:
            den = flint.fmpz_poly([1])
        elif not isinstance(den, flint.fmpz_poly):
            den = flint.fmpz_poly(den if isinstance(den, list) else [int(den)])
        if not _canonical:
            num, den = self._canonicalize(num, den)
        self._num = num
        self._den = den
        self._key = None

    @staticmethod
    def _canonicalize(num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Scalar")
        if num.is_zero():
            return flint.fmpz_poly([]), flint.fmpz_poly([1])
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        c = math.gcd(_int_content(num.coeffs()), _int_content(den.coeffs()))
        if c > 1:
            num = num // c
            den = den // c
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return num, den

    # construction helpers

    @classmethod
    def from_fraction(cls, value) -> "Scalar":
        value = Fraction(value)
        return cls([value.numerator], [value.denominator])

    @classmethod
    def from_coeffs(cls, num: list[int], den: list[int] | None = None) -> "Scalar":
        return cls(flint.fmpz_poly(list(num)), flint.fmpz_poly(list(den or [1])))

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Read the string form produced by ``str``; also accepts l and plain rationals."""
        return _parse_scalar(text)

    # accessors

    @property
    def numerator(self) -> list[int]:
        return [int(c) for c in self._num.coeffs()]

    @property
    def denominator(self) -> list[int]:
        return [int(c) for c in self._den.coeffs()]

    def key(self) -> tuple:
        if self._key is None:
            self._key = (tuple(self.numerator), tuple(self.denominator))
        return self._key

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_one(self) -> bool:
        return self._num == self._den

    def is_rational(self) -> bool:
        return self._num.degree() <= 0 and self._den.degree() == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        n = int(self._num.coeffs()[0]) if not self._num.is_zero() else 0
        return Fraction(n, int(self._den.coeffs()[0]))

    def v_power(self) -> int | None:
        """Return k when self == v^k exactly, else None."""
        for poly, sign in ((self._num, 1), (self._den, -1)):
            cs = poly.coeffs()
            if any(cs[:-1]) or cs[-1] != 1:
                return None
        return self._num.degree() - self._den.degree()

    def signed_v_power(self) -> tuple[int, int] | None:
        """Return (sign, k) when self == sign * v^k, else None."""
        for sign in (1, -1):
            k = (self * sign).v_power()
            if k is not None:
                return sign, k
        return None

    # arithmetic

    def _wrap(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Rational)):
            return Scalar.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return Scalar(self._num + other._num, self._den)
        return Scalar(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self._num, self._den, _canonical=True)

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
        if self.is_zero() or other.is_zero():
            return ZERO
        return Scalar(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self._den, self._num)

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k >= 0:
            return Scalar(self._num ** k, self._den ** k, _canonical=True)
        return self.inverse() ** (-k)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Rational)):
            return self == Scalar.from_fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __bool__(self):
        return not self.is_zero()

    # substitution

    def evaluate(self, value) -> Fraction:
        """Substitute a rational number for v."""
        value = Fraction(value)
        q = flint.fmpq(value.numerator, value.denominator)
        d = self._den(q)
        if d == 0:
            raise SpecializationPoleError(f"{self} has a pole at v = {value}")
        r = self._num(q) / d
        return Fraction(int(r.p), int(r.q))

    def at_l(self, l: int) -> tuple[Fraction, Fraction]:
        """Reduce modulo v^2 = 1/l; returns (a, b) with self = a + b*v."""
        inv_l = Fraction(1, l)

        def split(poly):
            even = odd = Fraction(0)
            for k, c in enumerate(poly.coeffs()):
                term = int(c) * inv_l ** (k // 2)
                if k % 2:
                    odd += term
                else:
                    even += term
            return even, odd

        ne, no = split(self._num)
        de, do = split(self._den)
        norm = de * de - inv_l * do * do
        if norm == 0:
            raise SpecializationPoleError(f"{self} has a pole at l = {l}")
        a = (ne * de - inv_l * no * do) / norm
        b = (no * de - ne * do) / norm
        return a, b

    def at_l_rational(self, l: int) -> Fraction:
        a, b = self.at_l(l)
        if b:
            raise ValueError(f"{self} is not rational at l = {l}")
        return a

    # text

    def __str__(self):
        names = ("v",)
        num = [(int(c), (k,)) for k, c in enumerate(self._num.coeffs()) if c]
        if self._den.is_one():
            return format_poly(num, names)
        den = [(int(c), (k,)) for k, c in enumerate(self._den.coeffs()) if c]
        return f"({format_poly(num, names)})/({format_poly(den, names)})"

    def __repr__(self):
        return f"Scalar('{self}')"


ZERO = Scalar(flint.fmpz_poly([]), flint.fmpz_poly([1]), _canonical=True)
ONE = Scalar(flint.fmpz_poly([1]), flint.fmpz_poly([1]), _canonical=True)


def vpow(k: int) -> Scalar:
    """v**k for any integer k."""
    if k >= 0:
        return Scalar(flint.fmpz_poly([0] * k + [1]), flint.fmpz_poly([1]), _canonical=True)
    return Scalar(flint.fmpz_poly([1]), flint.fmpz_poly([0] * (-k) + [1]), _canonical=True)


v = vpow(1)


def coerce_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(x)
    return Scalar.from_fraction(x)


# -- generic coefficients ---------------------------------------------------

_CTX_CACHE: dict[int, flint.fmpz_mpoly_ctx] = {}


def _generic_ctx(g: int):
    if g not in _CTX_CACHE:
        names = tuple(f"c{i}" for i in range(1, g + 1)) + ("v",)
        _CTX_CACHE[g] = flint.fmpz_mpoly_ctx.get(names, "lex")
    return _CTX_CACHE[g]


class GenericScalar:
    """Rational function in c1..cg and v with integer coefficients.

    This is the desk-scale stand-in for the ring where the zeta numerator
    coefficients stay indeterminate. ``specialize`` turns one into a Scalar.
    """

    __slots__ = ("genus", "_num", "_den")

    def __init__(self, genus: int, num, den=None, *, _canonical: bool = False):
        ctx = _generic_ctx(genus)
        if not isinstance(num, flint.fmpz_mpoly):
            num = ctx.from_dict({(0,) * (genus + 1): int(num)}) if num else ctx.from_dict({})
        if den is None:
            den = ctx.from_dict({(0,) * (genus + 1): 1})
        self.genus = genus
        if not _canonical:
            num, den = self._canonicalize(num, den)
        self._num = num
        self._den = den

    @staticmethod
    def _canonicalize(num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in GenericScalar")
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

    @classmethod
    def gen(cls, genus: int, i: int) -> "GenericScalar":
        """The indeterminate c_i (1-based)."""
        ctx = _generic_ctx(genus)
        exps = [0] * (genus + 1)
        exps[i - 1] = 1
        return cls(genus, ctx.from_dict({tuple(exps): 1}), _canonical=True)

    @classmethod
    def from_scalar(cls, genus: int, s: Scalar) -> "GenericScalar":
        ctx = _generic_ctx(genus)

        def lift(coeffs):
            return ctx.from_dict({(0,) * genus + (k,): int(c) for k, c in enumerate(coeffs) if c})

        return cls(genus, lift(s.numerator), lift(s.denominator), _canonical=True)

    def _wrap(self, other):
        if isinstance(other, GenericScalar):
            if other.genus != self.genus:
                raise ValueError("generic scalars of different genus")
            return other
        if isinstance(other, Scalar):
            return GenericScalar.from_scalar(self.genus, other)
        if isinstance(other, (int, Rational)):
            return GenericScalar.from_scalar(self.genus, Scalar.from_fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return GenericScalar(self.genus, self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return GenericScalar(self.genus, -self._num, self._den, _canonical=True)

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
        return GenericScalar(self.genus, self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self):
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of zero GenericScalar")
        return GenericScalar(self.genus, self._den, self._num)

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k >= 0:
            return GenericScalar(self.genus, self._num ** k, self._den ** k, _canonical=True)
        return self.inverse() ** (-k)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self.genus, str(self._num), str(self._den)))

    def specialize(self, values) -> Scalar:
        """Substitute rational values for c1..cg; the result lies in Q(v)."""
        values = [Fraction(x) for x in values]
        if len(values) != self.genus:
            raise ValueError(f"expected {self.genus} values, got {len(values)}")

        def image(poly) -> Scalar:
            acc: dict[int, Fraction] = {}
            for exps, c in poly.to_dict().items():
                exps = [int(e) for e in exps]
                term = Fraction(int(c))
                for x, e in zip(values, exps[:-1]):
                    term *= x ** e
                acc[exps[-1]] = acc.get(exps[-1], 0) + term
            if not acc:
                return ZERO
            top = max(acc)
            den = math.lcm(*(f.denominator for f in acc.values()))
            coeffs = [int(acc.get(k, 0) * den) for k in range(top + 1)]
            return Scalar(flint.fmpz_poly(coeffs), flint.fmpz_poly([den]))

        d = image(self._den)
        if d.is_zero():
            raise SpecializationPoleError(f"specialization pole: denominator of {self} vanishes at {values}")
        return image(self._num) / d

    def __str__(self):
        names = tuple(f"c{i}" for i in range(1, self.genus + 1)) + ("v",)

        def render(poly):
            terms = sorted((tuple(int(x) for x in e), int(c)) for e, c in poly.to_dict().items())
            return format_poly([(c, e) for e, c in terms], names)

        if self._den.is_one():
            return render(self._num)
        return f"({render(self._num)})/({render(self._den)})"

    def __repr__(self):
        return f"GenericScalar('{self}')"


def specialize(x, values) -> Scalar:
    """Substitution homomorphism c_i -> values[i-1]; Scalars pass through."""
    if isinstance(x, Scalar):
        return x
    return x.specialize(values)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\*\*|[-+*/^()]))")


def _parse_scalar(text: str) -> Scalar:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name not in ("v", "l"):
                raise ValueError(f"unknown symbol {name!r} in scalar {text!r}")
            tokens.append(("sym", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, e = take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {text!r}")
            return base ** (sign * e)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Scalar.from_fraction(val)
        if kind == "sym":
            return v if val == "v" else vpow(-2)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in scalar {text!r}")
    return out
