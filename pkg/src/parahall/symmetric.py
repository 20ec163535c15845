"""The symmetrized algebra A_g: symmetric rational functions in t_1..t_r.

g(t_i/t_j) has its only pole on t_i = t_j, so after symmetrization every
element is a symmetric Laurent polynomial.  We compute with
g(t_i/t_j) = t_j G(t_i/t_j) / (t_i - t_j), where G(z) = z^-g P*(z)(1 - l z)
and P*(z) = z^2g P(1/z).  Symmetrizing F / prod(t_i - t_j) is the same as
antisymmetrizing F and dividing by the Vandermonde product exactly.
"""

from __future__ import annotations

import itertools

from .curve import Curve
from .scalars import ONE, ZERO, Scalar, coerce_scalar, vpow
from .shuffle import enumerate_shuffles, exact_rank

__all__ = ["LPoly", "SymElem", "SymCapacityError", "symmetrize", "sym_mul", "sym_generator", "span_rank", "MAX_VARS"]

MAX_VARS = 3


class SymCapacityError(RuntimeError):
    pass


class LPoly:
    """Laurent polynomial in n variables with Scalar coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {k: c for k, c in sorted((terms or {}).items()) if not c.is_zero()}

    @classmethod
    def monomial(cls, exps, coeff=ONE) -> "LPoly":
        exps = tuple(int(e) for e in exps)
        return cls(len(exps), {exps: coerce_scalar(coeff)})

    @classmethod
    def one(cls, n: int) -> "LPoly":
        return cls(n, {(0,) * n: ONE})

    def __add__(self, other: "LPoly") -> "LPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return LPoly(self.n, out)

    def __neg__(self):
        return LPoly(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LPoly):
            c = coerce_scalar(other)
            return LPoly(self.n, {k: x * c for k, x in self.terms.items()})
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, ZERO) + ca * cb
        return LPoly(self.n, out)

    __rmul__ = __mul__

    def permute(self, images) -> "LPoly":
        """Send variable k to variable images[k]."""
        out = {}
        for k, c in self.terms.items():
            e = [0] * self.n
            for src, dst in enumerate(images):
                e[dst] = k[src]
            out[tuple(e)] = c
        return LPoly(self.n, out)

    def embed(self, n: int, offset: int) -> "LPoly":
        """View as a polynomial in variables offset..offset+self.n-1 of n."""
        out = {}
        for k, c in self.terms.items():
            e = [0] * n
            e[offset : offset + self.n] = k
            out[tuple(e)] = c
        return LPoly(n, out)

    def div_linear(self, i: int, j: int) -> "LPoly":
        """Exact quotient by (t_i - t_j); raises if there is a remainder."""
        # group by the exponents of every variable except t_i, and divide in t_i
        groups: dict = {}
        for k, c in self.terms.items():
            rest = k[:i] + (0,) + k[i + 1 :]
            groups.setdefault(rest, {})[k[i]] = c
        out: dict = {}
        # synthetic division of sum_a c_a t_i^a by (t_i - t_j), where t_j enters the coefficients
        # work with a dict poly in (t_i) whose coefficients are LPoly in the others
        coeffs: dict[int, dict] = {}
        for rest, byexp in groups.items():
            for a, c in byexp.items():
                coeffs.setdefault(a, {})
                coeffs[a][rest] = coeffs[a].get(rest, ZERO) + c
        if not coeffs:
            return LPoly(self.n)
        lo, hi = min(coeffs), max(coeffs)
        carry: dict = {}
        for a in range(hi, lo - 1, -1):
            cur = dict(coeffs.get(a, {}))
            for rest, c in carry.items():
                cur[rest] = cur.get(rest, ZERO) + c
            cur = {k: c for k, c in cur.items() if not c.is_zero()}
            if a == lo:
                if cur:
                    raise ArithmeticError(f"not divisible by (t{i + 1} - t{j + 1})")
                break
            # quotient coefficient of t_i^(a-1) is cur; carry t_j * cur down
            for rest, c in cur.items():
                e = list(rest)
                e[i] = a - 1
                out[tuple(e)] = out.get(tuple(e), ZERO) + c
            carry = {}
            for rest, c in cur.items():
                e = list(rest)
                e[j] += 1
                carry[tuple(e)] = c
        return LPoly(self.n, out)

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def is_symmetric(self) -> bool:
        for i in range(self.n - 1):
            images = list(range(self.n))
            images[i], images[i + 1] = i + 1, i
            if self.permute(images) != self:
                return False
        return True

    def to_json(self) -> list:
        return [{"coeff": str(c), "exps": list(k)} for k, c in self.terms.items()]

    def __repr__(self):
        return f"LPoly({len(self.terms)} terms in {self.n} vars)"


def _g_numerator_factor(curve: Curve, n: int, i: int, j: int) -> LPoly:
    """t_j G(t_i/t_j) as a Laurent polynomial in n variables."""
    if curve.is_generic:
        raise SymCapacityError("the symmetrized algebra needs a numeric curve")
    g = curve.genus
    p = curve.numerator()
    # G(z) = z^-g * sum_k p_k z^(2g-k) * (1 - l z)
    coeffs: dict[int, Scalar] = {}
    for k, pk in enumerate(p):
        e = g - k
        coeffs[e] = coeffs.get(e, ZERO) + pk
        coeffs[e + 1] = coeffs.get(e + 1, ZERO) - pk * vpow(-2)
    out = {}
    for e, c in coeffs.items():
        if c.is_zero():
            continue
        exps = [0] * n
        exps[i] += e
        exps[j] += 1 - e
        out[tuple(exps)] = c
    return LPoly(n, out)


def _vandermonde_divide(f: LPoly) -> LPoly:
    n = f.n
    for i in range(n):
        for j in range(i + 1, n):
            f = f.div_linear(i, j)
    return f


def _vandermonde(n: int) -> LPoly:
    out = LPoly.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            e1 = [0] * n
            e1[i] = 1
            e2 = [0] * n
            e2[j] = 1
            out = out * LPoly(n, {tuple(e1): ONE, tuple(e2): -ONE})
    return out


def _sign(images) -> int:
    inv = sum(1 for a, b in itertools.combinations(images, 2) if a > b)
    return -1 if inv % 2 else 1


class SymElem:
    """Symmetric Laurent polynomial in r variables attached to a curve."""

    __slots__ = ("r", "curve", "poly")

    def __init__(self, curve: Curve, poly: LPoly, check: bool = True):
        if poly.n > MAX_VARS:
            raise SymCapacityError(f"symmetrized algebra is capped at {MAX_VARS} variables")
        self.r = poly.n
        self.curve = curve
        self.poly = poly
        if check and not poly.is_symmetric():
            raise ValueError("SymElem must be symmetric")

    @classmethod
    def unit(cls, curve: Curve) -> "SymElem":
        return cls(curve, LPoly.one(0))

    def __add__(self, other: "SymElem") -> "SymElem":
        return SymElem(self.curve, self.poly + other.poly, check=False)

    def scale(self, c) -> "SymElem":
        return SymElem(self.curve, self.poly * c, check=False)

    def __eq__(self, other):
        if not isinstance(other, SymElem):
            return NotImplemented
        return self.curve == other.curve and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def to_json(self) -> dict:
        return {"r": self.r, "terms": self.poly.to_json()}

    def __repr__(self):
        return f"SymElem(r={self.r}, {len(self.poly.terms)} terms)"


def symmetrize(P: LPoly, curve: Curve) -> SymElem:
    """Xi_r(P) = Sym_r(prod_{i<j} g(t_i/t_j) * P), unnormalized sum over S_r."""
    r = P.n
    if r > MAX_VARS:
        raise SymCapacityError(f"symmetrization is capped at {MAX_VARS} variables")
    F = P
    for i in range(r):
        for j in range(i + 1, r):
            F = F * _g_numerator_factor(curve, r, i, j)
    alt = LPoly(r)
    for images in itertools.permutations(range(r)):
        term = F.permute(images)
        alt = alt + (term if _sign(images) > 0 else -term)
    return SymElem(curve, _vandermonde_divide(alt))


def sym_mul(a: SymElem, b: SymElem) -> SymElem:
    """sum over (r, s)-shuffles w of w(prod_{i <= r < j} g(t_i/t_j) * P(t_1..t_r) Q(t_r+1..))."""
    if a.curve != b.curve:
        raise ValueError("symmetric elements over different curves")
    r, s = a.r, b.r
    n = r + s
    if n > MAX_VARS:
        raise SymCapacityError(f"product would need {n} variables; cap is {MAX_VARS}")
    if r == 0:
        return b
    if s == 0:
        return a
    F = a.poly.embed(n, 0) * b.poly.embed(n, r)
    for i in range(r):
        for j in range(r, n):
            F = F * _g_numerator_factor(a.curve, n, i, j)
    # clear the within-block pairs so that everything sits over the full Vandermonde
    F = F * _vandermonde(r).embed(n, 0) * _vandermonde(s).embed(n, r)
    total = LPoly(n)
    for perm in enumerate_shuffles(r, s):
        term = F.permute(perm.images)
        total = total + (term if len(perm.inversions) % 2 == 0 else -term)
    return SymElem(a.curve, _vandermonde_divide(total))


def sym_generator(curve: Curve, d: int) -> SymElem:
    return SymElem(curve, LPoly.monomial((d,)))


def span_rank(elems: list[SymElem]) -> int:
    return exact_rank([e.poly.terms for e in elems])
