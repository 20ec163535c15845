"""Marked points, the rank-one lattice L(w) and its group algebra.

L(w) is generated by x_p (one per marked point) and c, with w_p x_p = c.
A value is stored as (d, residues) with 0 <= residue_p < w_p; adding
w_p x_p carries one unit into d.  The group algebra C[L(w)] is the Laurent
ring in t_p modulo t_p^{w_p} = t, which is how Gamma factors are expanded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scalars import ONE, Scalar, coerce_scalar, v

__all__ = [
    "Weights",
    "Lattice",
    "GAElem",
    "LatticeError",
    "pi",
    "lattice_from_multidegree",
    "ga_mul",
    "gamma_factor",
]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Weights:
    """Ordered marked points; every point has degree one."""

    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.names:
            raise LatticeError("at least one marked point is required")
        if len(self.names) != len(self.weights):
            raise LatticeError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise LatticeError("marked point names must be distinct")
        if any(w < 1 for w in self.weights):
            raise LatticeError("weights must be >= 1")

    @classmethod
    def of(cls, *weights: int, names=None) -> "Weights":
        names = tuple(names) if names else tuple(f"p{i + 1}" for i in range(len(weights)))
        return cls(names, tuple(int(w) for w in weights))

    @classmethod
    def from_json(cls, data) -> "Weights":
        pts = data["points"] if isinstance(data, dict) else data
        return cls(tuple(str(p["name"]) for p in pts), tuple(int(p["weight"]) for p in pts))

    def to_json(self) -> dict:
        return {"points": [{"name": n, "weight": w} for n, w in zip(self.names, self.weights)]}

    @property
    def w(self) -> int:
        return math.lcm(*self.weights)

    def __len__(self):
        return len(self.weights)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero_residue(self) -> tuple[int, ...]:
        return (0,) * len(self.weights)

    def reduce(self, xs) -> tuple[int, ...]:
        return tuple(int(x) % w for x, w in zip(xs, self.weights))


@dataclass(frozen=True, order=True)
class Lattice:
    """d*c + sum_p x_p * x_vec_p in canonical form."""

    d: int
    residues: tuple[int, ...]

    @classmethod
    def make(cls, weights: Weights, d: int, xs) -> "Lattice":
        xs = list(xs)
        if len(xs) != len(weights):
            raise LatticeError("residue vector has the wrong length")
        carry = sum(x // w for x, w in zip(xs, weights.weights))
        return cls(d + carry, weights.reduce(xs))

    @classmethod
    def zero(cls, weights: Weights) -> "Lattice":
        return cls(0, weights.zero_residue())

    def add(self, other: "Lattice", weights: Weights) -> "Lattice":
        return Lattice.make(weights, self.d + other.d, [a + b for a, b in zip(self.residues, other.residues)])

    def neg(self, weights: Weights) -> "Lattice":
        return Lattice.make(weights, -self.d, [-x for x in self.residues])

    def sub(self, other: "Lattice", weights: Weights) -> "Lattice":
        return self.add(other.neg(weights), weights)

    def rational_degree(self, weights: Weights):
        from fractions import Fraction

        return self.d + sum(Fraction(x, w) for x, w in zip(self.residues, weights.weights))

    def to_json(self) -> dict:
        return {"d": self.d, "residues": list(self.residues)}


def pi(x: Lattice) -> tuple[int, ...]:
    """The projection L(w) -> prod Z/w_p, forgetting d."""
    return x.residues


def lattice_from_multidegree(cls, weights: Weights | None = None) -> Lattice:
    """Rank-one multi-degree to L(w): d0*c + sum_p sum_i i*(D_i - D_{i-1}) x_p."""
    weights = weights or cls.weights
    if cls.rank != 1:
        raise LatticeError("not a line-bundle class: rank must be 1")
    xs = []
    for p, w in enumerate(weights.weights):
        seq = [cls.d0] + list(cls.slots[p])
        x = 0
        for i in range(1, w):
            step = seq[i] - seq[i - 1]
            if step not in (0, 1):
                raise LatticeError("not a line-bundle class: slot differences must be 0 or 1")
            x += i * step
        if seq[-1] - seq[0] > 1:
            raise LatticeError("not a line-bundle class: slots exceed d0 + 1")
        xs.append(x)
    return Lattice.make(weights, cls.d0, xs)


def multidegree_of_lattice(x: Lattice, weights: Weights):
    """Inverse of ``lattice_from_multidegree`` on bundle-compatible rank-one classes."""
    from .ktheory import KClass

    slots = []
    for xp, w in zip(x.residues, weights.weights):
        slots.append(tuple(x.d + (1 if xp and i >= xp else 0) for i in range(1, w)))
    return KClass(weights, 1, x.d, tuple(slots))


class GAElem:
    """Finite Scalar combination of t^(d + x) for x in L(w)."""

    __slots__ = ("weights", "terms")

    def __init__(self, weights: Weights, terms=None):
        self.weights = weights
        clean = {}
        for k, c in (terms or {}).items():
            c = coerce_scalar(c)
            if not c.is_zero():
                clean[k] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, weights: Weights, x: Lattice, coeff=ONE) -> "GAElem":
        return cls(weights, {x: coeff})

    @classmethod
    def one(cls, weights: Weights) -> "GAElem":
        return cls.monomial(weights, Lattice.zero(weights))

    @classmethod
    def t_p(cls, weights: Weights, p: int, power: int = 1) -> "GAElem":
        xs = [0] * len(weights)
        xs[p] = power
        return cls.monomial(weights, Lattice.make(weights, 0, xs))

    def __add__(self, other: "GAElem") -> "GAElem":
        _same(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Scalar.from_fraction(0)) + c
        return GAElem(self.weights, out)

    def scale(self, c) -> "GAElem":
        c = coerce_scalar(c)
        return GAElem(self.weights, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GAElem):
            return ga_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GAElem):
            return NotImplemented
        return self.weights == other.weights and self.terms == other.terms

    def __hash__(self):
        return hash((self.weights, tuple(self.terms.items())))

    def to_json(self) -> list:
        return [{"coeff": str(c), "d": k.d, "residues": list(k.residues)} for k, c in self.terms.items()]

    @classmethod
    def from_json(cls, weights: Weights, data) -> "GAElem":
        return cls(weights, {Lattice.make(weights, int(t["d"]), t["residues"]): coerce_scalar(t["coeff"]) for t in data})

    def __repr__(self):
        body = " + ".join(f"({c})*t^{k.d}{list(k.residues)}" for k, c in self.terms.items()) or "0"
        return f"GAElem({body})"


def _same(a: GAElem, b: GAElem):
    if a.weights != b.weights:
        raise LatticeError("group-algebra elements over different marked points")


def ga_mul(a: GAElem, b: GAElem) -> GAElem:
    _same(a, b)
    out: dict[Lattice, Scalar] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            k = ka.add(kb, a.weights)
            out[k] = out.get(k, Scalar.from_fraction(0)) + ca * cb
    return GAElem(a.weights, out)


def gamma_factor(weights: Weights, x) -> GAElem:
    """prod_p Gamma_{x_p}(t_p): v + (1 - v^2) t_p^{x_p} when x_p != 0, else 1."""
    xs = weights.reduce(x.residues if isinstance(x, Lattice) else x)
    out = GAElem.one(weights)
    for p, xp in enumerate(xs):
        if xp:
            factor = GAElem.one(weights).scale(v) + GAElem.t_p(weights, p, xp).scale(1 - v * v)
            out = ga_mul(out, factor)
    return out
