"""Numerical classes of parabolic sheaves: the Euler form, twists and slopes.

A class is (rank, d0, slots) where d0 = deg F^0 and slots[p] lists
deg F^{i eps_p} for i = 1..w_p - 1.  The Euler form is computed in the basis

    u = [O^.]                 rank one, all degrees zero
    s_{i,p}, i in Z/w_p       torsion of length one at p in chain position i

with s_{i,p} having slot (w_p - i) mod w_p at p equal to one (i != 0), and
s_{0,p} having d0 = 1 and every slot at the other points equal to one.  The
relation sum_i s_{i,p} = sum_k s_{k,q} is resolved by putting all s_0 weight
on a base point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import Lattice, Weights

__all__ = [
    "KClass",
    "ChiWeights",
    "KClassError",
    "INF",
    "basis_u",
    "basis_s",
    "decompose",
    "compose",
    "euler_form",
    "sym_form",
    "twist_class",
    "shift_class",
    "omega_class",
    "omega_twist",
    "parabolic_degree",
    "slope",
    "chi_bar",
    "rr_average_check",
    "random_class",
]

INF = float("inf")


class KClassError(ValueError):
    pass


@dataclass(frozen=True)
class KClass:
    weights: Weights
    rank: int
    d0: int
    slots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.slots) != len(self.weights):
            raise KClassError("one slot list per marked point is required")
        for s, w in zip(self.slots, self.weights.weights):
            if len(s) != w - 1:
                raise KClassError(f"a point of weight {w} needs {w - 1} slots, got {len(s)}")

    @classmethod
    def make(cls, weights: Weights, rank: int, d0: int, slots=None) -> "KClass":
        if slots is None:
            slots = [[d0] * (w - 1) for w in weights.weights]
        return cls(weights, int(rank), int(d0), tuple(tuple(int(x) for x in s) for s in slots))

    @classmethod
    def constant(cls, weights: Weights, rank: int, degree: int) -> "KClass":
        """Class of E^. for a bundle/torsion sheaf E of the given rank and degree."""
        return cls.make(weights, rank, degree)

    @classmethod
    def from_json(cls, weights: Weights, data: dict) -> "KClass":
        slots_in = data.get("slots", {})
        slots = []
        for name, w in zip(weights.names, weights.weights):
            if isinstance(slots_in, dict):
                s = slots_in.get(name, [int(data.get("d0", 0))] * (w - 1))
            else:
                s = slots_in[weights.index(name)]
            slots.append(s)
        return cls.make(weights, int(data["rank"]), int(data.get("d0", 0)), slots)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "d0": self.d0,
            "slots": {n: list(s) for n, s in zip(self.weights.names, self.slots)},
        }

    def seq(self, p: int) -> list[int]:
        """[d0, d_1, ..., d_{w_p-1}, d0 + rank] at point p."""
        return [self.d0, *self.slots[p], self.d0 + self.rank]

    def __add__(self, other: "KClass") -> "KClass":
        _same(self, other)
        return KClass(
            self.weights,
            self.rank + other.rank,
            self.d0 + other.d0,
            tuple(tuple(a + b for a, b in zip(s, t)) for s, t in zip(self.slots, other.slots)),
        )

    def __neg__(self):
        return KClass(self.weights, -self.rank, -self.d0, tuple(tuple(-a for a in s) for s in self.slots))

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def scale(self, k: int) -> "KClass":
        return KClass(self.weights, k * self.rank, k * self.d0, tuple(tuple(k * a for a in s) for s in self.slots))

    def is_zero(self) -> bool:
        return self.rank == 0 and self.d0 == 0 and all(a == 0 for s in self.slots for a in s)

    def in_k_plus(self) -> bool:
        """Rank >= 1, or torsion with every recorded degree >= 0 and not all zero."""
        if self.rank >= 1:
            return True
        if self.rank < 0:
            return False
        vals = [self.d0] + [a for s in self.slots for a in s]
        return all(x >= 0 for x in vals) and any(x > 0 for x in vals)

    def is_torsion(self) -> bool:
        return self.rank == 0

    def bundle_compatible(self) -> bool:
        """d0 <= d_1 <= ... <= d_{w_p-1} <= d0 + rank at every point."""
        return all(all(a <= b for a, b in zip(self.seq(p), self.seq(p)[1:])) for p in range(len(self.weights)))

    def sort_key(self):
        return (self.rank, self.d0, self.slots)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        slots = ",".join(str(list(s)) for s in self.slots)
        return f"K(r={self.rank}, d0={self.d0}, {slots})"


def _same(a: KClass, b: KClass):
    if a.weights != b.weights:
        raise KClassError("classes over different marked points")


def basis_u(weights: Weights) -> KClass:
    return KClass.make(weights, 1, 0)


def basis_s(weights: Weights, i: int, p: int) -> KClass:
    w = weights.weights[p]
    i %= w
    slots = [[0] * (wq - 1) for wq in weights.weights]
    if i:
        slots[p][w - i - 1] = 1
        return KClass.make(weights, 0, 0, slots)
    for q, wq in enumerate(weights.weights):
        if q != p:
            slots[q] = [1] * (wq - 1)
    return KClass.make(weights, 0, 1, slots)


def decompose(a: KClass, base: int = 0) -> tuple[int, dict[tuple[int, int], int]]:
    """Coordinates (r, {(i, p): c}) of a = r u + sum c_{i,p} s_{i,p}."""
    W = a.weights.weights
    c = {(i, p): 0 for p, w in enumerate(W) for i in range(w)}
    c[(0, base)] = a.d0
    for p, w in enumerate(W):
        shift = 0 if p == base else a.d0
        for j in range(1, w):
            c[((w - j) % w, p)] += a.slots[p][j - 1] - shift
    return a.rank, c


def compose(weights: Weights, r: int, c: dict) -> KClass:
    W = weights.weights
    d0 = 0
    slots = [[0] * (w - 1) for w in W]
    for (i, p), x in c.items():
        if not x:
            continue
        if i % W[p] == 0:
            d0 += x
            for q, wq in enumerate(W):
                if q != p:
                    for j in range(wq - 1):
                        slots[q][j] += x
        else:
            slots[p][W[p] - (i % W[p]) - 1] += x
    return KClass.make(weights, r, d0, slots)


def _ss(i: int, k: int, w: int, orientation: str) -> int:
    if orientation == "physical":
        return (i == k) - ((i - k - 1) % w == 0)
    if orientation == "printed":
        return (i == k) - ((i - k + 1) % w == 0)
    raise KClassError(f"unknown orientation {orientation!r}")


def euler_form(a: KClass, b: KClass, genus: int, base: int = 0, orientation: str = "physical") -> int:
    """<a, b> = dim Hom - dim Ext, by bilinear extension from the basis table.

    <u,u> = 1 - g, <u, s_i> = [i = 0], <s_i, u> = -[i = 1] and, at a common
    point, <s_i, s_k> = [i = k] - [k = i - 1].  ``orientation="printed"`` uses
    [i = k - 1] for the last bracket instead; the two agree when w_p = 2.
    """
    _same(a, b)
    ra, ca = decompose(a, base)
    rb, cb = decompose(b, base)
    W = a.weights.weights
    total = (1 - genus) * ra * rb
    for (i, p), x in cb.items():
        if i == 0:
            total += ra * x
    for (i, p), x in ca.items():
        if i == 1 % W[p]:
            total -= rb * x
    for (i, p), x in ca.items():
        if not x:
            continue
        for k in range(W[p]):
            y = cb[(k, p)]
            if y:
                total += x * y * _ss(i, k, W[p], orientation)
    return total


def sym_form(a: KClass, b: KClass, genus: int, **kw) -> int:
    return euler_form(a, b, genus, **kw) + euler_form(b, a, genus, **kw)


def shift_class(a: KClass, p: int, n: int = 1) -> KClass:
    """Shift by n eps_p: u -> u + s_{1,p}, s_{i,p} -> s_{i+1,p}, other points fixed."""
    W = a.weights.weights
    w = W[p]
    r, c = decompose(a)
    step = 1 if n >= 0 else -1
    for _ in range(abs(n)):
        nc = {k: 0 for k in c}
        for (i, q), x in c.items():
            if q == p:
                nc[((i + step) % w, q)] += x
            else:
                nc[(i, q)] += x
        # forward: u picks up s_{1,p}; backward: u picks up -s_{0,p}
        if step > 0:
            nc[(1 % w, p)] += r
        else:
            nc[(0, p)] -= r
        c = nc
    return compose(a.weights, r, c)


def _degree_twist(a: KClass, d: int) -> KClass:
    """Tensor with a degree-d line bundle: u -> u + d * sum_i s_{i,p1}."""
    r, c = decompose(a)
    for i in range(a.weights.weights[0]):
        c[(i, 0)] += d * r
    return compose(a.weights, r, c)


def twist_class(a: KClass, by: Lattice) -> KClass:
    """Twist by d c + sum_p x_p x_p: degree-d line bundle, then x_p shifts at each p."""
    out = _degree_twist(a, by.d)
    for p, x in enumerate(by.residues):
        if x:
            out = shift_class(out, p, x)
    return out


def _omega_lattice(weights: Weights, genus: int, k: int) -> Lattice:
    return Lattice.make(weights, k * (2 * genus - 2), [k * (w - 1) for w in weights.weights])


def omega_class(weights: Weights, genus: int, k: int) -> KClass:
    """Class of omega^{., k}: degree k(2g-2), then k(w_q - 1) eps_q at every q."""
    return omega_twist(basis_u(weights), genus, k)


def omega_twist(a: KClass, genus: int, k: int) -> KClass:
    out = _degree_twist(a, k * (2 * genus - 2))
    for p, w in enumerate(a.weights.weights):
        if w > 1 and k:
            out = shift_class(out, p, k * (w - 1))
    return out


@dataclass(frozen=True)
class ChiWeights:
    values: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def default(cls, weights: Weights) -> "ChiWeights":
        return cls(tuple(tuple(Fraction(w - i, w) for i in range(1, w)) for w in weights.weights))

    def __post_init__(self):
        for chain in self.values:
            full = [Fraction(1)] + list(chain)
            if any(not (a > b) for a, b in zip(full, full[1:])) or (chain and chain[-1] < 0):
                raise KClassError("chi weights must satisfy 1 > chi_1 > ... > chi_{w-1} >= 0")


def _par(a: KClass, chi: ChiWeights | None = None) -> Fraction:
    chi = chi or ChiWeights.default(a.weights)
    total = Fraction(a.d0)
    for p in range(len(a.weights)):
        seq = a.seq(p)
        for i, x in enumerate(chi.values[p], start=1):
            total += x * (seq[i] - seq[i - 1])
    return total


def parabolic_degree(a: KClass, chi: ChiWeights | None = None, check: bool = True) -> Fraction:
    """Par_chi = d0 + sum_p sum_i chi_{i,p} (d_{i,p} - d_{i-1,p})."""
    if check and not a.in_k_plus():
        raise KClassError(f"{a} is not the class of a parabolic sheaf")
    return _par(a, chi)


def slope(a: KClass, chi: ChiWeights | None = None, check: bool = True):
    par = parabolic_degree(a, chi, check)
    if a.rank == 0:
        return INF
    return par / a.rank


def chi_bar(weights: Weights, genus: int) -> Fraction:
    w = weights.w
    return w * (1 - genus) + Fraction(w, 2) * sum(Fraction(1, wp) - 1 for wp in weights.weights)


def rr_average_check(a: KClass, b: KClass, genus: int, printed_normalization: bool = False):
    """Average of <a (x) omega^k, b> over k = 0..w-1 against the closed form.

    Returns (equal, lhs, rhs).  The closed form used is
    chi_bar r_a r_b + r_a Par b - r_b Par a; ``printed_normalization`` divides
    the first term by w instead, which does not hold in general.
    """
    W = a.weights
    w = W.w
    lhs = Fraction(sum(euler_form(omega_twist(a, genus, k), b, genus) for k in range(w)), w)
    cb = chi_bar(W, genus)
    if printed_normalization:
        cb = cb / w
    rhs = cb * a.rank * b.rank + a.rank * _par(b) - b.rank * _par(a)
    return lhs == rhs, lhs, rhs


def random_class(weights: Weights, rng: random.Random, rank_range=(0, 3), deg=3, bundle: bool = False) -> KClass:
    r = rng.randint(*rank_range)
    d0 = rng.randint(-deg, deg)
    slots = []
    for w in weights.weights:
        if bundle:
            steps = sorted(rng.randint(0, r) for _ in range(w - 1))
            slots.append([d0 + s for s in steps])
        else:
            slots.append([rng.randint(-deg, deg) for _ in range(w - 1)])
    return KClass.make(weights, r, d0, slots)
