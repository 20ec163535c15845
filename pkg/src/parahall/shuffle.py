"""Weighted shuffle algebra, truncated to explicit jets.

An element is a Scalar combination of monomials t_1^{d_1 + x_1} ... t_r^{d_r + x_r}
where each slot carries an exponent d_i, a residue vector x_i reduced mod the
weights, and a label.  The label is the residue of the degree-one generator
that first occupied the slot; it is what the Gamma factors read.  For a product
of two generators the label and the residue coincide, so there the product is
exactly the displayed formula

    a * b = sum over (r, s)-shuffles s of h_s * Gamma^s * s(a b),

with h(t_i/t_j) expanded as a power series in t_i/t_j.  For longer products
the residues have already been moved by earlier Gamma factors while the labels
have not, and reading the labels is what keeps the product associative (the
residue-reading variant is available as ``gamma_mode="residue"`` for
comparison; it fails associativity).

Series are truncated by ``TruncPolicy(N)``: a term survives only if the total
power of the ratios t_i/t_j it picked up is at most N.  Exact comparisons are
made inside a height window, see ``height``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .curve import Curve, h_series
from .lattice import Lattice, Weights
from .scalars import ONE, ZERO, Scalar, coerce_scalar, v

__all__ = [
    "TruncPolicy",
    "Perm",
    "ShufElem",
    "ShuffleError",
    "WindowSaturationError",
    "enumerate_shuffles",
    "generator",
    "shuffle_mul",
    "shuffle_product",
    "deconcat",
    "height",
    "min_height",
    "restrict",
    "unweighted_mul",
    "graded_span_dim",
    "exact_rank",
]


class ShuffleError(ValueError):
    pass


class WindowSaturationError(RuntimeError):
    """Enlarging the truncation order changed a coefficient inside the window."""


@dataclass(frozen=True)
class TruncPolicy:
    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ShuffleError("truncation order must be >= 0")

    def bump(self) -> "TruncPolicy":
        return TruncPolicy(self.N + 1)


@dataclass(frozen=True)
class Perm:
    """A permutation in one-line form (0-based images) with its inversion set.

    ``images[k]`` is the position of the k-th letter of the concatenation.
    ``inversions`` holds 0-based position pairs (i, j), i < j, where position
    i holds a letter of the second word and position j a letter of the first.
    """

    images: tuple[int, ...]
    r: int
    inversions: tuple[tuple[int, int], ...]

    @property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.images)
        for k, pos in enumerate(self.images):
            inv[pos] = k
        return tuple(inv)

    def is_shuffle(self) -> bool:
        a, b = self.images[: self.r], self.images[self.r :]
        return list(a) == sorted(a) and list(b) == sorted(b)


def enumerate_shuffles(r: int, s: int) -> list[Perm]:
    if r < 0 or s < 0:
        raise ShuffleError("shuffle sizes must be nonnegative")
    n = r + s
    out = []
    for first in itertools.combinations(range(n), r):
        rest = [i for i in range(n) if i not in first]
        images = tuple(first) + tuple(rest)
        inv = [0] * n
        for k, pos in enumerate(images):
            inv[pos] = k
        inversions = tuple((i, j) for i in range(n) for j in range(i + 1, n) if inv[i] >= r > inv[j])
        out.append(Perm(images, r, inversions))
    return out


# a slot is (d, residues, labels); a monomial is a tuple of slots
Slot = tuple[int, tuple[int, ...], tuple[int, ...]]


def _canon_slot(weights: Weights, d: int, xs, label) -> Slot:
    carry = 0
    red = []
    for x, w in zip(xs, weights.weights):
        q, rem = divmod(x, w)
        carry += q
        red.append(rem)
    return (d + carry, tuple(red), label)


class ShufElem:
    """Finite Scalar combination of labelled monomials, with its truncation policy."""

    __slots__ = ("weights", "curve", "terms", "policy")

    def __init__(self, weights: Weights, curve: Curve, terms=None, policy: TruncPolicy | None = None):
        self.weights = weights
        self.curve = curve
        self.policy = policy or TruncPolicy(0)
        clean = {}
        for k, c in (terms or {}).items():
            if not c.is_zero():
                clean[k] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def unit(cls, weights: Weights, curve: Curve, policy=None) -> "ShufElem":
        return cls(weights, curve, {(): ONE}, policy)

    def components(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for k, c in self.terms.items():
            out.setdefault(len(k), {})[k] = c
        return out

    def degree(self) -> int | None:
        lens = {len(k) for k in self.terms}
        return lens.pop() if len(lens) == 1 else None

    def total_degrees(self) -> set[Lattice]:
        return {total_degree(k, self.weights) for k in self.terms}

    def stripped(self) -> dict:
        """Coefficients with labels forgotten: {((d, residues), ...): coeff}."""
        out: dict = {}
        for k, c in self.terms.items():
            key = tuple((d, x) for d, x, _ in k)
            out[key] = out.get(key, ZERO) + c
        return {k: c for k, c in sorted(out.items()) if not c.is_zero()}

    def __add__(self, other: "ShufElem") -> "ShufElem":
        _compatible(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return ShufElem(self.weights, self.curve, out, TruncPolicy(min(self.policy.N, other.policy.N)))

    def scale(self, c) -> "ShufElem":
        c = coerce_scalar(c)
        return ShufElem(self.weights, self.curve, {k: x * c for k, x in self.terms.items()}, self.policy)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, ShufElem):
            return NotImplemented
        return self.weights == other.weights and self.terms == other.terms

    def __hash__(self):
        return hash((self.weights, tuple(self.terms.items())))

    def to_json(self) -> dict:
        r = self.degree()
        terms = []
        for k, c in self.terms.items():
            terms.append(
                {
                    "coeff": str(c),
                    "exps": [d for d, _, _ in k],
                    "residues": [list(x) for _, x, _ in k],
                    "labels": [list(lab) for _, _, lab in k],
                }
            )
        return {"r": r, "terms": terms, "policy": {"N": self.policy.N}}

    @classmethod
    def from_json(cls, weights: Weights, curve: Curve, data: dict) -> "ShufElem":
        terms = {}
        for t in data["terms"]:
            exps = [int(e) for e in t["exps"]]
            res = t.get("residues") or [[0] * len(weights)] * len(exps)
            labels = t.get("labels") or res
            if not (len(exps) == len(res) == len(labels)):
                raise ShuffleError("exps, residues and labels must have equal length")
            key = tuple(
                _canon_slot(weights, d, x, weights.reduce(lab)) for d, x, lab in zip(exps, res, labels)
            )
            terms[key] = terms.get(key, ZERO) + coerce_scalar(t["coeff"])
        N = int(data.get("policy", {}).get("N", 0))
        return cls(weights, curve, terms, TruncPolicy(N))

    def __repr__(self):
        return f"ShufElem({len(self.terms)} terms, N={self.policy.N})"


def _compatible(a: ShufElem, b: ShufElem):
    if a.weights != b.weights:
        raise ShuffleError("shuffle elements over different marked points")
    if a.curve != b.curve:
        raise ShuffleError("shuffle elements over different curves")


def total_degree(key, weights: Weights) -> Lattice:
    d = sum(s[0] for s in key)
    xs = [sum(s[1][p] for s in key) for p in range(len(weights))]
    return Lattice.make(weights, d, xs)


def generator(weights: Weights, curve: Curve, d: int, x=None, policy: TruncPolicy | None = None) -> ShufElem:
    """The degree-one monomial t_1^{d + x}."""
    x = weights.zero_residue() if x is None else weights.reduce(x.residues if isinstance(x, Lattice) else x)
    return ShufElem(weights, curve, {((d, x, x),): ONE}, policy)


_H_CACHE: dict = {}


def _h_coeffs(curve: Curve, N: int) -> tuple[Scalar, ...]:
    if curve.is_generic:
        raise ShuffleError("the shuffle product needs a numeric curve")
    key = (curve, N)
    if key not in _H_CACHE:
        _H_CACHE[key] = h_series(curve, N).coeffs
    return _H_CACHE[key]


def _mul_monomials(ma, mb, weights: Weights, hk, N: int, gamma_mode: str, out: dict, coeff: Scalar):
    r, s = len(ma), len(mb)
    cat = ma + mb
    n = r + s
    one_minus = 1 - v * v
    for perm in enumerate_shuffles(r, s):
        inv = perm.inverse
        slots = [cat[inv[i]] for i in range(n)]
        pairs = perm.inversions
        # Gamma branches: (coefficient, list of residue moves (i, j, p, x))
        branches = [(ONE, ())]
        for i, j in pairs:
            for p, w in enumerate(weights.weights):
                if gamma_mode == "label":
                    x = (slots[i][2][p] - slots[j][2][p]) % w
                else:
                    x = (slots[i][1][p] - slots[j][1][p]) % w
                if x:
                    branches = [(c * v, mv) for c, mv in branches] + [
                        (c * one_minus, mv + ((i, j, p, x),)) for c, mv in branches
                    ]
        for ks in _compositions(len(pairs), N):
            hc = coeff
            for k in ks:
                hc = hc * hk[k]
                if hc.is_zero():
                    break
            if hc.is_zero():
                continue
            ds = [sl[0] for sl in slots]
            for (i, j), k in zip(pairs, ks):
                ds[i] += k
                ds[j] -= k
            for gc, moves in branches:
                xs = [list(sl[1]) for sl in slots]
                for i, j, p, x in moves:
                    xs[i][p] += x
                    xs[j][p] -= x
                key = tuple(_canon_slot(weights, ds[i], xs[i], slots[i][2]) for i in range(n))
                out[key] = out.get(key, ZERO) + hc * gc


_COMP_CACHE: dict = {}


def _compositions(m: int, N: int) -> list[tuple[int, ...]]:
    """All m-tuples of nonnegative integers with sum <= N."""
    key = (m, N)
    if key not in _COMP_CACHE:
        _COMP_CACHE[key] = [ks for ks in itertools.product(range(N + 1), repeat=m) if sum(ks) <= N]
    return _COMP_CACHE[key]


def shuffle_mul(a: ShufElem, b: ShufElem, policy: TruncPolicy | None = None, gamma_mode: str = "label") -> ShufElem:
    """Weighted shuffle product, truncated at ``policy`` (defaults to the smaller input policy)."""
    _compatible(a, b)
    if gamma_mode not in ("label", "residue"):
        raise ShuffleError(f"unknown gamma mode {gamma_mode!r}")
    policy = policy or TruncPolicy(min(a.policy.N, b.policy.N))
    hk = _h_coeffs(a.curve, policy.N)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            _mul_monomials(ma, mb, a.weights, hk, policy.N, gamma_mode, out, ca * cb)
    return ShufElem(a.weights, a.curve, out, policy)


def shuffle_product(elems, policy: TruncPolicy, gamma_mode: str = "label") -> ShufElem:
    """Left-nested product e1 * e2 * ... * ek."""
    elems = list(elems)
    if not elems:
        raise ShuffleError("empty product")
    acc = elems[0]
    for e in elems[1:]:
        acc = shuffle_mul(acc, e, policy, gamma_mode)
    return acc


def deconcat(u: ShufElem, m: int, n: int) -> dict:
    """Delta_{m,n}: split each degree m+n monomial into its first m and last n slots.

    Returns {(left_key, right_key): coeff}; keys are monomial tuples, the empty
    tuple standing for 1.
    """
    out: dict = {}
    for k, c in u.terms.items():
        if len(k) != m + n:
            raise ShuffleError(f"deconcatenation Delta_{m},{n} applied to a degree {len(k)} term")
        pair = (k[:m], k[m:])
        out[pair] = out.get(pair, ZERO) + c
    return {k: c for k, c in sorted(out.items()) if not c.is_zero()}


# -- windows -------------------------------------------------------------------

def _slot_degree(slot, weights: Weights) -> Fraction:
    d, xs = slot[0], slot[1]
    return d + sum(Fraction(x, w) for x, w in zip(xs, weights.weights))


def height(key, weights: Weights) -> Fraction:
    """Sum of the partial sums of slot degrees, over the first r-1 prefixes.

    Multiplying by t_i/t_j (i < j) raises it by j - i; a Gamma move raises it
    by (j - i) x/w_p.  So a term that needed total ratio order K sits at height
    at least (minimal height of the base monomials) + K.
    """
    total = Fraction(0)
    prefix = Fraction(0)
    for slot in key[:-1]:
        prefix += _slot_degree(slot, weights)
        total += prefix
    return total


def min_height(gens, weights: Weights) -> Fraction:
    """Least height over all orderings of the given degree-one slots."""
    slots = [(d, weights.reduce(x)) for d, x in gens]
    return min(height(perm, weights) for perm in itertools.permutations(slots))


def restrict(elem: ShufElem, hmax, labels: bool = False) -> dict:
    """Coefficients of monomials of height <= hmax."""
    src = elem.terms if labels else elem.stripped()
    return {k: c for k, c in src.items() if height(k, elem.weights) <= hmax}


# -- the unweighted algebra S_h --------------------------------------------------

def unweighted_mul(a: dict, b: dict, curve: Curve, N: int) -> dict:
    """Product in S_h on plain exponent tuples {(d1..dr): coeff}.

    t^A * t^B = sum over shuffles of prod_{(i,j) in I} h(t_i/t_j) * s(t^A t^B),
    every h expanded to total ratio order N.  No residues, no Gamma.
    """
    hk = _h_coeffs(curve, N)
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            r, s = len(ea), len(eb)
            cat = tuple(ea) + tuple(eb)
            for perm in enumerate_shuffles(r, s):
                base = [cat[k] for k in perm.inverse]
                for ks in _compositions(len(perm.inversions), N):
                    c = ca * cb
                    e = list(base)
                    for (i, j), k in zip(perm.inversions, ks):
                        c = c * hk[k]
                        e[i] += k
                        e[j] -= k
                    key = tuple(e)
                    out[key] = out.get(key, ZERO) + c
    return {k: c for k, c in sorted(out.items()) if not c.is_zero()}


# -- spans ------------------------------------------------------------------------

def exact_rank(rows: list[dict]) -> int:
    """Rank over Q(v) of sparse rows {column: Scalar}, by exact elimination."""
    rows = [dict((k, c) for k, c in r.items() if not c.is_zero()) for r in rows]
    rank = 0
    pivots: list[tuple[object, dict]] = []
    for row in rows:
        row = dict(row)
        for col, prow in pivots:
            c = row.get(col)
            if c is None or c.is_zero():
                continue
            for k, x in prow.items():
                nv = row.get(k, ZERO) - c * x
                if nv.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = nv
        if row:
            col = min(row)
            lead = row[col].inverse()
            row = {k: x * lead for k, x in row.items()}
            pivots.append((col, row))
            rank += 1
    return rank


def _span_rows(products, weights, hmax):
    return [restrict(p, hmax) for p in products]


def graded_span_dim(weights: Weights, curve: Curve, tuples, hmax, policy: TruncPolicy, gamma_mode: str = "label") -> int:
    """Rank of the products of the given generator tuples, restricted to height <= hmax.

    ``tuples`` is a list of sequences of (d, residues) pairs.  The rank is only
    reported if every in-window coefficient is unchanged at policy N + 1.
    """
    ranks = []
    rows_at = []
    for pol in (policy, policy.bump()):
        prods = []
        for tup in tuples:
            gens = [generator(weights, curve, d, x, pol) for d, x in tup]
            prods.append(shuffle_product(gens, pol, gamma_mode))
        rows = _span_rows(prods, weights, hmax)
        rows_at.append(rows)
        ranks.append(exact_rank(rows))
    if rows_at[0] != rows_at[1]:
        raise WindowSaturationError(f"window height <= {hmax} is not saturated at N = {policy.N}")
    return ranks[0]
