"""Harder-Narasimhan types, polygons, and windowed Reineke inversion.

The completed Hall algebra is replaced by a window: positive-rank semistable
letters must have slope in [lo, hi], torsion letters have every recorded degree
in [0, torsion_bound].  Identities are exact inside the window, and
``hn_reineke_identity_check`` additionally confirms that enlarging the window
leaves the in-window coefficients unchanged.

Positive-rank letters are restricted to bundle-compatible classes: a semistable
sheaf of positive rank has no torsion subsheaf (that would have slope infinity),
so it is a parabolic bundle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ktheory import INF, ChiWeights, KClass, KClassError, euler_form, parabolic_degree, slope
from .lattice import Weights
from .scalars import ONE, ZERO, Scalar, vpow
from .shuffle import WindowSaturationError

__all__ = [
    "Window",
    "HNType",
    "Word",
    "Polygon",
    "StabilityError",
    "WindowSaturationError",
    "letters",
    "enumerate_hn_types",
    "hn_word",
    "enumerate_words",
    "reineke_tuples",
    "reineke_expand",
    "reineke_expand_naive",
    "hn_reineke_identity_check",
    "polygon_of",
    "lower_hull",
]


class StabilityError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    lo: Fraction
    hi: Fraction
    torsion_bound: int = 2
    allow_torsion: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise StabilityError("empty slope window")
        if self.torsion_bound < 0:
            raise StabilityError("torsion bound must be >= 0")

    def widen(self, step=Fraction(1, 2), torsion_step: int = 1) -> "Window":
        return Window(self.lo - step, self.hi + step, self.torsion_bound + torsion_step, self.allow_torsion)

    def contains(self, a: KClass, chi: ChiWeights | None = None) -> bool:
        """Whether a may appear as a semistable letter."""
        if not a.in_k_plus():
            return False
        if a.rank == 0:
            vals = [a.d0] + [x for s in a.slots for x in s]
            return self.allow_torsion and max(vals) <= self.torsion_bound
        if not a.bundle_compatible():
            return False
        return self.lo <= slope(a, chi) <= self.hi

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "torsion_bound": self.torsion_bound, "allow_torsion": self.allow_torsion}

    @classmethod
    def from_json(cls, data: dict) -> "Window":
        return cls(Fraction(data["lo"]), Fraction(data["hi"]), int(data.get("torsion_bound", 2)), bool(data.get("allow_torsion", True)))


def letters(weights: Weights, max_rank: int, window: Window, chi: ChiWeights | None = None) -> list[KClass]:
    """Every class that may appear as a semistable letter, up to the given rank."""
    out = []
    for r in range(1, max_rank + 1):
        dlo = int((r * window.lo).__floor__()) - r
        dhi = int((r * window.hi).__ceil__())
        for d0 in range(dlo, dhi + 1):
            per_point = []
            for w in weights.weights:
                per_point.append(
                    [tuple(d0 + x for x in steps) for steps in itertools.combinations_with_replacement(range(r + 1), w - 1)]
                )
            for slots in itertools.product(*per_point):
                a = KClass.make(weights, r, d0, slots)
                if window.contains(a, chi):
                    out.append(a)
    if window.allow_torsion:
        b = window.torsion_bound
        n = 1 + sum(w - 1 for w in weights.weights)
        for vals in itertools.product(range(b + 1), repeat=n):
            if not any(vals):
                continue
            slots, k = [], 1
            for w in weights.weights:
                slots.append(vals[k : k + w - 1])
                k += w - 1
            out.append(KClass.make(weights, 0, vals[0], slots))
    return sorted(out)


@dataclass(frozen=True)
class HNType:
    classes: tuple[KClass, ...]

    def __post_init__(self):
        if not self.classes:
            raise StabilityError("an HN type has at least one piece")

    def total(self) -> KClass:
        out = self.classes[0]
        for c in self.classes[1:]:
            out = out + c
        return out

    def is_valid(self, chi: ChiWeights | None = None) -> bool:
        if not all(c.in_k_plus() for c in self.classes):
            return False
        slopes = [slope(c, chi) for c in self.classes]
        return all(a < b for a, b in zip(slopes, slopes[1:]))

    def to_json(self) -> list:
        return [c.to_json() for c in self.classes]

    @classmethod
    def from_json(cls, weights: Weights, data) -> "HNType":
        return cls(tuple(KClass.from_json(weights, c) for c in data))


class Word:
    """Scalar combination of sequences of ss-letters (KClass tuples)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in sorted((terms or {}).items(), key=lambda kv: _word_key(kv[0])) if not c.is_zero()}

    @classmethod
    def letter(cls, a: KClass, coeff=ONE) -> "Word":
        return cls({(a,): coeff})

    def __add__(self, other: "Word") -> "Word":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return Word(out)

    def __mul__(self, other):
        if isinstance(other, Word):
            out: dict = {}
            for ka, ca in self.terms.items():
                for kb, cb in other.terms.items():
                    k = ka + kb
                    out[k] = out.get(k, ZERO) + ca * cb
            return Word(out)
        return Word({k: c * other for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def restrict(self, window: Window, chi=None) -> "Word":
        return Word({k: c for k, c in self.terms.items() if all(window.contains(a, chi) for a in k)})

    def to_json(self) -> list:
        return [{"coeff": str(c), "letters": [a.to_json() for a in k]} for k, c in self.terms.items()]

    def __repr__(self):
        return f"Word({len(self.terms)} terms)"


def _word_key(k):
    return (len(k), [a.sort_key() for a in k])


class _Alphabet:
    """Letters as integer vectors (rank, d0, flattened slots) with cached data."""

    def __init__(self, weights: Weights, max_rank: int, window: Window, genus: int, chi):
        self.weights = weights
        self.window = window
        self.chi = chi
        self.classes = letters(weights, max_rank, window, chi)
        self.vecs = [_vec(a) for a in self.classes]
        self.slopes = [slope(a, chi) for a in self.classes]
        self._genus = genus
        self._euler: dict = {}
        self._par_coeffs = _par_functional(weights, chi)

    def euler(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._euler:
            self._euler[key] = euler_form(self.classes[i], self.classes[j], self._genus)
        return self._euler[key]

    def par(self, vec) -> Fraction:
        return sum((c * x for c, x in zip(self._par_coeffs, vec)), Fraction(0))

    def slope_of(self, vec):
        if vec[0] == 0:
            return INF
        return self.par(vec) / vec[0]


def _vec(a: KClass) -> tuple[int, ...]:
    return (a.rank, a.d0) + tuple(x for s in a.slots for x in s)


def _par_functional(weights: Weights, chi) -> tuple[Fraction, ...]:
    """Coefficients of Par on the vector (rank, d0, slots...)."""
    chi = chi or ChiWeights.default(weights)
    d0_c = Fraction(1)
    slot_c = []
    for p, w in enumerate(weights.weights):
        ch = chi.values[p]
        if w > 1:
            d0_c -= ch[0]
        for i in range(1, w):
            nxt = ch[i] if i < w - 1 else Fraction(0)
            slot_c.append(ch[i - 1] - nxt)
    return (Fraction(0), d0_c, *slot_c)


def _feasible(rem, window: Window, par) -> bool:
    if rem[0] < 0:
        return False
    if rem[0] == 0:
        if not any(rem):
            return True
        return window.allow_torsion and all(x >= 0 for x in rem[1:])
    return par(rem) >= rem[0] * window.lo


def _words(alpha: KClass, window: Window, alph: _Alphabet) -> list[tuple[int, ...]]:
    """Index sequences of letters summing to alpha."""
    out: list = []
    vecs = alph.vecs

    def rec(rem, prefix):
        if not any(rem):
            out.append(prefix)
            return
        for i, a in enumerate(vecs):
            nxt = tuple(x - y for x, y in zip(rem, a))
            if _feasible(nxt, window, alph.par):
                rec(nxt, prefix + (i,))

    rec(_vec(alpha), ())
    return out


def _check_alpha(alpha: KClass, window: Window):
    if not alpha.in_k_plus():
        raise StabilityError(f"{alpha} is not in K_S^+")
    if alpha.rank > 0 and (window.lo == -INF or window.hi == INF):
        raise StabilityError("an unbounded window is not allowed for positive rank")


def enumerate_words(alpha: KClass, window: Window, chi: ChiWeights | None = None) -> list[tuple[KClass, ...]]:
    """All sequences of window letters summing to alpha."""
    _check_alpha(alpha, window)
    alph = _Alphabet(alpha.weights, alpha.rank, window, 0, chi)
    return [tuple(alph.classes[i] for i in w) for w in _words(alpha, window, alph)]


def enumerate_hn_types(alpha: KClass, window: Window, chi: ChiWeights | None = None) -> list[HNType]:
    """HN types of alpha whose pieces are all window letters."""
    _check_alpha(alpha, window)
    alph = _Alphabet(alpha.weights, alpha.rank, window, 0, chi)
    types = []
    for w in _words(alpha, window, alph):
        sl = [alph.slopes[i] for i in w]
        if all(x < y for x, y in zip(sl, sl[1:])):
            types.append(HNType(tuple(alph.classes[i] for i in w)))
    return types


def _v_exponent(classes, genus: int) -> int:
    return sum(euler_form(a, b, genus) for a, b in itertools.combinations(classes, 2))


def hn_word(t: HNType, genus: int, chi: ChiWeights | None = None) -> Word:
    """1_{S_type} = v^{sum_{i<j} <a_i, a_j>} ss_{a_1} ... ss_{a_l}."""
    if not t.is_valid(chi):
        raise StabilityError("HN type pieces must have strictly increasing slopes")
    return Word({t.classes: vpow(_v_exponent(t.classes, genus))})


def _sum(classes):
    out = classes[0]
    for c in classes[1:]:
        out = out + c
    return out


def _cut_data(word, alph: _Alphabet, alpha_slope, k_start: int):
    """Forced and allowed block starts of a word.

    Blocks have strictly increasing slopes, so a new block is forced at every
    descent.  A block may start at position c only if the tail from c on has
    slope > mu(alpha); this is imposed for c >= 1, and also at c = 0 when
    k_start = 1.
    """
    m = len(word)
    suffix = [None] * (m + 1)
    acc = (0,) * len(alph.vecs[0])
    suffix[m] = acc
    for c in range(m - 1, -1, -1):
        acc = tuple(x + y for x, y in zip(acc, alph.vecs[word[c]]))
        suffix[c] = acc
    forced = {c for c in range(1, m) if not alph.slopes[word[c - 1]] < alph.slopes[word[c]]}
    first = 0 if k_start == 1 else 1
    allowed = {c for c in range(first, m) if alph.slope_of(suffix[c]) > alpha_slope}
    return forced, allowed


def _admissible(forced, allowed, k_start) -> bool:
    return (k_start == 2 or 0 in allowed) and forced <= allowed


def reineke_tuples(alpha: KClass, window: Window, k_start: int = 2, chi=None) -> list[tuple[KClass, ...]]:
    """The tuples (beta_1..beta_s) of the inversion formula that meet the window."""
    _check_alpha(alpha, window)
    alph = _Alphabet(alpha.weights, alpha.rank, window, 0, chi)
    alpha_slope = slope(alpha, chi)
    seen = set()
    for word in _words(alpha, window, alph):
        forced, allowed = _cut_data(word, alph, alpha_slope, k_start)
        if not _admissible(forced, allowed, k_start):
            continue
        optional = sorted(allowed - forced - {0})
        for pick in itertools.product((False, True), repeat=len(optional)):
            cuts = sorted(forced | {c for c, on in zip(optional, pick) if on})
            bounds = [0, *cuts, len(word)]
            seen.add(tuple(_sum([alph.classes[i] for i in word[a:b]]) for a, b in zip(bounds, bounds[1:])))
    return sorted(seen, key=_word_key)


def reineke_expand(alpha: KClass, window: Window, genus: int, k_start: int = 2, chi=None) -> Word:
    """sum over tuples of (-1)^{s-1} v^{sum_{i<j}<b_i,b_j>} 1_{b_1}...1_{b_s}, each 1_b written in ss-letters.

    Every ss-word arises from cutting it into consecutive blocks that are HN
    types; the block sums are the tuple (b_1..b_s).  By bilinearity the power
    of v is sum_{a<b} <w_a, w_b> over the letters whatever the cut, so a word's
    coefficient is that power times the signed count of admissible cuts, and
    any optional cut makes the signed count vanish.
    """
    if k_start not in (1, 2):
        raise StabilityError("tail condition must start at k = 1 or k = 2")
    _check_alpha(alpha, window)
    alph = _Alphabet(alpha.weights, alpha.rank, window, genus, chi)
    alpha_slope = slope(alpha, chi)
    out: dict = {}
    for word in _words(alpha, window, alph):
        forced, allowed = _cut_data(word, alph, alpha_slope, k_start)
        if not _admissible(forced, allowed, k_start) or allowed - forced - {0}:
            continue
        sign = -1 if len(forced) % 2 else 1
        exp = sum(alph.euler(word[a], word[b]) for a, b in itertools.combinations(range(len(word)), 2))
        out[tuple(alph.classes[i] for i in word)] = vpow(exp) * sign
    return Word(out)


def reineke_expand_naive(alpha: KClass, window: Window, genus: int, k_start: int = 2, chi=None) -> Word:
    """Same expansion, summing every cut explicitly with per-block powers of v."""
    _check_alpha(alpha, window)
    alph = _Alphabet(alpha.weights, alpha.rank, window, genus, chi)
    alpha_slope = slope(alpha, chi)
    out: dict = {}
    for word in _words(alpha, window, alph):
        letters_ = [alph.classes[i] for i in word]
        slopes = [alph.slopes[i] for i in word]
        m = len(word)
        for mask in range(1 << max(m - 1, 0)):
            bounds = [0] + [i + 1 for i in range(m - 1) if mask >> i & 1] + [m]
            spans = list(zip(bounds, bounds[1:]))
            if not all(slopes[i] < slopes[i + 1] for a, b in spans for i in range(a, b - 1)):
                continue
            blocks = [_sum(letters_[a:b]) for a, b in spans]
            if not all(slope(_sum(blocks[k - 1 :]), chi, check=False) > alpha_slope for k in range(k_start, len(blocks) + 1)):
                continue
            exp = _v_exponent(blocks, genus) + sum(_v_exponent(letters_[a:b], genus) for a, b in spans)
            sign = -1 if (len(blocks) - 1) % 2 else 1
            key = tuple(letters_)
            out[key] = out.get(key, ZERO) + vpow(exp) * sign
    return Word(out)


def hn_reineke_identity_check(alpha: KClass, window: Window, genus: int, k_start: int = 2, chi=None, saturation: bool = True):
    """Reineke inversion followed by HN expansion should give back ss_alpha alone.

    ss_alpha is expected with coefficient 1 when alpha is itself a window letter,
    and the whole result is expected to vanish otherwise (no semistable objects
    of that class are visible in the window).  Returns (passed, result, expected).
    """
    result = reineke_expand(alpha, window, genus, k_start, chi)
    if saturation:
        wider = reineke_expand(alpha, window.widen(), genus, k_start, chi).restrict(window, chi)
        if wider != result:
            raise WindowSaturationError("enlarging the window changed in-window coefficients")
    expected = Word.letter(alpha) if window.contains(alpha, chi) else Word()
    return result == expected, result, expected


# -- polygons ---------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[Fraction, Fraction], ...]

    def edge_slopes(self) -> list:
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.append(INF if x1 == x0 else (y1 - y0) / (x1 - x0))
        return out

    def is_convex(self) -> bool:
        s = self.edge_slopes()
        return all(a < b for a, b in zip(s, s[1:]))

    def to_json(self) -> list:
        return [[[p.numerator, p.denominator] for p in v] for v in self.vertices]


def polygon_of(t: HNType, chi: ChiWeights | None = None) -> Polygon:
    pts = [(Fraction(0), Fraction(0))]
    x, y = Fraction(0), Fraction(0)
    for c in t.classes:
        x += c.rank
        y += parabolic_degree(c, chi)
        pts.append((x, y))
    return Polygon(tuple(pts))


def lower_hull(polys: list[Polygon]) -> Polygon:
    """Lower boundary of the convex hull of all vertices (monotone chain)."""
    if not polys:
        raise StabilityError("lower_hull needs at least one polygon")
    pts = sorted({p for poly in polys for p in poly.vertices})

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    hull: list = []
    for p in pts:
        while len(hull) >= 2 and cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return Polygon(tuple(hull))
