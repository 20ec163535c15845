"""The two torsion models, built and enumerated explicitly over F_2 or F_3.

DVR model: finite abelian l-groups, i.e. modules of finite length over the
l-adic integers, of type lambda = (Z/l^lambda_1) + ... .
Quiver model: nilpotent representations of the cyclic quiver C_n with arrows
i -> i+1, given by explicit matrices.  A segment (a, k) is the uniserial
representation on vertices a, a+1, ..., a+k-1 with its simple socle at a+k-1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .linalg import enumerate_subspaces, nullspace, rank

__all__ = [
    "CAPACITY",
    "OracleCapacityError",
    "Partition",
    "Multisegment",
    "DVRModule",
    "QuiverRep",
    "DVRModel",
    "QuiverModel",
    "partitions",
    "multisegments",
]

CAPACITY = 6


class OracleCapacityError(RuntimeError):
    pass


def _check_field(l: int):
    if l not in (2, 3):
        raise ValueError("the oracle works over F_2 or F_3 only")


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return sum(j * x for j, x in enumerate(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > k) for k in range(self.parts[0])))

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


@dataclass(frozen=True, order=True)
class Multisegment:
    """Multiset of cyclic segments (start mod n, length), kept sorted."""

    n: int
    segments: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        segs = tuple(sorted((int(a) % self.n, int(k)) for a, k in self.segments))
        if any(k <= 0 for _, k in segs):
            raise ValueError("segment lengths must be positive")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def segment(cls, n: int, start: int, length: int) -> "Multisegment":
        return cls(n, ((start, length),))

    def dimension_vector(self) -> tuple[int, ...]:
        d = [0] * self.n
        for a, k in self.segments:
            for j in range(k):
                d[(a + j) % self.n] += 1
        return tuple(d)

    @property
    def size(self) -> int:
        return sum(k for _, k in self.segments)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.n, self.segments + other.segments)

    def to_json(self) -> list[list[int]]:
        return [[a, k] for a, k in self.segments]

    def __str__(self):
        return "+".join(f"[{a};{k})" for a, k in self.segments) or "0"


def multisegments(n: int, dimvec) -> list[Multisegment]:
    """Every multisegment on C_n with the given dimension vector."""
    dimvec = tuple(dimvec)
    total = sum(dimvec)
    segs = [(a, k) for k in range(1, total + 1) for a in range(n)]
    out = []

    def rec(idx, remaining, chosen):
        if not any(remaining):
            out.append(Multisegment(n, tuple(chosen)))
            return
        for j in range(idx, len(segs)):
            a, k = segs[j]
            nxt = list(remaining)
            ok = True
            for t in range(k):
                nxt[(a + t) % n] -= 1
                if nxt[(a + t) % n] < 0:
                    ok = False
                    break
            if ok:
                rec(j, nxt, chosen + [(a, k)])

    rec(0, dimvec, [])
    return sorted(out)


class DVRModule:
    """Z/l^lambda_1 + ... + Z/l^lambda_t with elements as integer tuples."""

    def __init__(self, lam: Partition, l: int):
        _check_field(l)
        if lam.size > CAPACITY:
            raise OracleCapacityError(f"total F_l-dimension {lam.size} exceeds {CAPACITY}")
        self.lam = lam
        self.l = l
        self.mods = tuple(l**x for x in lam.parts)

    def elements(self):
        return itertools.product(*(range(m) for m in self.mods))

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.mods))

    def mul(self, k: int, x):
        return tuple(k * a % m for a, m in zip(x, self.mods))

    @property
    def zero(self):
        return (0,) * len(self.mods)

    def submodules(self) -> list[frozenset]:
        """All subgroups, by closing under one new generator at a time."""
        subs = {frozenset([self.zero])}
        frontier = list(subs)
        elems = list(self.elements())
        while frontier:
            nxt = []
            for H in frontier:
                for g in elems:
                    if g in H:
                        continue
                    new = set(H)
                    mult = g
                    while mult != self.zero:
                        new.update(self.add(h, mult) for h in H)
                        mult = self.add(mult, g)
                    new = frozenset(new)
                    if new not in subs:
                        subs.add(new)
                        nxt.append(new)
            frontier = nxt
        return sorted(subs, key=lambda H: (len(H), sorted(H)))

    def _type_from_sizes(self, sizes) -> Partition:
        # sizes[k] = |l^k X|; the drops give the conjugate partition
        conj = []
        for a, b in zip(sizes, sizes[1:]):
            ratio = a // b
            e = 0
            while ratio > 1:
                ratio //= self.l
                e += 1
            if e:
                conj.append(e)
        return Partition(tuple(conj)).conjugate()

    def classify(self, H: frozenset) -> tuple[Partition, Partition]:
        """(quotient type, subgroup type)."""
        top = max(self.lam.parts, default=0)
        sub_sizes, quot_sizes = [], []
        for k in range(top + 2):
            lk = self.l**k
            sub_sizes.append(len({self.mul(lk, h) for h in H}))
            image = {self.mul(lk, x) for x in self.elements()}
            # |l^k M + H| / |H|
            plus = {self.add(a, h) for a in image for h in H}
            quot_sizes.append(len(plus) // len(H))
        return self._type_from_sizes(quot_sizes), self._type_from_sizes(sub_sizes)

    def killed_by(self, k: int) -> int:
        """#{x : l^k x = 0}."""
        lk = self.l**k
        return sum(1 for x in self.elements() if self.mul(lk, x) == self.zero)

    def cokernel_size(self, k: int) -> int:
        """|M / l^k M|."""
        lk = self.l**k
        total = 1
        for m in self.mods:
            total *= m
        return total // len({self.mul(lk, x) for x in self.elements()})


def _log(x: int, l: int) -> int:
    e = 0
    while x > 1:
        if x % l:
            raise ArithmeticError(f"{x} is not a power of {l}")
        x //= l
        e += 1
    return e


class QuiverRep:
    """Nilpotent representation of C_n: graded basis plus the arrow matrix x."""

    def __init__(self, n: int, l: int, vertex: tuple[int, ...], x: list[list[int]]):
        _check_field(l)
        self.n = n
        self.l = l
        self.vertex = vertex
        self.x = x
        self.dim = len(vertex)
        if self.dim > CAPACITY:
            raise OracleCapacityError(f"total F_l-dimension {self.dim} exceeds {CAPACITY}")
        if any(self._apply_power(self.dim, e) for e in self._unit_vectors()):
            raise ValueError("representation is not nilpotent")

    @classmethod
    def from_multisegment(cls, m: Multisegment, l: int) -> "QuiverRep":
        vertex = []
        links = []
        for a, k in m.segments:
            base = len(vertex)
            for j in range(k):
                vertex.append((a + j) % m.n)
                if j + 1 < k:
                    links.append((base + j, base + j + 1))
        D = len(vertex)
        if D > CAPACITY:
            raise OracleCapacityError(f"total F_l-dimension {D} exceeds {CAPACITY}")
        x = [[0] * D for _ in range(D)]
        for src, dst in links:
            x[dst][src] = 1
        return cls(m.n, l, tuple(vertex), x)

    def _unit_vectors(self):
        for i in range(self.dim):
            yield [int(i == j) for j in range(self.dim)]

    def apply(self, vec):
        return [sum(self.x[i][j] * vec[j] for j in range(self.dim)) % self.l for i in range(self.dim)]

    def _apply_power(self, m: int, vec):
        for _ in range(m):
            vec = self.apply(vec)
        return any(vec)

    def power(self, m: int, vec):
        for _ in range(m):
            vec = self.apply(vec)
        return vec

    def dimension_vector(self) -> tuple[int, ...]:
        d = [0] * self.n
        for a in self.vertex:
            d[a] += 1
        return tuple(d)

    def _vertex_indices(self, a: int) -> list[int]:
        return [i for i, b in enumerate(self.vertex) if b == a]

    def submodules(self) -> list[tuple[tuple[int, ...], ...]]:
        """x-stable graded subspaces, as lists of global basis vectors."""
        per_vertex = []
        for a in range(self.n):
            idx = self._vertex_indices(a)
            spaces = []
            for sp in enumerate_subspaces(len(idx), self.l):
                rows = []
                for r in sp:
                    g = [0] * self.dim
                    for c, i in zip(r, idx):
                        g[i] = c
                    rows.append(tuple(g))
                spaces.append(tuple(rows))
            per_vertex.append(spaces)
        out = []
        for choice in itertools.product(*per_vertex):
            ok = True
            for a in range(self.n):
                target = list(choice[(a + 1) % self.n])
                images = [self.apply(u) for u in choice[a]]
                if images and rank(target + images, self.l) != len(target):
                    ok = False
                    break
            if ok:
                out.append(tuple(u for block in choice for u in block))
        return out

    def _rank_table(self, spaces_of) -> dict:
        """R[(a, m)] = dim of the image of x^m on the vertex-a part."""
        table = {}
        for a in range(self.n):
            for m in range(self.dim + 2):
                table[(a, m)] = spaces_of(a, m)
        return table

    def _multisegment_from_ranks(self, R: dict) -> Multisegment:
        # E(a, L): vectors at a that survive exactly L - 1 further arrows
        def E(a, L):
            return R[(a % self.n, L - 1)] - R[(a % self.n, L)]

        segs = []
        for a in range(self.n):
            for k in range(1, self.dim + 1):
                count = E(a, k) - E(a - 1, k + 1)
                if count < 0:
                    raise ArithmeticError("inconsistent rank table")
                segs.extend([(a, k)] * count)
        return Multisegment(self.n, tuple(segs))

    def classify(self, U) -> tuple[Multisegment, Multisegment]:
        """(quotient type, sub type) of the subrepresentation spanned by U."""
        U = [list(u) for u in U]
        by_vertex = {a: [u for u in U if any(u[i] for i in self._vertex_indices(a))] for a in range(self.n)}

        def sub_rank(a, m):
            return rank([self.power(m, u) for u in by_vertex[a]], self.l) if by_vertex[a] else 0

        full = {a: [e for e in self._unit_vectors() if self.vertex[e.index(1)] == a] for a in range(self.n)}

        def quot_rank(a, m):
            tgt = by_vertex[(a + m) % self.n]
            imgs = [self.power(m, e) for e in full[a]]
            return rank(imgs + tgt, self.l) - len(tgt)

        sub = self._multisegment_from_ranks(self._rank_table(sub_rank))
        quot = self._multisegment_from_ranks(self._rank_table(quot_rank))
        return quot, sub

    def iso_class(self) -> Multisegment:
        return self.classify(list(self._unit_vectors()))[1]


def _hom_equations(M: QuiverRep, N: QuiverRep):
    """Unknowns F[i][j] with vertex(i) = vertex(j); rows of x_N F - F x_M = 0."""
    unknowns = [(i, j) for i in range(N.dim) for j in range(M.dim) if N.vertex[i] == M.vertex[j]]
    pos = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for i in range(N.dim):
        for j in range(M.dim):
            row = [0] * len(unknowns)
            for k in range(N.dim):
                if N.x[i][k] and (k, j) in pos:
                    row[pos[(k, j)]] += N.x[i][k]
            for k in range(M.dim):
                if M.x[k][j] and (i, k) in pos:
                    row[pos[(i, k)]] -= M.x[k][j]
            if any(row):
                rows.append(row)
    return unknowns, rows


class DVRModel:
    """Hall data for finite l-groups; labels are partitions."""

    name = "dvr"

    def __init__(self, l: int):
        _check_field(l)
        self.l = l

    def key(self):
        return ("dvr", self.l)

    def degree(self, lab: Partition):
        return lab.size

    def zero_label(self) -> Partition:
        return Partition(())

    def labels_with(self, degree) -> list[Partition]:
        return list(partitions(degree))

    def add_degree(self, a, b):
        return a + b

    def module(self, lab: Partition) -> DVRModule:
        return DVRModule(lab, self.l)

    @lru_cache(maxsize=None)
    def sub_counts(self, lab: Partition) -> Counter:
        M = self.module(lab)
        return Counter(M.classify(H) for H in M.submodules())

    @lru_cache(maxsize=None)
    def dim_hom(self, a: Partition, b: Partition) -> int:
        # a hom is a choice of images y_i with l^{a_i} y_i = 0
        N = self.module(b)
        total = 1
        for part in a.parts:
            total *= N.killed_by(part)
        return _log(total, self.l)

    @lru_cache(maxsize=None)
    def dim_ext(self, a: Partition, b: Partition) -> int:
        # from the presentation 0 -> Z^t --diag(l^a_i)--> Z^t -> M -> 0
        N = self.module(b)
        total = 1
        for part in a.parts:
            total *= N.cokernel_size(part)
        return _log(total, self.l)

    def euler(self, a: Partition, b: Partition) -> int:
        return self.dim_hom(a, b) - self.dim_ext(a, b)

    @lru_cache(maxsize=None)
    def aut_count(self, lab: Partition) -> int:
        M = self.module(lab)
        if not lab.parts:
            return 1
        choices = []
        for part in lab.parts:
            lk = self.l**part
            choices.append([y for y in M.elements() if M.mul(lk, y) == M.zero])
        count = 0
        for images in itertools.product(*choices):
            # surjective (hence bijective) iff the images span M / lM
            if rank([[c % self.l for c in y] for y in images], self.l) == len(lab.parts):
                count += 1
        return count

    def label_from_json(self, data) -> Partition:
        return Partition(tuple(sorted((int(x) for x in data), reverse=True)))


class QuiverModel:
    """Hall data for nilpotent representations of C_n; labels are multisegments."""

    name = "quiver"

    def __init__(self, n: int, l: int):
        _check_field(l)
        if n < 1:
            raise ValueError("cycle length must be positive")
        self.n = n
        self.l = l

    def key(self):
        return ("quiver", self.n, self.l)

    def degree(self, lab: Multisegment):
        return lab.dimension_vector()

    def zero_label(self) -> Multisegment:
        return Multisegment(self.n, ())

    def labels_with(self, degree) -> list[Multisegment]:
        return multisegments(self.n, degree)

    def add_degree(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def rep(self, lab: Multisegment) -> QuiverRep:
        return QuiverRep.from_multisegment(lab, self.l)

    @lru_cache(maxsize=None)
    def sub_counts(self, lab: Multisegment) -> Counter:
        R = self.rep(lab)
        return Counter(R.classify(U) for U in R.submodules())

    @lru_cache(maxsize=None)
    def dim_hom(self, a: Multisegment, b: Multisegment) -> int:
        M, N = self.rep(a), self.rep(b)
        unknowns, rows = _hom_equations(M, N)
        return len(unknowns) - rank(rows, self.l) if rows else len(unknowns)

    def euler_dimvec(self, a: Multisegment, b: Multisegment) -> int:
        m, k = a.dimension_vector(), b.dimension_vector()
        return sum(m[i] * k[i] for i in range(self.n)) - sum(m[i] * k[(i + 1) % self.n] for i in range(self.n))

    def dim_ext(self, a: Multisegment, b: Multisegment) -> int:
        return self.dim_hom(a, b) - self.euler_dimvec(a, b)

    def euler(self, a: Multisegment, b: Multisegment) -> int:
        return self.dim_hom(a, b) - self.dim_ext(a, b)

    @lru_cache(maxsize=None)
    def aut_count(self, lab: Multisegment) -> int:
        M = self.rep(lab)
        if M.dim == 0:
            return 1
        unknowns, rows = _hom_equations(M, M)
        basis = nullspace(rows, len(unknowns), self.l) if rows else [
            [int(i == j) for j in range(len(unknowns))] for i in range(len(unknowns))
        ]
        count = 0
        for coeffs in itertools.product(range(self.l), repeat=len(basis)):
            F = [[0] * M.dim for _ in range(M.dim)]
            for c, vec in zip(coeffs, basis):
                if c:
                    for (i, j), val in zip(unknowns, vec):
                        F[i][j] = (F[i][j] + c * val) % self.l
            if rank(F, self.l) == M.dim:
                count += 1
        return count

    def label_from_json(self, data) -> Multisegment:
        return Multisegment(self.n, tuple((int(a), int(k)) for a, k in data))
