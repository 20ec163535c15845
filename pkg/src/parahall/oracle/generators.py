"""The commuting torsion generators T_{0,d}, 1_{0,d}, theta_{0,d} and Green's pairing."""

from __future__ import annotations

from fractions import Fraction

from ..curve import Curve, point_count
from ..scalars import ONE, ZERO, Scalar, coerce_scalar, vpow
from .hall import HallElem, model_for
from .models import partitions

__all__ = ["TPoly", "qint", "exp_convert", "green_pairing_T0", "closed_points", "KINDS", "MAX_ORDER"]

KINDS = ("T", "one", "theta")
MAX_ORDER = 12


def qint(d: int) -> Scalar:
    """[d] = (v^-d - v^d) / (v^-1 - v)."""
    return (vpow(-d) - vpow(d)) / (vpow(-1) - vpow(1))


class TPoly:
    """Polynomial in commuting T_1..T_N with Scalar coefficients."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms = {}
        for k, c in sorted((terms or {}).items()):
            c = coerce_scalar(c)
            if not c.is_zero():
                self.terms[tuple(k)] = c

    @classmethod
    def const(cls, N: int, c) -> "TPoly":
        return cls(N, {(0,) * N: coerce_scalar(c)})

    @classmethod
    def gen(cls, N: int, d: int) -> "TPoly":
        e = [0] * N
        e[d - 1] = 1
        return cls(N, {tuple(e): ONE})

    def __add__(self, other):
        if not isinstance(other, TPoly):
            other = TPoly.const(self.N, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TPoly(self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly(self.N, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            c = coerce_scalar(other)
            return TPoly(self.N, {k: x * c for k, x in self.terms.items()})
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, ZERO) + ca * cb
        return TPoly(self.N, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def weighted_degrees(self) -> set[int]:
        return {sum((i + 1) * e for i, e in enumerate(k)) for k in self.terms}

    def to_json(self) -> list:
        return [{"exps": list(k), "coeff": str(c)} for k, c in self.terms.items()]

    @classmethod
    def from_json(cls, N: int, data) -> "TPoly":
        out = {}
        for item in data:
            exps = list(item["exps"]) + [0] * (N - len(item["exps"]))
            out[tuple(exps[:N])] = Scalar.parse(str(item["coeff"]))
        return cls(N, out)


def _exp(f: list, N: int) -> list:
    """Coefficients 1..N of exp(sum f_k s^k); n E_n = sum_k k f_k E_{n-k}."""
    E = [TPoly.const(N, 1)]
    for n in range(1, N + 1):
        acc = TPoly(N)
        for k in range(1, n + 1):
            acc = acc + f[k - 1] * E[n - k] * k
        E.append(acc * Scalar.from_fraction(Fraction(1, n)))
    return E[1:]


def _log(F: list, N: int) -> list:
    """Coefficients 1..N of log(1 + sum F_k s^k)."""
    L = []
    for n in range(1, N + 1):
        acc = F[n - 1]
        for k in range(1, n):
            acc = acc - L[k - 1] * F[n - k - 1] * Scalar.from_fraction(Fraction(k, n))
        L.append(acc)
    return L


def _to_T(kind: str, coeffs: list, N: int) -> list:
    if kind == "T":
        return list(coeffs)
    L = _log(coeffs, N)
    if kind == "one":
        return [x * qint(d) for d, x in enumerate(L, start=1)]
    return [x * (ONE / (vpow(-1) - vpow(1))) for x in L]


def _from_T(kind: str, T: list, N: int) -> list:
    if kind == "T":
        return list(T)
    if kind == "one":
        return _exp([x * (ONE / qint(d)) for d, x in enumerate(T, start=1)], N)
    return _exp([x * (vpow(-1) - vpow(1)) for x in T], N)


def exp_convert(kind_in: str, kind_out: str, N: int, coeffs: list | None = None) -> list[TPoly]:
    """Convert among the generator families to order N.

    1 + sum 1_{0,d} s^d = exp(sum T_{0,d} s^d / [d]) and
    1 + sum theta_{0,d} s^d = exp((v^-1 - v) sum T_{0,d} s^d).
    ``coeffs`` gives the kind_in family as polynomials in T_1..T_N; by
    default it is T_1..T_N themselves (only meaningful for kind_in = "T").
    """
    if kind_in not in KINDS or kind_out not in KINDS:
        raise ValueError(f"kinds are {KINDS}")
    if not 1 <= N <= MAX_ORDER:
        raise ValueError(f"order must be between 1 and {MAX_ORDER}")
    if coeffs is None:
        if kind_in != "T":
            raise ValueError("coefficients are required unless converting from T")
        coeffs = [TPoly.gen(N, d) for d in range(1, N + 1)]
    if len(coeffs) != N:
        raise ValueError(f"expected {N} coefficients")
    return _from_T(kind_out, _to_T(kind_in, coeffs, N), N)


def _mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def closed_points(curve: Curve, e: int) -> Fraction:
    """B_e = (1/e) sum_{k | e} mu(e/k) #X(F_{l^k})."""
    if curve.l is None:
        raise ValueError("closed point counts need a numeric l")
    total = Fraction(0)
    for k in range(1, e + 1):
        if e % k == 0:
            total += _mobius(e // k) * point_count(curve, k).at_l_rational(curve.l)
    return total / e


def _local_log_norm(q: int, k: int) -> Fraction:
    """(L_k, L_k) for L_k = [u^k] log(sum_lambda 1_lambda u^|lambda|) at a point with residue field F_q."""
    if k == 1:
        # L_1 = 1_{(1)} and Aut of the residue field is its unit group
        return Fraction(1, q - 1)
    if q not in (2, 3):
        raise ValueError(f"local Hall algebra over F_{q} in degree {k} is beyond the oracle")
    model = model_for("dvr", q)
    A = [sum((HallElem.basis(model, lam) for lam in partitions(j)), HallElem(model)) for j in range(1, k + 1)]
    L = []
    for n in range(1, k + 1):
        acc = A[n - 1]
        for j in range(1, n):
            acc = acc - (L[j - 1] * A[n - j - 1]).scale(Scalar.from_fraction(Fraction(j, n)))
        L.append(acc)
    total = Fraction(0)
    for lam, c in L[-1].terms.items():
        x = c.at_l_rational(q)
        total += x * x / model.aut_count(lam)
    return total


def green_pairing_T0(curve: Curve, d: int) -> dict:
    """(T_{0,d}, T_{0,d}) from the torsion Hall algebra, against v^{d-1} #X(F_{l^d}) [d] / (d l - d).

    T_{0,d} = [d] sum_x [s^d] log F_x(s) over closed points x; pieces at
    different points are orthogonal, and a point of degree e contributes the
    local element of degree d/e over F_{l^e}.
    """
    if curve.l is None or curve.is_generic:
        raise ValueError("the pairing needs a numeric curve")
    if not 1 <= d <= 3:
        raise ValueError("green_pairing_T0 is implemented for d <= 3")
    l = curve.l
    local = Fraction(0)
    for e in range(1, d + 1):
        if d % e == 0:
            B = closed_points(curve, e)
            if B:
                local += B * _local_log_norm(l**e, d // e)
    qd = qint(d).at_l(l)
    qd_sq = (qd[0] * qd[0] + qd[1] * qd[1] / l, 2 * qd[0] * qd[1])
    lhs = (qd_sq[0] * local, qd_sq[1] * local)
    N = point_count(curve, d).at_l_rational(l)
    closed = (vpow(d - 1) * qint(d) * Scalar.from_fraction(N / (d * (l - 1)))).at_l(l)
    return {"pass": lhs == closed, "lhs": lhs, "rhs": closed}
