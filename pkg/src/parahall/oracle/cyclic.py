"""Identities among torsion classes at a marked point, checked in the C_n Hall algebra.

At a point of weight n, O^{(k)}(i eps) corresponds to the segment starting at
vertex -i of length k; its simple pieces have the K-classes s_i of ktheory.
"""

from __future__ import annotations

from ..ktheory import basis_s, sym_form
from ..lattice import Weights
from ..scalars import vpow
from .hall import HallElem, equal_at_l, model_for
from .models import CAPACITY, Multisegment, OracleCapacityError

__all__ = ["T", "torsion_class", "verify_cyclic_bracket", "verify_T_shift", "qcommutator", "bracket_constants"]


def T(n: int, l: int, i: int, k: int) -> HallElem:
    """T^{(k)}(i) = 1_{O^{(k)}(i eps)}."""
    model = model_for("quiver", l, n)
    return HallElem.basis(model, Multisegment.segment(n, -i, k))


def torsion_class(n: int, i: int, k: int):
    """K-class of O^{(k)}(i eps) at a single point of weight n."""
    W = Weights.of(n)
    cls = basis_s(W, i, 0)
    for t in range(1, k):
        cls = cls + basis_s(W, i - t, 0)
    return cls


def qcommutator(a: HallElem, b: HallElem, ab_form: int) -> HallElem:
    """[[a, b]] = ab - v^{-(a,b)_S} ba."""
    return a * b - (b * a).scale(vpow(-ab_form))


def _capacity(dim: int):
    if dim > CAPACITY:
        raise OracleCapacityError(f"total dimension {dim} exceeds {CAPACITY}")


def verify_cyclic_bracket(n: int, l: int, i: int, j: int, allow_outside: bool = False) -> dict:
    """v^{j-1} T^{(j)}(i) against the nested commutator of T^{(1)}(i), ..., T^{(1)}(i-j+1)."""
    if not allow_outside and not (n >= 2 and 0 < j < n):
        raise ValueError("the bracket identity is stated for n >= 2 and 0 < j < n")
    _capacity(j)
    acc = T(n, l, i, 1)
    cls = torsion_class(n, i, 1)
    for t in range(1, j):
        nxt = T(n, l, i - t, 1)
        ncls = torsion_class(n, i - t, 1)
        acc = qcommutator(acc, nxt, sym_form(cls, ncls, 0))
        cls = cls + ncls
    lhs = T(n, l, i, j).scale(vpow(j - 1))
    return {"pass": equal_at_l(lhs, acc), "lhs": lhs, "rhs": acc}


def verify_T_shift(n: int, l: int, i: int, j: int, m: int) -> dict:
    """T^{(mn+j)}(i) = 1_{O^(m)(i)} T^{(j)}(i) - v^2 T^{(j)}(i) 1_{O^(m)(i)} for m > 0.

    The pulled-back torsion sheaf (O^{(m)})(i eps) is the segment of length m n
    starting at vertex -i.
    """
    if not 0 < j < n:
        raise ValueError("need 0 < j < n")
    if m < 0:
        raise ValueError("m must be nonnegative")
    _capacity(m * n + j)
    lhs = T(n, l, i, m * n + j)
    if m == 0:
        rhs = T(n, l, i, j)
    else:
        big = T(n, l, i, m * n)
        small = T(n, l, i, j)
        rhs = big * small - (small * big).scale(vpow(2))
    return {"pass": equal_at_l(lhs, rhs), "lhs": lhs, "rhs": rhs}


def bracket_constants(n: int, l: int, k: int) -> dict:
    """True Hom/Ext/Euler values between O^{(k)}(0) and O^{(1)}(-k eps), and the two products.

    Reported so the constants used in the inductive step of the bracket
    identity can be compared with what the counting gives.
    """
    model = model_for("quiver", l, n)
    big = Multisegment.segment(n, 0, k)
    simple = Multisegment.segment(n, k, 1)
    both = big + simple
    ext = Multisegment.segment(n, 0, k + 1)
    p1 = T(n, l, 0, k) * T(n, l, -k, 1)
    p2 = T(n, l, -k, 1) * T(n, l, 0, k)
    expect1 = (HallElem.basis(model, both) + HallElem.basis(model, ext)).scale(vpow(1))
    expect2 = HallElem.basis(model, both)
    return {
        "n": n,
        "k": k,
        "euler(big, simple)": model.euler(big, simple),
        "euler(simple, big)": model.euler(simple, big),
        "hom(big, simple)": model.dim_hom(big, simple),
        "hom(simple, big)": model.dim_hom(simple, big),
        "ext(big, simple)": model.dim_ext(big, simple),
        "ext(simple, big)": model.dim_ext(simple, big),
        "big*simple == v(sum + extension)": equal_at_l(p1, expect1),
        "simple*big == sum": equal_at_l(p2, expect2),
        "big*simple": p1,
        "simple*big": p2,
    }
