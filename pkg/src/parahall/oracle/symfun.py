"""Hall-Littlewood polynomials by symmetrization, and the match with DVR Hall numbers."""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from ..scalars import Scalar
from .hall import HallElem, model_for
from .models import Partition, partitions

__all__ = ["hl_polynomial", "schur_polynomial", "hl_correspondence_check"]

_t = sympy.Symbol("t")


def _xs(m: int):
    return sympy.symbols(f"x1:{m + 1}")


def _vandermonde(xs):
    out = sympy.Integer(1)
    for i, j in itertools.combinations(range(len(xs)), 2):
        out *= xs[i] - xs[j]
    return out


def _sign(perm) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def _antisymmetrize(expr, xs):
    total = sympy.Integer(0)
    for perm in itertools.permutations(range(len(xs))):
        sub = {xs[i]: xs[perm[i]] for i in range(len(xs))}
        total += _sign(perm) * expr.xreplace(sub)
    return sympy.expand(total)


def _v_factor(k: int, t):
    out = sympy.Integer(1)
    for j in range(1, k + 1):
        out *= sympy.cancel((1 - t**j) / (1 - t))
    return out


def hl_polynomial(lam: Partition, m: int, t=None) -> sympy.Poly:
    """P_lambda(x_1..x_m; t) = (1/v_lambda(t)) sum_w w(x^lambda prod_{i<j} (x_i - t x_j)/(x_i - x_j)).

    With t=None the coefficients live in Q(t); otherwise t is a rational number.
    """
    if m < len(lam.parts):
        raise ValueError(f"need at least {len(lam.parts)} variables")
    tt = _t if t is None else sympy.Rational(Fraction(t).numerator, Fraction(t).denominator)
    xs = _xs(m)
    parts = list(lam.parts) + [0] * (m - len(lam.parts))
    mono = sympy.Integer(1)
    for x, e in zip(xs, parts):
        mono *= x**e
    F = mono
    for i, j in itertools.combinations(range(m), 2):
        F *= xs[i] - tt * xs[j]
    num = _antisymmetrize(sympy.expand(F), xs)
    domain = "QQ(t)" if t is None else "QQ"
    q, r = sympy.div(sympy.Poly(num, *xs, domain=domain), sympy.Poly(_vandermonde(xs), *xs, domain=domain))
    if not r.is_zero:
        raise ArithmeticError("antisymmetrization not divisible by the Vandermonde")
    norm = sympy.Integer(1)
    for _, k in sorted({(p, parts.count(p)) for p in parts}):
        norm *= _v_factor(k, tt)
    return sympy.Poly(q.as_expr() / norm, *xs, domain=domain)


def schur_polynomial(lam: Partition, m: int) -> sympy.Poly:
    """Bialternant formula det(x_i^{lambda_j + m - j}) / det(x_i^{m - j})."""
    xs = _xs(m)
    parts = list(lam.parts) + [0] * (m - len(lam.parts))
    A = sympy.Matrix(m, m, lambda i, j: xs[i] ** (parts[j] + m - 1 - j))
    q, r = sympy.div(sympy.Poly(A.det(), *xs, domain="QQ"), sympy.Poly(_vandermonde(xs), *xs, domain="QQ"))
    if not r.is_zero:
        raise ArithmeticError("bialternant not divisible")
    return q


def _in_basis(target: sympy.Poly, basis: dict) -> dict:
    """Coefficients of target in a triangular basis of symmetric polynomials."""
    coeffs = {}
    rest = target
    # P_lambda = m_lambda + lower terms in dominance order; peel leading monomials
    order = sorted(basis, key=lambda lam: lam.parts, reverse=True)
    for lam in order:
        exps = tuple(list(lam.parts) + [0] * (len(target.gens) - len(lam.parts)))
        c = rest.coeff_monomial(exps)
        lead = basis[lam].coeff_monomial(exps)
        if c:
            coeffs[lam] = c / lead
            rest = rest - basis[lam] * (c / lead)
    if not rest.is_zero:
        raise ArithmeticError("product not in the span of the basis")
    return coeffs


def hl_correspondence_check(D: int, l: int) -> dict:
    """Structure constants of u_lambda = l^{-n(lambda)} P_lambda(x; 1/l) against the DVR Hall algebra."""
    if D > 4:
        raise ValueError("degree bound is capped at 4")
    model = model_for("dvr", l)
    t = Fraction(1, l)
    failures = []
    checked = 0
    for N in range(1, D + 1):
        u = {lam: hl_polynomial(lam, N, t) * sympy.Rational(1, l**lam.n) for lam in partitions(N)}
        for a in range(1, N):
            b = N - a
            ua = {lam: hl_polynomial(lam, N, t) * sympy.Rational(1, l**lam.n) for lam in partitions(a)}
            ub = {lam: hl_polynomial(lam, N, t) * sympy.Rational(1, l**lam.n) for lam in partitions(b)}
            for mu, pm in ua.items():
                for nu, pn in ub.items():
                    sym_side = _in_basis(pm * pn, u)
                    hall = HallElem.basis(model, mu) * HallElem.basis(model, nu)
                    hall_side = {lam: c for lam, c in hall.terms.items()}
                    checked += 1
                    lams = set(sym_side) | set(hall_side)
                    for lam in lams:
                        s = Fraction(str(sym_side.get(lam, 0)))
                        h = hall_side.get(lam, Scalar.from_fraction(0)).at_l_rational(l)
                        if s != h:
                            failures.append({"mu": mu.to_json(), "nu": nu.to_json(), "lambda": lam.to_json(), "hl": str(s), "hall": str(h)})
    return {"pass": not failures, "pairs": checked, "failures": failures}
