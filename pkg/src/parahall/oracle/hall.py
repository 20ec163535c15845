"""Hall algebras of the torsion models, by exhaustive counting."""

from __future__ import annotations

from functools import lru_cache

from ..scalars import ONE, ZERO, Scalar, coerce_scalar, vpow
from .models import DVRModel, Multisegment, Partition, QuiverModel, QuiverRep, DVRModule

__all__ = [
    "HallElem",
    "hall_product",
    "hall_number",
    "enumerate_submodules",
    "aut_count",
    "euler",
    "model_for",
    "equal_at_l",
]

_MODELS: dict = {}


def model_for(kind: str, l: int, n: int = 1):
    """Shared model instances, so per-model caches are reused."""
    key = (kind, l, n if kind == "quiver" else None)
    if key not in _MODELS:
        _MODELS[key] = DVRModel(l) if kind == "dvr" else QuiverModel(n, l)
    return _MODELS[key]


class HallElem:
    """Finite Q(v)-combination of isomorphism classes in one model."""

    __slots__ = ("model", "terms")

    def __init__(self, model, terms=None):
        self.model = model
        self.terms = {k: coerce_scalar(c) for k, c in sorted((terms or {}).items()) if not coerce_scalar(c).is_zero()}

    @classmethod
    def basis(cls, model, label, coeff=ONE) -> "HallElem":
        return cls(model, {label: coeff})

    @classmethod
    def unit(cls, model) -> "HallElem":
        return cls(model, {model.zero_label(): ONE})

    def _same(self, other):
        if self.model.key() != other.model.key():
            raise ValueError("Hall elements from different models")

    def __add__(self, other: "HallElem") -> "HallElem":
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return HallElem(self.model, out)

    def __neg__(self):
        return HallElem(self.model, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElem":
        c = coerce_scalar(c)
        return HallElem(self.model, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HallElem):
            return hall_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HallElem):
            return NotImplemented
        return self.model.key() == other.model.key() and self.terms == other.terms

    def __hash__(self):
        return hash((self.model.key(), tuple(self.terms.items())))

    def degree(self):
        degs = {self.model.degree(k) for k in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def to_json(self) -> list:
        return [{"class": k.to_json(), "coeff": str(c)} for k, c in self.terms.items()]

    def __repr__(self):
        return " + ".join(f"({c})*{k}" for k, c in self.terms.items()) or "0"


@lru_cache(maxsize=None)
def _basis_product(model, mu, nu) -> tuple:
    """1_mu * 1_nu = sum_R v^{-<mu, nu>} #{N in R : R/N = mu, N = nu} 1_R."""
    deg = model.add_degree(model.degree(mu), model.degree(nu))
    twist = vpow(-model.euler(mu, nu))
    out = []
    for R in model.labels_with(deg):
        count = model.sub_counts(R).get((mu, nu), 0)
        if count:
            out.append((R, twist * count))
    return tuple(out)


def hall_product(a: HallElem, b: HallElem) -> HallElem:
    """(f g)(R) = sum_{N in R} v^{-<R/N, N>} f(R/N) g(N)."""
    a._same(b)
    out: dict = {}
    for mu, ca in a.terms.items():
        for nu, cb in b.terms.items():
            for R, c in _basis_product(a.model, mu, nu):
                out[R] = out.get(R, ZERO) + ca * cb * c
    return HallElem(a.model, out)


def hall_number(lam, mu, nu, model) -> int:
    """g^lam_{mu nu}: submodules N of lam with N = nu and quotient mu."""
    if model.degree(lam) != model.add_degree(model.degree(mu), model.degree(nu)):
        return 0
    return model.sub_counts(lam).get((mu, nu), 0)


def enumerate_submodules(label, model) -> list[dict]:
    """Every submodule of the module of the given type, with its sub and quotient types."""
    out = []
    if isinstance(model, DVRModel):
        M = DVRModule(label, model.l)
        for H in M.submodules():
            quot, sub = M.classify(H)
            out.append({"order": len(H), "sub": sub, "quotient": quot})
    else:
        R = QuiverRep.from_multisegment(label, model.l)
        for U in R.submodules():
            quot, sub = R.classify(U)
            out.append({"dim": len(U), "sub": sub, "quotient": quot})
    return out


def aut_count(label, model) -> int:
    return model.aut_count(label)


def euler(a, b, model) -> int:
    return model.euler(a, b)


def equal_at_l(a: HallElem, b: HallElem) -> bool:
    """Equality once v^2 = 1/l; Hall numbers are integers in l, not formal in v."""
    a._same(b)
    diff = a - b
    return all(c.at_l(a.model.l) == (0, 0) for c in diff.terms.values())
