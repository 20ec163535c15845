from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahall.ktheory import KClass
from parahall.lattice import (
    GAElem,
    Lattice,
    LatticeError,
    Weights,
    gamma_factor,
    lattice_from_multidegree,
    multidegree_of_lattice,
    pi,
)
from parahall.scalars import ONE, v

W2 = Weights.of(2)
W3 = Weights.of(3)
W23 = Weights.of(2, 3)


def test_projection_of_multiples():
    assert pi(Lattice.make(W2, 3, [0])) == (0,)
    # 3 x_p = c + x_p at weight 2
    x = Lattice.make(W2, 0, [3])
    assert x == Lattice(1, (1,))
    assert pi(x) == (1,)
    assert pi(x.sub(x, W2)) == (0,)


def test_weights_validation():
    with pytest.raises(LatticeError):
        Weights(("p", "p"), (2, 2))
    with pytest.raises(LatticeError):
        Weights((), ())
    assert Weights.from_json(W23.to_json()) == W23


def test_multidegree_to_lattice():
    assert lattice_from_multidegree(KClass.make(W2, 1, 5)) == Lattice(5, (0,))
    assert lattice_from_multidegree(KClass.make(W2, 1, 0, [[1]])) == Lattice(0, (1,))
    assert lattice_from_multidegree(KClass.make(W3, 1, 0, [[0, 1]])) == Lattice(0, (2,))
    with pytest.raises(LatticeError):
        lattice_from_multidegree(KClass.make(W2, 1, 0, [[2]]))
    with pytest.raises(LatticeError):
        lattice_from_multidegree(KClass.make(W2, 2, 0))


lattices = st.builds(
    lambda d, a, b: Lattice.make(W23, d, [a, b]),
    st.integers(-5, 5),
    st.integers(-6, 6),
    st.integers(-6, 6),
)


@settings(max_examples=80, deadline=None)
@given(lattices, lattices, lattices)
def test_lattice_group_laws(a, b, c):
    assert a.add(b, W23) == b.add(a, W23)
    assert a.add(b, W23).add(c, W23) == a.add(b.add(c, W23), W23)
    assert a.sub(a, W23) == Lattice.zero(W23)
    assert a.add(b, W23).rational_degree(W23) == a.rational_degree(W23) + b.rational_degree(W23)


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_multidegree_roundtrip(x):
    assert lattice_from_multidegree(multidegree_of_lattice(x, W23), W23) == x


def test_group_algebra_relations():
    tp = GAElem.t_p(W2, 0)
    t = GAElem.monomial(W2, Lattice(1, (0,)))
    assert tp * tp == t
    assert tp * GAElem.t_p(W2, 0, -1) == GAElem.one(W2)
    assert (tp + t) * tp == t + t * tp


def test_gamma_factor_values():
    assert gamma_factor(W2, (0,)) == GAElem.one(W2)
    one, tp = GAElem.one(W2), GAElem.t_p(W2, 0)
    assert gamma_factor(W2, (1,)) == one.scale(v) + tp.scale(ONE - v * v)
    # the trivial point contributes the factor 1
    one23, t1 = GAElem.one(W23), GAElem.t_p(W23, 0)
    assert gamma_factor(W23, (1, 0)) == one23.scale(v) + t1.scale(ONE - v * v)
    assert gamma_factor(W23, (2, 3)) == one23


def test_rational_degree():
    assert Lattice.make(W23, 1, [1, 2]).rational_degree(W23) == 1 + Fraction(1, 2) + Fraction(2, 3)
