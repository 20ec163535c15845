import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import T, V, sym_equal, to_sympy
from parahall.curve import Curve
from parahall.lattice import Lattice, Weights
from parahall.scalars import ONE, vpow
from parahall.shuffle import (
    ShufElem,
    ShuffleError,
    TruncPolicy,
    WindowSaturationError,
    deconcat,
    enumerate_shuffles,
    generator,
    graded_span_dim,
    min_height,
    restrict,
    shuffle_mul,
    shuffle_product,
    total_degree,
    unweighted_mul,
)
from parahall.symmetric import (
    LPoly,
    SymCapacityError,
    SymElem,
    span_rank,
    sym_generator,
    sym_mul,
    symmetrize,
)

W1 = Weights.of(1)
W2 = Weights.of(2)
W23 = Weights.of(2, 3)
G0 = Curve(0)
G1 = Curve(1, [-1])


def _h_oracle(curve, N):
    """h(t) = v^(2g-2) P(t)(1 - v^2 t) / (P(v^2 t)(1 - l t)), expanded by sympy."""
    P = sum((to_sympy(p) * T**i for i, p in enumerate(curve.numerator())), sympy.Integer(0))
    h = V ** (2 * curve.genus - 2) * P * (1 - V**2 * T) / (P.subs(T, V**2 * T) * (1 - T / V**2))
    s = sympy.series(h, T, 0, N + 1).removeO()
    return [sympy.simplify(s.coeff(T, k)) for k in range(N + 1)]


def _exponents(key, W):
    return tuple(d + sum(Fraction(x, w) for x, w in zip(xs, W.weights)) for d, xs in key)


def _by_exponent(elem):
    out = {}
    for k, c in elem.stripped().items():
        e = _exponents(k, elem.weights)
        out[e] = out.get(e, 0) + to_sympy(c)
    return {k: c for k, c in out.items() if sympy.simplify(c) != 0}


def _two_gen_oracle(curve, W, a, x, b, y, N):
    """t1^A t2^B + sum_k h_k (t1/t2)^k Gamma(t1/t2) t1^B t2^A, with Gamma read off y - x."""
    hk = _h_oracle(curve, N)
    A = a + sum(Fraction(xi, w) for xi, w in zip(x, W.weights))
    B = b + sum(Fraction(yi, w) for yi, w in zip(y, W.weights))
    out = {(A, B): sympy.Integer(1)}
    # Gamma factor: v + (1 - v^2) (t1/t2)^(move/w) at each point with move = y - x mod w
    gamma = [(sympy.Integer(1), Fraction(0))]
    for xi, yi, w in zip(x, y, W.weights):
        m = (yi - xi) % w
        if m:
            gamma = [(c * V, s) for c, s in gamma] + [(c * (1 - V**2), s + Fraction(m, w)) for c, s in gamma]
    for k, h in enumerate(hk):
        for c, s in gamma:
            key = (B + k + s, A - k - s)
            out[key] = out.get(key, 0) + h * c
    return {k: c for k, c in out.items() if sympy.simplify(c) != 0}


def _same(d1, d2):
    if set(d1) != set(d2):
        return False
    return all(sympy.simplify(d1[k] - d2[k]) == 0 for k in d1)


# -- permutations -------------------------------------------------------------------


def test_shuffle_counts():
    assert len(enumerate_shuffles(1, 1)) == 2
    assert len(enumerate_shuffles(2, 1)) == 3
    assert len(enumerate_shuffles(2, 2)) == 6
    ident, swap = enumerate_shuffles(1, 1)
    assert ident.inversions == ()
    assert swap.inversions == ((0, 1),)
    assert all(p.is_shuffle() for p in enumerate_shuffles(3, 2))


# -- generators and products --------------------------------------------------------


def test_generator_shape():
    g = generator(W1, G0, 0)
    assert g.to_json()["terms"][0]["exps"] == [0]
    g = generator(W2, G0, -2, (1,))
    assert list(g.terms) == [((-2, (1,), (1,)),)]
    assert total_degree(next(iter(g.terms)), W2) == Lattice(-2, (1,))


def test_product_of_two_plain_generators_frozen():
    # h_0 = v^-2 at genus 0
    p = shuffle_mul(generator(W1, G0, 0, policy=TruncPolicy(3)), generator(W1, G0, 1, policy=TruncPolicy(3)))
    s = p.stripped()
    assert s[((0, (0,)), (1, (0,)))] == ONE
    assert s[((1, (0,)), (0, (0,)))] == vpow(-2)


def test_swapped_term_carries_gamma():
    # generator(0, 1) * generator(0, 0) at weight 2: the swapped word t1^0 t2^(1/2) picks up
    # h_0 (v + (1 - v^2) t_{1,p} t_{2,p}^-1); the second branch lands back on t1^(1/2) t2^0
    p = shuffle_mul(generator(W2, G0, 0, (1,), TruncPolicy(0)), generator(W2, G0, 0, (0,), TruncPolicy(0)))
    s = p.stripped()
    assert s == {
        ((0, (0,)), (0, (1,))): vpow(-1),
        ((0, (1,)), (0, (0,))): ONE + vpow(-2) * (ONE - vpow(2)),
    }


@pytest.mark.parametrize("curve", [G0, G1, Curve(2, [1, 2])])
@pytest.mark.parametrize("W", [W1, W2, W23])
def test_two_generator_products_match_oracle(curve, W):
    rng = random.Random(11)
    N = 3
    for _ in range(3):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        x = tuple(rng.randrange(w) for w in W.weights)
        y = tuple(rng.randrange(w) for w in W.weights)
        p = shuffle_mul(generator(W, curve, a, x, TruncPolicy(N)), generator(W, curve, b, y, TruncPolicy(N)))
        assert _same(_by_exponent(p), _two_gen_oracle(curve, W, a, x, b, y, N))


def test_h_coefficients_match_oracle():
    for curve in (G0, G1):
        p = shuffle_mul(generator(W1, curve, 0, policy=TruncPolicy(4)), generator(W1, curve, 0, policy=TruncPolicy(4)))
        s = p.stripped()
        hk = _h_oracle(curve, 4)
        # t1^0 t2^0 collects 1 + h_0; t1^k t2^-k collects h_k
        assert sym_equal(s[((0, (0,)), (0, (0,)))], 1 + hk[0])
        for k in range(1, 5):
            assert sym_equal(s[((k, (0,)), (-k, (0,)))], hk[k])


gens = st.tuples(st.integers(-2, 2), st.integers(0, 1), st.integers(0, 2))


@settings(max_examples=12, deadline=None)
@given(st.lists(gens, min_size=3, max_size=3), st.sampled_from([G0, G1]))
def test_associativity_in_saturated_window(raw, curve):
    N = 4
    raw = [(d, (x, y)) for d, x, y in raw]
    gs = [generator(W23, curve, d, x, TruncPolicy(N)) for d, x in raw]
    left = shuffle_mul(shuffle_mul(gs[0], gs[1]), gs[2])
    right = shuffle_mul(gs[0], shuffle_mul(gs[1], gs[2]))
    hmax = min_height(raw, W23) + N
    assert restrict(left, hmax) == restrict(right, hmax)


@settings(max_examples=12, deadline=None)
@given(st.lists(gens, min_size=3, max_size=3))
def test_grading_is_conserved(raw):
    raw = [(d, (x, y)) for d, x, y in raw]
    gs = [generator(W23, G1, d, x, TruncPolicy(3)) for d, x in raw]
    prod = shuffle_product(gs, TruncPolicy(3))
    want = Lattice.zero(W23)
    for d, x in raw:
        want = want.add(Lattice.make(W23, d, x), W23)
    assert prod.total_degrees() == {want}


def test_residue_reading_gamma_is_not_associative():
    N = 4
    raw = [(0, (1,)), (0, (0,)), (0, (1,))]
    found = False
    for perm in itertools.permutations(raw):
        gs = [generator(W2, G0, d, x, TruncPolicy(N)) for d, x in perm]
        left = shuffle_mul(shuffle_mul(gs[0], gs[1], gamma_mode="residue"), gs[2], gamma_mode="residue")
        right = shuffle_mul(gs[0], shuffle_mul(gs[1], gs[2], gamma_mode="residue"), gamma_mode="residue")
        hmax = min_height(list(perm), W2) + N
        found |= restrict(left, hmax) != restrict(right, hmax)
    assert found


def test_equal_residues_reduce_to_unweighted_product():
    for curve in (G0, G1):
        N = 4
        x = (1, 2)
        ds = [1, -1, 0]
        gs = [generator(W23, curve, d, x, TruncPolicy(N)) for d in ds]
        weighted = shuffle_product(gs, TruncPolicy(N)).stripped()
        plain = unweighted_mul(unweighted_mul({(1,): ONE}, {(-1,): ONE}, curve, N), {(0,): ONE}, curve, N)
        assert weighted == {tuple((d, x) for d in k): c for k, c in plain.items()}


def test_unit_and_json_roundtrip():
    u = ShufElem.unit(W2, G0, TruncPolicy(2))
    g = generator(W2, G0, 1, (1,), TruncPolicy(2))
    assert shuffle_mul(u, g) == g and shuffle_mul(g, u) == g
    p = shuffle_mul(g, generator(W2, G0, 0, (0,), TruncPolicy(2)))
    assert ShufElem.from_json(W2, G0, p.to_json()) == p


def test_generic_curve_is_rejected():
    g = Curve(1, generic=True)
    with pytest.raises(ShuffleError):
        shuffle_mul(generator(W1, g, 0), generator(W1, g, 0))


# -- deconcatenation ----------------------------------------------------------------


def test_deconcat_basic():
    e = ShufElem(W1, G0, {((2, (0,), (0,)), (5, (0,), (0,))): ONE})
    assert deconcat(e, 1, 1) == {(((2, (0,), (0,)),), ((5, (0,), (0,)),)): ONE}
    key = next(iter(e.terms))
    assert deconcat(e, 2, 0) == {(key, ()): ONE}
    with pytest.raises(ShuffleError):
        deconcat(e, 1, 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 1)), min_size=3, max_size=3))
def test_deconcat_coassociative(slots):
    key = tuple((d, (x,), (x,)) for d, x in slots)
    e = ShufElem(W2, G0, {key: ONE})
    via_left = {}
    for (a, b), c in deconcat(e, 2, 1).items():
        for (a1, a2), c2 in deconcat(ShufElem(W2, G0, {a: ONE}), 1, 1).items():
            via_left[(a1, a2, b)] = c * c2
    via_right = {}
    for (a, b), c in deconcat(e, 1, 2).items():
        for (b1, b2), c2 in deconcat(ShufElem(W2, G0, {b: ONE}), 1, 1).items():
            via_right[(a, b1, b2)] = c * c2
    assert via_left == via_right


# -- spans --------------------------------------------------------------------------


def test_span_of_single_generator():
    assert graded_span_dim(W1, G0, [[(0, (0,))]], 0, TruncPolicy(2)) == 1


def test_unsaturated_window_is_reported():
    with pytest.raises(WindowSaturationError):
        graded_span_dim(W1, G0, [[(0, (0,)), (0, (0,))]], 50, TruncPolicy(1))


def test_equal_residue_span_matches_unweighted():
    tuples = [[(a, (0,)), (1 - a, (0,))] for a in range(-1, 2)]
    plain = graded_span_dim(W1, G0, tuples, 3, TruncPolicy(4))
    lifted = graded_span_dim(W2, G0, [[(d, (1,)) for d, _ in t] for t in tuples], 3, TruncPolicy(4))
    assert plain == lifted == 2


# -- the symmetrized algebra --------------------------------------------------------


def _g_oracle(curve):
    """g(z) = z^(g-1) Z(1/z), where Z(t) = zeta(t)(1 - l t)(1 - l/t), built directly in sympy."""
    P = sum((to_sympy(p) * T**i for i, p in enumerate(curve.numerator())), sympy.Integer(0))
    L = V**-2
    zt = P / ((1 - T) * (1 - L * T)) * (1 - L * T) * (1 - L / T)
    return sympy.simplify(T ** (curve.genus - 1) * zt.subs(T, 1 / T))


def test_symmetrize_one_variable_is_identity():
    p = LPoly.monomial((3,))
    assert symmetrize(p, G0).poly == p


def test_symmetrize_two_variables_matches_oracle():
    t1, t2 = sympy.symbols("t1 t2")
    for curve in (G0, G1):
        g = _g_oracle(curve)
        want = g.subs(T, t1 / t2) + g.subs(T, t2 / t1)
        got = symmetrize(LPoly.one(2), curve)
        expr = sum(to_sympy(c) * t1 ** e[0] * t2 ** e[1] for e, c in got.poly.terms.items())
        assert sympy.simplify(expr - want) == 0
        assert got.poly.is_symmetric()


def test_sym_mul_unit_and_associativity():
    for curve in (G0, G1):
        u = SymElem.unit(curve)
        a, b, c = sym_generator(curve, 1), sym_generator(curve, -1), sym_generator(curve, 0)
        assert sym_mul(u, a) == a
        assert sym_mul(sym_mul(a, b), c) == sym_mul(a, sym_mul(b, c))
        assert sym_mul(a, a).poly.is_symmetric()


def test_sym_capacity():
    x = sym_mul(sym_generator(G0, 0), sym_generator(G0, 0))
    with pytest.raises(SymCapacityError):
        sym_mul(x, x)


def test_symmetrized_and_shuffle_spans_agree():
    for curve in (G0, G1):
        for n in (0, 1):
            pairs = [(a, n - a) for a in range(-1, 2)]
            sym = span_rank([sym_mul(sym_generator(curve, a), sym_generator(curve, b)) for a, b in pairs])
            shuf = graded_span_dim(W1, curve, [[(a, (0,)), (b, (0,))] for a, b in pairs], 3, TruncPolicy(4))
            assert sym == shuf
