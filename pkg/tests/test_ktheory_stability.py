import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahall.ktheory import (
    INF,
    ChiWeights,
    KClass,
    KClassError,
    basis_s,
    basis_u,
    chi_bar,
    compose,
    decompose,
    euler_form,
    omega_class,
    omega_twist,
    parabolic_degree,
    random_class,
    rr_average_check,
    shift_class,
    slope,
    sym_form,
    twist_class,
)
from parahall.lattice import Lattice, Weights
from parahall.oracle import Multisegment, model_for, torsion_class
from parahall.scalars import ONE, vpow
from parahall.shuffle import WindowSaturationError
from parahall.stability import (
    HNType,
    Polygon,
    StabilityError,
    Window,
    Word,
    enumerate_hn_types,
    hn_reineke_identity_check,
    hn_word,
    letters,
    lower_hull,
    polygon_of,
    reineke_expand,
    reineke_expand_naive,
    reineke_tuples,
)

W1 = Weights.of(1)
W2 = Weights.of(2)
W3 = Weights.of(3)
W23 = Weights.of(2, 3)


def classes(W, rank=(0, 3), bundle=False):
    return st.builds(lambda seed: random_class(W, random.Random(seed), rank, bundle=bundle), st.integers(0, 10**6))


# -- the generator table ------------------------------------------------------------


@pytest.mark.parametrize("g", [0, 1, 2])
def test_table_rows_with_u(g):
    for W in (W2, W3, W23):
        u = basis_u(W)
        assert euler_form(u, u, g) == 1 - g
        for p, w in enumerate(W.weights):
            for i in range(w):
                s = basis_s(W, i, p)
                assert euler_form(u, s, g) == (i == 0)
                assert euler_form(s, u, g) == -(i == 1 % w)


def test_torsion_rows_physical_and_printed():
    for i, k in itertools.product(range(3), repeat=2):
        a, b = basis_s(W3, i, 0), basis_s(W3, k, 0)
        assert euler_form(a, b, 0) == (i == k) - ((i - k - 1) % 3 == 0)
        assert euler_form(a, b, 0, orientation="printed") == (i == k) - ((k - i - 1) % 3 == 0)
        assert euler_form(a, b, 0, orientation="printed") == euler_form(b, a, 0)
    # different points do not pair
    assert euler_form(basis_s(W23, 1, 0), basis_s(W23, 1, 1), 0) == 0


def test_torsion_pairing_matches_quiver_representations():
    # the torsion classes at a point of weight n are nilpotent reps of the cyclic quiver C_n;
    # the Euler form counted there (dim Hom - dim Ext over F_2) is an independent oracle
    for n in (2, 3):
        model = model_for("quiver", 2, n)
        for (i, k), (j, m) in itertools.product(itertools.product(range(n), range(1, 3)), repeat=2):
            a, b = torsion_class(n, i, k), torsion_class(n, j, m)
            want = model.euler(Multisegment.segment(n, -i, k), Multisegment.segment(n, -j, m))
            assert euler_form(a, b, 0) == want


def test_symmetrized_values():
    assert sym_form(basis_u(W2), basis_u(W2), 0) == 2
    assert sym_form(basis_s(W3, 0, 0), basis_s(W3, 1, 0), 0) == -1


@settings(max_examples=60, deadline=None)
@given(classes(W23), classes(W23), st.integers(0, 2))
def test_symmetric_form_is_symmetric_and_base_independent(a, b, g):
    assert sym_form(a, b, g) == sym_form(b, a, g)
    assert euler_form(a, b, g, base=1) == euler_form(a, b, g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 2))
def test_constant_classes_give_riemann_roch(r, rr, d, e, g):
    for W in (W2, W23):
        a, b = KClass.constant(W, r, d), KClass.constant(W, rr, e)
        assert euler_form(a, b, g) == (1 - g) * r * rr + r * e - d * rr


@settings(max_examples=60, deadline=None)
@given(classes(W23), classes(W23))
def test_decompose_compose_roundtrip(a, b):
    assert compose(W23, *decompose(a)) == a
    assert compose(W23, *decompose(a, base=1)) == a
    assert decompose(a + b)[1] == {k: x + y for (k, x), y in zip(decompose(a)[1].items(), decompose(b)[1].values())}


# -- twists -------------------------------------------------------------------------


def test_twist_by_w_eps_is_degree_one():
    u = basis_u(W2)
    assert shift_class(u, 0, 2) == twist_class(u, Lattice(1, (0,)))
    assert shift_class(u, 0, 1) == KClass.make(W2, 1, 0, [[1]])
    assert twist_class(u, Lattice.zero(W2)) == u
    assert omega_class(W23, 1, 0) == basis_u(W23)


@settings(max_examples=60, deadline=None)
@given(classes(W23), classes(W23), st.integers(-3, 3), st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 1))
def test_twists_are_isometries(a, b, d, x, y, g):
    t = Lattice.make(W23, d, [x, y])
    assert euler_form(twist_class(a, t), twist_class(b, t), g) == euler_form(a, b, g)
    assert euler_form(omega_twist(a, g, 1), omega_twist(b, g, 1), g) == euler_form(a, b, g)


# -- degrees and Riemann-Roch -------------------------------------------------------


def test_parabolic_degree_and_slope():
    assert parabolic_degree(KClass.make(W2, 1, 0, [[1]])) == Fraction(1, 2)
    assert slope(KClass.constant(W23, 2, 3)) == Fraction(3, 2)
    assert parabolic_degree(KClass.constant(W23, 2, 3)) == 3
    assert slope(basis_s(W2, 1, 0)) == INF
    with pytest.raises(KClassError):
        parabolic_degree(KClass.make(W2, 0, -1))
    with pytest.raises(KClassError):
        ChiWeights(((Fraction(1, 3), Fraction(1, 2)),))


@pytest.mark.parametrize("W", [W2, W3, W23, Weights.of(2, 2, 3)])
@pytest.mark.parametrize("g", [0, 1, 2])
def test_par_omega(W, g):
    assert parabolic_degree(omega_class(W, g, 1)) == 2 * g - 2 + sum(1 - Fraction(1, w) for w in W.weights)


def test_rr_average_frozen_case():
    u = basis_u(W2)
    ok, lhs, rhs = rr_average_check(u, u, 0)
    assert ok and lhs == rhs == chi_bar(W2, 0)


@settings(max_examples=80, deadline=None)
@given(st.data(), st.sampled_from([W2, W3, W23]), st.integers(0, 1))
def test_rr_average_identity(data, W, g):
    a = data.draw(classes(W))
    b = data.draw(classes(W))
    assert rr_average_check(a, b, g)[0]


def test_rr_average_torsion_pairs():
    a, b = basis_s(W2, 0, 0), basis_s(W2, 1, 0)
    ok, lhs, rhs = rr_average_check(a, b, 0)
    assert ok and lhs == rhs == 0


@settings(max_examples=60, deadline=None)
@given(classes(W23, (1, 3), bundle=True), st.integers(0, 1))
def test_hom_ext_against_torsion_generators(e, g):
    # pairing a bundle with the skyscraper at slot j reads off a jump of the multidegree
    for p, w in enumerate(W23.weights):
        seq = e.seq(p)

        def full(i):
            return seq[i % w] + (i // w) * e.rank

        for j in range(w):
            s = basis_s(W23, -j, p)
            assert euler_form(e, s, g) == full(j) - full(j - 1)
            assert euler_form(s, e, g) == -(full(j + 1) - full(j))
    T = KClass.constant(W23, 0, 2)
    assert (euler_form(e, T, g), euler_form(T, e, g)) == (2 * e.rank, -2 * e.rank)


# -- HN types -----------------------------------------------------------------------


def test_torsion_has_one_type():
    a = KClass.make(W2, 0, 1, [[1]])
    types = enumerate_hn_types(a, Window(-1, 1, 2))
    assert types == [HNType((a,))]


def test_rank_one_types_without_marked_weight():
    d = 1
    a = KClass.constant(W1, 1, d)
    types = enumerate_hn_types(a, Window(-2, 2, 3))
    want = {HNType((a,))} | {HNType((KClass.constant(W1, 1, d - k), KClass.constant(W1, 0, k))) for k in (1, 2, 3)}
    assert set(types) == want


def test_window_excluding_alpha():
    a = KClass.constant(W1, 1, 3)
    assert HNType((a,)) not in enumerate_hn_types(a, Window(-1, 1, 4))


def test_hn_word_coefficients():
    a1, a2 = KClass.constant(W2, 1, 0), basis_s(W2, 1, 0)
    assert hn_word(HNType((a1,)), 0) == Word.letter(a1)
    w = hn_word(HNType((a1, a2)), 1)
    assert w.terms == {(a1, a2): vpow(euler_form(a1, a2, 1))}
    with pytest.raises(StabilityError):
        hn_word(HNType((a2, a1)), 0)


def test_letters_are_in_window():
    win = Window(-1, 1, 1)
    ls = letters(W2, 2, win)
    assert all(win.contains(a) for a in ls)
    assert all(a.bundle_compatible() for a in ls if a.rank)


# -- Reineke inversion --------------------------------------------------------------


def test_reineke_torsion_is_itself():
    a = KClass.make(W2, 0, 1, [[0]])
    assert reineke_expand(a, Window(-1, 1, 1), 0) == Word.letter(a)


def test_reineke_tuples_rank_one_with_one_torsion_step():
    a = KClass.constant(W1, 1, 0)
    tuples = reineke_tuples(a, Window(-1, 1, 1))
    assert set(tuples) == {(a,), (KClass.constant(W1, 1, -1), KClass.constant(W1, 0, 1))}
    # the one-block and two-block cuts of the second tuple cancel
    assert reineke_expand(a, Window(-1, 1, 1), 0) == Word.letter(a)


@pytest.mark.parametrize(
    "alpha,window",
    [
        (KClass.make(W2, 1, 0, [[0]]), Window(-1, 1, 1)),
        (KClass.make(W2, 1, 0, [[1]]), Window(-1, 2, 1)),
        (KClass.make(W2, 2, 0, [[1]]), Window(-1, 1, 1)),
        (KClass.make(W3, 1, 0, [[0, 1]]), Window(-1, 1, 1)),
    ],
)
def test_fast_reineke_matches_explicit_cut_sum(alpha, window):
    for k in (1, 2):
        for g in (0, 1):
            assert reineke_expand(alpha, window, g, k) == reineke_expand_naive(alpha, window, g, k)


def test_reineke_coefficients_are_signed_powers():
    word = reineke_expand(KClass.make(W2, 2, 0, [[1]]), Window(-1, 1, 1), 0)
    assert all(c.signed_v_power() is not None for c in word.terms.values())


@pytest.mark.parametrize(
    "alpha",
    [KClass.make(W2, 0, 1, [[1]]), KClass.make(W2, 1, 0, [[1]]), KClass.make(W2, 2, 0, [[0]]), KClass.make(W2, 2, 1, [[2]])],
)
def test_hn_reineke_identity(alpha):
    mu = slope(alpha)
    win = Window(-1, 1, 2) if mu == INF else Window(mu - 1, mu + 1, 2)
    ok, result, expected = hn_reineke_identity_check(alpha, win, 0)
    assert ok
    assert result == expected


def test_tail_from_k1_fails_somewhere():
    # the tail condition imposed on the whole class as well kills the leading term
    a = KClass.make(W2, 1, 0, [[0]])
    win = Window(-1, 1, 2)
    assert hn_reineke_identity_check(a, win, 0, k_start=2)[0]
    assert not hn_reineke_identity_check(a, win, 0, k_start=1)[0]


def test_widened_window_changes_nothing_inside():
    a = KClass.make(W2, 2, 0, [[1]])
    win = Window(-1, 1, 1)
    wide = win.widen()
    assert wide.contains(a) and all(wide.contains(x) for x in letters(W2, 2, win))
    inner = reineke_expand(a, win, 0)
    assert reineke_expand(a, wide, 0).restrict(win) == inner


def test_unsaturated_window_is_reported(monkeypatch):
    # a widening that adds letters of the same class must be caught
    a = KClass.make(W2, 1, 0, [[1]])
    win = Window(-1, 1, 1)
    monkeypatch.setattr(Window, "widen", lambda self: Window(self.lo - 1, self.hi + 1, self.torsion_bound + 1))
    monkeypatch.setattr(Word, "restrict", lambda self, window, chi=None: Word({(a, a): ONE}))
    with pytest.raises(WindowSaturationError):
        hn_reineke_identity_check(a, win, 0)


def test_bad_inputs():
    with pytest.raises(StabilityError):
        enumerate_hn_types(KClass.make(W2, 0, -1), Window(-1, 1))
    with pytest.raises(StabilityError):
        Window(1, 0)


# -- polygons -----------------------------------------------------------------------


def test_polygon_of_single_class():
    a = KClass.make(W2, 2, 1, [[2]])
    p = polygon_of(HNType((a,)))
    assert p.vertices == ((0, 0), (2, parabolic_degree(a)))


def test_polygon_convex_iff_slopes_increase():
    a, b = KClass.constant(W2, 1, 0), KClass.constant(W2, 1, 2)
    assert polygon_of(HNType((a, b))).is_convex()
    assert not polygon_of(HNType((b, a))).is_convex()


def test_lower_hull():
    p = polygon_of(HNType((KClass.constant(W2, 1, 0), KClass.constant(W2, 1, 2))))
    assert lower_hull([p]) == p
    q = Polygon(((0, 0), (1, 5), (2, 2)))
    assert lower_hull([p, q]).vertices == ((0, 0), (1, 0), (2, 2))
