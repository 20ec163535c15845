"""The acceptance criteria as named, deterministic check suites.

Each ``criterion_k`` returns a JSON-ready dict with a boolean "pass", the
individual named checks and enough detail to see what was compared.  Nothing
here records timings, so two runs produce identical output.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .curve import (
    Curve,
    functional_equation_check,
    h_g_identity_check,
    point_count,
    xi_coeffs,
    zeta_series,
)
from .ktheory import (
    KClass,
    basis_s,
    basis_u,
    euler_form,
    omega_class,
    omega_twist,
    parabolic_degree,
    random_class,
    rr_average_check,
    slope,
    twist_class,
)
from .lattice import Lattice, Weights, lattice_from_multidegree, multidegree_of_lattice
from .oracle import (
    HallElem,
    KINDS,
    Multisegment,
    Partition,
    TPoly,
    bracket_constants,
    exp_convert,
    green_pairing_T0,
    hall_number,
    hl_correspondence_check,
    model_for,
    multisegments,
    partitions,
    verify_cyclic_bracket,
    verify_T_shift,
)
from .scalars import ONE, ZERO, Scalar, vpow
from .series import Series
from .shuffle import (
    TruncPolicy,
    generator,
    graded_span_dim,
    min_height,
    restrict,
    shuffle_mul,
    total_degree,
    unweighted_mul,
)
from .stability import Window, hn_reineke_identity_check
from .symmetric import span_rank, sym_generator, sym_mul, SymElem

__all__ = ["CRITERIA", "run_criterion", "run_all", "sample_curves"]

SEED = 20240601


def sample_curves() -> list[Curve]:
    """Curves with l left symbolic (v^-2), one per shape used in the checks."""
    return [
        Curve(0),
        Curve(1, [-1]),
        Curve(1, [0]),
        Curve(1, [Fraction(1, 2)]),
        Curve(2, [1, 3]),
        Curve(2, [-2, 0]),
    ]


def _summary(number: int, title: str, checks: dict, details: dict) -> dict:
    return {
        "criterion": number,
        "title": title,
        "pass": all(checks.values()),
        "checks": checks,
        "details": details,
    }


# -- 1 ----------------------------------------------------------------------------


def criterion_1() -> dict:
    checks = {}
    for c in sample_curves():
        tag = f"g={c.genus} p={[str(x) for x in c.free]}"
        checks[f"functional equation {tag}"] = functional_equation_check(c)[0]
        checks[f"h g = g(1/t) {tag}"] = h_g_identity_check(c)[0]
    generic = Curve(2, generic=True)
    checks["functional equation generic g=2"] = functional_equation_check(generic)[0]
    xi = xi_coeffs(Curve(0), 10)
    checks["xi_0 = 1"] = xi[0] == ONE
    checks["g=0 xi_k = v^-2k (1 - v^4), k=1..10"] = all(
        xi[k] == vpow(-2 * k) * (ONE - vpow(4)) for k in range(1, 11)
    )
    return _summary(1, "zeta kernel", checks, {"xi_genus0": [str(x) for x in xi.coeffs]})


# -- 2 ----------------------------------------------------------------------------


def _newton_series(c: Curve, order: int) -> Series:
    logs = [ZERO] + [point_count(c, k) * Fraction(1, k) for k in range(1, order + 1)]
    return Series(logs, order).exp()


def criterion_2() -> dict:
    checks = {}
    g0 = Curve(0)
    checks["g=0 counts are 1 + l^k, k=1..8"] = all(point_count(g0, k) == ONE + vpow(-2 * k) for k in range(1, 9))
    for c in sample_curves():
        tag = f"g={c.genus} p={[str(x) for x in c.free]}"
        checks[f"exp(sum N_k t^k / k) = zeta to order 8, {tag}"] = _newton_series(c, 8) == zeta_series(c, 8)
    numeric = Curve.from_numerator(1, [1, 0, 2], l=2)
    counts = [str(point_count(numeric, k).at_l_rational(2)) for k in (1, 2, 3)]
    checks["P = 1 + 2t^2 at l = 2 gives 3, 9"] = counts[:2] == ["3", "9"]
    return _summary(2, "point counts", checks, {"P=1+2t^2,l=2": counts})


# -- 3 ----------------------------------------------------------------------------

_SHUFFLE_CONFIGS = [
    (Curve(0), Weights.of(2)),
    (Curve(0), Weights.of(3)),
    (Curve(0), Weights.of(2, 3)),
    (Curve(1, [-1]), Weights.of(2)),
    (Curve(1, [-1]), Weights.of(3)),
    (Curve(1, [-1]), Weights.of(2, 3)),
]


def _random_gens(rng: random.Random, W: Weights, k: int, equal: bool = False):
    if equal:
        x = tuple(rng.randrange(w) for w in W.weights)
        return [(rng.randint(-2, 2), x) for _ in range(k)]
    return [(rng.randint(-2, 2), tuple(rng.randrange(w) for w in W.weights)) for _ in range(k)]


def _graded(prod, parts, W: Weights) -> bool:
    want = Lattice.zero(W)
    for d, x in parts:
        want = want.add(Lattice.make(W, d, x), W)
    return all(total_degree(k, W) == want for k in prod.terms)


def criterion_3(triples_per_config: int = 9, N: int = 6) -> dict:
    rng = random.Random(SEED + 3)
    pol = TruncPolicy(N)
    assoc_ok = grading_ok = True
    n_triples = 0
    n_products = 0
    saturated = True
    for idx, (curve, W) in enumerate(_SHUFFLE_CONFIGS):
        for trial in range(triples_per_config):
            raw = _random_gens(rng, W, 3)
            gs = [generator(W, curve, d, x, pol) for d, x in raw]
            ab = shuffle_mul(gs[0], gs[1])
            bc = shuffle_mul(gs[1], gs[2])
            left = shuffle_mul(ab, gs[2])
            right = shuffle_mul(gs[0], bc)
            n_products += 4
            grading_ok &= _graded(ab, raw[:2], W) and _graded(bc, raw[1:], W)
            grading_ok &= _graded(left, raw, W) and _graded(right, raw, W)
            hmax = min_height(raw, W) + N
            assoc_ok &= restrict(left, hmax) == restrict(right, hmax)
            n_triples += 1
            if trial == 0:
                # the window is saturated: one more order leaves it unchanged
                big = TruncPolicy(N + 1)
                gb = [generator(W, curve, d, x, big) for d, x in raw]
                left_big = shuffle_mul(shuffle_mul(gb[0], gb[1]), gb[2])
                saturated &= restrict(left_big, hmax) == restrict(left, hmax)
    # Gamma = 1: equal residues reproduce the unweighted product
    spec_ok = True
    n_spec = 0
    for curve, W in _SHUFFLE_CONFIGS:
        for _ in range(3):
            raw = _random_gens(rng, W, 3, equal=True)
            gs = [generator(W, curve, d, x, pol) for d, x in raw]
            weighted = shuffle_mul(shuffle_mul(gs[0], gs[1]), gs[2]).stripped()
            plain = unweighted_mul(unweighted_mul({(raw[0][0],): ONE}, {(raw[1][0],): ONE}, curve, N), {(raw[2][0],): ONE}, curve, N)
            x = raw[0][1]
            lifted = {tuple((d, x) for d in k): c for k, c in plain.items()}
            spec_ok &= weighted == lifted
            n_spec += 1
    checks = {
        f"associativity on {n_triples} triples (N={N})": assoc_ok,
        "window saturation (N+1 agrees in the window)": saturated,
        f"grading conservation on {n_products} products": grading_ok,
        f"equal residues match unweighted S_h ({n_spec} triples)": spec_ok,
    }
    return _summary(3, "weighted shuffle", checks, {"configs": [[c.genus, list(W.weights)] for c, W in _SHUFFLE_CONFIGS]})


# -- 4 ----------------------------------------------------------------------------


def criterion_4() -> dict:
    checks = {}
    details = {}
    curves = [Curve(0), Curve(1, [-1]), Curve(1, [0])]
    for c in curves:
        tag = f"g={c.genus} p={[str(x) for x in c.free]}"
        unit = SymElem.unit(c)
        ok = True
        for a, b, e in [(0, 1, -1), (1, 1, 0), (-1, 2, 0)]:
            x, y, z = (sym_generator(c, d) for d in (a, b, e))
            ok &= sym_mul(sym_mul(x, y), z) == sym_mul(x, sym_mul(y, z))
            ok &= sym_mul(unit, sym_mul(x, y)) == sym_mul(x, y) == sym_mul(sym_mul(x, y), unit)
        checks[f"sym_mul associativity r+s+u=3 {tag}"] = ok
    W = Weights.of(1)
    for c in curves:
        for n in (0, 1):
            pairs = [(a, n - a) for a in range(-1, 2)]
            a_rank = span_rank([sym_mul(sym_generator(c, a), sym_generator(c, b)) for a, b in pairs])
            s_rank = graded_span_dim(W, c, [[(a, (0,)), (b, (0,))] for a, b in pairs], 3, TruncPolicy(4))
            key = f"g={c.genus} p={[str(x) for x in c.free]} total degree {n}"
            details[key] = {"A_g": a_rank, "S_h": s_rank}
            checks[f"span ranks agree, {key}"] = a_rank == s_rank
    return _summary(4, "symmetrized algebra", checks, details)


# -- 5 ----------------------------------------------------------------------------


def _lemma_table(W: Weights, genus: int, orientation: str) -> dict:
    """Rows of the generator table that involve O^bullet."""
    u = basis_u(W)
    out = {"<O, O> = 1 - g": euler_form(u, u, genus, orientation=orientation) == 1 - genus}
    for p, w in enumerate(W.weights):
        for i in range(w):
            s = basis_s(W, i, p)
            out[f"<O, s_i> p={p} i={i}"] = euler_form(u, s, genus, orientation=orientation) == (1 if i == 0 else 0)
            out[f"<s_i, O> p={p} i={i}"] = euler_form(s, u, genus, orientation=orientation) == (-1 if i == 1 % w else 0)
    return out


def _ss_table(W: Weights, genus: int, orientation: str, transpose: bool) -> bool:
    ok = True
    for p, w in enumerate(W.weights):
        for q, wq in enumerate(W.weights):
            for i in range(w):
                for k in range(wq):
                    a, b = basis_s(W, i, p), basis_s(W, k, q)
                    if transpose:
                        a, b = b, a
                    printed = 0 if p != q else (i == k) - ((i - k + 1) % w == 0)
                    ok &= euler_form(a, b, genus, orientation=orientation) == printed
    return ok


def criterion_5(samples: int = 100) -> dict:
    rng = random.Random(SEED + 5)
    checks = {}
    details = {}
    for W in (Weights.of(2), Weights.of(3), Weights.of(2, 3)):
        for g in (0, 1):
            tag = f"w={list(W.weights)} g={g}"
            table = _lemma_table(W, g, "physical")
            checks[f"generator table, rows with O^bullet, {tag}"] = all(table.values())
            checks[f"generator table, torsion-torsion row up to transpose, {tag}"] = _ss_table(W, g, "physical", transpose=True)
            checks[f"generator table verbatim with the printed orientation, {tag}"] = _ss_table(W, g, "printed", transpose=False)
            details[f"verbatim torsion-torsion row under the default orientation, {tag}"] = _ss_table(W, g, "physical", transpose=False)
            base = twist = l252 = l253 = rt = const = True
            for _ in range(samples):
                a, b = random_class(W, rng), random_class(W, rng)
                base &= all(euler_form(a, b, g, base=q) == euler_form(a, b, g) for q in range(len(W)))
                x = Lattice.make(W, rng.randint(-3, 3), [rng.randrange(-4, 5) for _ in W.weights])
                twist &= euler_form(twist_class(a, x), twist_class(b, x), g) == euler_form(a, b, g)
                twist &= euler_form(omega_twist(a, g, 1), omega_twist(b, g, 1), g) == euler_form(a, b, g)
                e = random_class(W, rng, (1, 3), bundle=True)
                for p, w in enumerate(W.weights):
                    seq = e.seq(p)

                    def full(i, seq=seq, w=w):
                        return seq[i % w] + (i // w) * e.rank

                    for j in range(w):
                        s = basis_s(W, -j, p)
                        l252 &= euler_form(e, s, g) == full(j) - full(j - 1)
                        l252 &= euler_form(s, e, g) == -(full(j + 1) - full(j))
                d = rng.randint(1, 3)
                T = KClass.constant(W, 0, d)
                l253 &= euler_form(e, T, g) == e.rank * d and euler_form(T, e, g) == -e.rank * d
                line = random_class(W, rng, (1, 1), bundle=True)
                rt &= multidegree_of_lattice(lattice_from_multidegree(line), W) == line
                r1, r2 = rng.randint(0, 3), rng.randint(0, 3)
                d1, d2 = rng.randint(-4, 4), rng.randint(-4, 4)
                c1, c2 = KClass.constant(W, r1, d1), KClass.constant(W, r2, d2)
                const &= euler_form(c1, c2, g) == (1 - g) * r1 * r2 + r1 * d2 - d1 * r2
            checks[f"base-point independence, {tag}"] = base
            checks[f"twist and omega-twist isometry, {tag}"] = twist
            checks[f"Hom/Ext dimensions against torsion generators, {samples} bundle classes, {tag}"] = l252
            checks[f"Hom/Ext dimensions against constant torsion classes, {tag}"] = l253
            checks[f"constant classes give (1-g)rr' + re - dr', {tag}"] = const
            checks[f"line-bundle multidegree roundtrip, {tag}"] = rt
    return _summary(5, "Euler form", checks, details)


# -- 6 ----------------------------------------------------------------------------


def criterion_6(samples: int = 100) -> dict:
    rng = random.Random(SEED + 6)
    checks = {}
    details = {}
    for g in (0, 1):
        for W in (Weights.of(2), Weights.of(2, 3)):
            tag = f"g={g} w={list(W.weights)}"
            ok = True
            printed_fail = 0
            for _ in range(samples):
                a, b = random_class(W, rng), random_class(W, rng)
                ok &= rr_average_check(a, b, g)[0]
                printed_fail += not rr_average_check(a, b, g, printed_normalization=True)[0]
            checks[f"Riemann-Roch average on {samples} pairs, {tag}"] = ok
            details[f"pairs failing with the chi/w normalization, {tag}"] = printed_fail
            par = parabolic_degree(omega_class(W, g, 1))
            want = 2 * g - 2 + sum(1 - Fraction(1, w) for w in W.weights)
            checks[f"Par(omega) = 2g-2+sum(1-1/w_p), {tag}"] = par == want
    return _summary(6, "parabolic Riemann-Roch", checks, details)


# -- 7 ----------------------------------------------------------------------------


def criterion_7(width: Fraction = Fraction(1), torsion_bound: int = 2, variants: bool = True) -> dict:
    """All alpha of rank <= 2 with |d0|, |d1| <= 2 at one point of weight 2."""
    W = Weights.of(2)
    passed = failed = 0
    failures = []
    k1_pass = k1_fail = 0
    for r in (0, 1, 2):
        for d0, d1 in itertools.product(range(-2, 3), repeat=2):
            a = KClass.make(W, r, d0, [[d1]])
            if not a.in_k_plus():
                continue
            if r == 0:
                win = Window(Fraction(-2), Fraction(2), torsion_bound)
            else:
                mu = slope(a)
                win = Window(mu - width, mu + width, torsion_bound)
            ok = hn_reineke_identity_check(a, win, 0)[0]
            passed += ok
            failed += not ok
            if not ok:
                failures.append(a.to_json())
            if variants:
                ok1 = hn_reineke_identity_check(a, win, 0, k_start=1, saturation=False)[0]
                k1_pass += ok1
                k1_fail += not ok1
    details = {
        "window width": str(2 * width),
        "torsion bound": torsion_bound,
        "classes": passed + failed,
        "tail condition k >= 2": {"pass": passed, "fail": failed},
        "failures": failures,
    }
    if variants:
        details["tail condition k >= 1"] = {"pass": k1_pass, "fail": k1_fail}
    checks = {f"HN/Reineke identity with tail k >= 2 on {passed + failed} classes": failed == 0}
    return _summary(7, "HN/Reineke", checks, details)


# -- 8 ----------------------------------------------------------------------------


def _labels_up_to(model, max_deg: int):
    out = []
    if model.name == "dvr":
        for n in range(max_deg + 1):
            out.extend(partitions(n))
        return out
    for total in range(max_deg + 1):
        for dv in itertools.product(range(total + 1), repeat=model.n):
            if sum(dv) == total:
                out.extend(multisegments(model.n, dv))
    return out


def _assoc_all(model, max_deg: int = 3) -> tuple[bool, int]:
    labels = _labels_up_to(model, max_deg)
    size = {lab: sum(model.degree(lab)) if model.name == "quiver" else model.degree(lab) for lab in labels}
    ok = True
    count = 0
    for a, b, c in itertools.product(labels, repeat=3):
        if size[a] + size[b] + size[c] > max_deg:
            continue
        x, y, z = (HallElem.basis(model, t) for t in (a, b, c))
        ok &= (x * y) * z == x * (y * z)
        count += 1
    return ok, count


def criterion_8() -> dict:
    checks = {}
    details = {}
    for name, model in (
        ("DVR", model_for("dvr", 2)),
        ("C_1", model_for("quiver", 2, 1)),
        ("C_2", model_for("quiver", 2, 2)),
        ("C_3", model_for("quiver", 2, 3)),
    ):
        ok, count = _assoc_all(model)
        checks[f"Hall associativity, {name} over F_2 ({count} triples)"] = ok
    D = model_for("dvr", 2)
    P = Partition
    checks["g^(1,1)_(1),(1)(2) = 3"] = hall_number(P((1, 1)), P((1,)), P((1,)), D) == 3
    checks["g^(2)_(1),(1)(2) = 1"] = hall_number(P((2,)), P((1,)), P((1,)), D) == 1
    J = model_for("quiver", 2, 1)
    morita = True
    for lam in partitions(3):
        m = Multisegment(1, tuple((0, k) for k in lam.parts))
        for mu, nu in itertools.product(list(partitions(1)) + list(partitions(2)), repeat=2):
            if mu.size + nu.size != 3:
                continue
            mm = Multisegment(1, tuple((0, k) for k in mu.parts))
            nn = Multisegment(1, tuple((0, k) for k in nu.parts))
            morita &= hall_number(lam, mu, nu, D) == hall_number(m, mm, nn, J)
    checks["Jordan quiver and DVR Hall numbers agree to degree 3"] = morita
    hl = hl_correspondence_check(3, 2)
    checks["Hall-Littlewood correspondence to degree 3 at l = 2"] = hl["pass"]
    details["Hall-Littlewood pairs"] = hl["pairs"]
    checks["bracket identity C_3 over F_2, j = 2, i = 0, 1, 2"] = all(
        verify_cyclic_bracket(3, 2, i, 2)["pass"] for i in range(3)
    )
    edge = verify_cyclic_bracket(2, 2, 0, 2, allow_outside=True)
    consts = []
    for n, k in ((2, 1), (3, 1), (3, 2)):
        b = bracket_constants(n, 2, k)
        consts.append({key: (val if isinstance(val, (bool, int)) else str(val)) for key, val in b.items()})
    details["C_2 edge case"] = {
        "lemma range 0 < j < 2 leaves only j = 1": verify_cyclic_bracket(2, 2, 0, 1)["pass"],
        "j = 2 outside the range holds": edge["pass"],
        "j = 2 left side": str(edge["lhs"]),
        "j = 2 right side": str(edge["rhs"]),
        "counted constants": consts,
    }
    checks["C_2: j = 1 holds and j = 2, outside 0 < j < n, fails"] = (
        verify_cyclic_bracket(2, 2, 0, 1)["pass"] and not edge["pass"]
    )
    checks["shift relation n=2, m=1 over F_2 and F_3"] = all(
        verify_T_shift(2, l, i, 1, 1)["pass"] for l in (2, 3) for i in (0, 1)
    )
    return _summary(8, "torsion oracle", checks, details)


# -- 9 ----------------------------------------------------------------------------


def criterion_9(N: int = 8) -> dict:
    checks = {}
    details = {}
    T = [TPoly.gen(N, d) for d in range(1, N + 1)]
    ok = True
    for a, b in itertools.product(KINDS, repeat=2):
        x = exp_convert("T", a, N)
        y = exp_convert(a, b, N, x)
        ok &= exp_convert(b, "T", N, y) == T
        ok &= exp_convert(b, a, N, y) == x
    checks[f"exp_convert roundtrips to order {N}"] = ok
    checks["1_{0,1} = T_{0,1} and theta_{0,1} = (v^-1 - v) T_{0,1}"] = (
        exp_convert("T", "one", 1)[0] == T[0].__class__.gen(1, 1)
        and exp_convert("T", "theta", 1)[0] == TPoly.gen(1, 1) * (vpow(-1) - vpow(1))
    )
    cases = [
        (Curve.from_numerator(0, [1], l=2), 1),
        (Curve.from_numerator(0, [1], l=3), 1),
        (Curve.from_numerator(1, [1, 0, 2], l=2), 1),
        (Curve.from_numerator(1, [1, -1, 3], l=3), 1),
        (Curve.from_numerator(0, [1], l=2), 2),
    ]
    for c, d in cases:
        r = green_pairing_T0(c, d)
        key = f"g={c.genus} l={c.l} numerator={[str(x) for x in c.numerator()]} d={d}"
        checks[f"Green pairing of T_0,d, {key}"] = r["pass"]
        details[key] = {"pairing": [str(x) for x in r["lhs"]], "closed form": [str(x) for x in r["rhs"]]}
    return _summary(9, "generator conversions and pairing", checks, details)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_criterion(k: int) -> dict:
    return CRITERIA[k]()


def run_all(level: str = "desk") -> list[dict]:
    if level != "desk":
        raise ValueError("only the desk level is defined")
    return [run_criterion(k) for k in sorted(CRITERIA)]
