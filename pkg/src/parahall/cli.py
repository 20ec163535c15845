"""Command-line access: one verb per operation, JSON in and out.

Every structured argument takes inline JSON, ``@file`` or ``-`` for stdin.
``--input`` supplies a JSON object whose keys fill any flag not given on the
command line.  ``--threads`` is accepted for scripting compatibility; all
work runs in one thread, so output never depends on it.

Exit codes: 0 success, 1 a verification came out false, 2 bad input,
3 a capacity limit or an unsaturated window.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import curve as _curve
from . import ktheory, shuffle, stability, symmetric, verify
from . import oracle
from .jsonio import chi_from, class_from, dumps, load_arg, weights_from
from .oracle.models import OracleCapacityError
from .scalars import coerce_scalar
from .symmetric import LPoly, SymElem

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _curve_of(args):
    if args.curve is None:
        raise InputError("--curve is required")
    return _curve.Curve.from_json(load_arg(args.curve))


def _weights_of(args):
    if args.weights is None:
        raise InputError("--weights is required")
    return weights_from(load_arg(args.weights))


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n.replace('_', '-')} is required")


def _scalar(x, curve):
    return _curve.report_scalar(x, curve.l)


def _series_out(s, curve) -> list[str]:
    return [_scalar(c, curve) for c in s.coeffs]


# -- zeta kernel ------------------------------------------------------------------


def cmd_zeta(args):
    c = _curve_of(args)
    z = _curve.zeta_series(c, args.order)
    return {"coefficients": _series_out(z, c), "order": args.order}, True


def cmd_points(args):
    _need(args, "k")
    c = _curve_of(args)
    return {"value": _scalar(_curve.point_count(c, args.k), c)}, True


def cmd_xi(args):
    c = _curve_of(args)
    return {"coefficients": _series_out(_curve.xi_coeffs(c, args.order), c), "order": args.order}, True


# -- shuffle algebra --------------------------------------------------------------


def _shuf(args, data, W, c):
    pol = shuffle.TruncPolicy(args.N)
    if isinstance(data, list):
        # a list of generators [d, residues] is read as their product
        gens = [shuffle.generator(W, c, int(d), x, pol) for d, x in data]
        return shuffle.shuffle_product(gens, pol, args.gamma_mode) if gens else shuffle.ShufElem.unit(W, c, pol)
    elem = shuffle.ShufElem.from_json(W, c, data)
    return shuffle.ShufElem(W, c, elem.terms, pol)


def cmd_shuffle_mul(args):
    _need(args, "a", "b")
    W, c = _weights_of(args), _curve_of(args)
    a = _shuf(args, load_arg(args.a), W, c)
    b = _shuf(args, load_arg(args.b), W, c)
    prod = shuffle.shuffle_mul(a, b, shuffle.TruncPolicy(args.N), args.gamma_mode)
    out = prod.to_json()
    if args.hmax is not None:
        hmax = Fraction(args.hmax)
        out["window"] = {"hmax": str(hmax)}
        out["terms"] = [t for t, k in zip(out["terms"], prod.terms) if shuffle.height(k, W) <= hmax]
    return out, True


def cmd_deconcat(args):
    _need(args, "elem", "m", "n")
    W, c = _weights_of(args), _curve_of(args)
    u = _shuf(args, load_arg(args.elem), W, c)
    pieces = shuffle.deconcat(u, args.m, args.n)

    def key(k):
        return {"exps": [d for d, _, _ in k], "residues": [list(x) for _, x, _ in k], "labels": [list(lab) for _, _, lab in k]}

    return {"terms": [{"left": key(a), "right": key(b), "coeff": str(x)} for (a, b), x in pieces.items()]}, True


def _sym(data, c):
    n = int(data["r"])
    poly = LPoly(n, {tuple(int(e) for e in t["exps"]): coerce_scalar(t["coeff"]) for t in data["terms"]})
    return SymElem(c, poly)


def cmd_sym_mul(args):
    _need(args, "a", "b")
    c = _curve_of(args)
    return symmetric.sym_mul(_sym(load_arg(args.a), c), _sym(load_arg(args.b), c)).to_json(), True


def cmd_span_dim(args):
    _need(args, "tuples", "hmax")
    W, c = _weights_of(args), _curve_of(args)
    tuples = [[(int(d), tuple(x)) for d, x in tup] for tup in load_arg(args.tuples)]
    dim = shuffle.graded_span_dim(W, c, tuples, Fraction(args.hmax), shuffle.TruncPolicy(args.N), args.gamma_mode)
    out = {"dim": dim, "hmax": str(Fraction(args.hmax)), "N": args.N}
    if args.compare_sym:
        if any(len(set(x for _, x in tup)) > 1 or any(map(any, (x for _, x in tup))) for tup in tuples):
            raise InputError("--compare-sym needs every residue to be zero")
        elems = []
        for tup in tuples:
            e = symmetric.SymElem.unit(c)
            for d, _ in tup:
                e = symmetric.sym_mul(e, symmetric.sym_generator(c, d))
            elems.append(e)
        out["sym_dim"] = symmetric.span_rank(elems)
        return out, out["sym_dim"] == dim
    return out, True


# -- Euler form and degrees -------------------------------------------------------


def cmd_euler(args):
    _need(args, "a", "b")
    W = _weights_of(args)
    a, b = class_from(W, load_arg(args.a)), class_from(W, load_arg(args.b))
    kw = {"orientation": args.orientation}
    return {
        "value": ktheory.euler_form(a, b, args.genus, **kw),
        "reverse": ktheory.euler_form(b, a, args.genus, **kw),
        "symmetric": ktheory.sym_form(a, b, args.genus, **kw),
    }, True


def cmd_par_degree(args):
    _need(args, "cls")
    W = _weights_of(args)
    a = class_from(W, load_arg(args.cls))
    chi = chi_from(load_arg(args.chi))
    return {"par": ktheory.parabolic_degree(a, chi), "slope": ktheory.slope(a, chi)}, True


# -- stability --------------------------------------------------------------------


def _window(args):
    _need(args, "window")
    return stability.Window.from_json(load_arg(args.window))


def cmd_hn_enum(args):
    _need(args, "cls")
    W = _weights_of(args)
    a = class_from(W, load_arg(args.cls))
    types = stability.enumerate_hn_types(a, _window(args), chi_from(load_arg(args.chi)))
    return {"types": [t.to_json() for t in types], "count": len(types)}, True


def _hn_type(args, W):
    _need(args, "type")
    return stability.HNType.from_json(W, load_arg(args.type))


def cmd_hn_word(args):
    W = _weights_of(args)
    t = _hn_type(args, W)
    return {"word": stability.hn_word(t, args.genus, chi_from(load_arg(args.chi))).to_json()}, True


def cmd_reineke(args):
    _need(args, "cls")
    W = _weights_of(args)
    a = class_from(W, load_arg(args.cls))
    word = stability.reineke_expand(a, _window(args), args.genus, args.k_start, chi_from(load_arg(args.chi)))
    return {"word": word.to_json()}, True


def cmd_hn_identity(args):
    _need(args, "cls")
    W = _weights_of(args)
    a = class_from(W, load_arg(args.cls))
    ok, result, expected = stability.hn_reineke_identity_check(
        a, _window(args), args.genus, args.k_start, chi_from(load_arg(args.chi))
    )
    return {"pass": ok, "result": result.to_json(), "expected": expected.to_json(), "k_start": args.k_start}, ok


def cmd_polygon(args):
    W = _weights_of(args)
    p = stability.polygon_of(_hn_type(args, W), chi_from(load_arg(args.chi)))
    return {"vertices": p.to_json(), "convex": p.is_convex()}, True


def cmd_hull(args):
    _need(args, "polygons")
    polys = [
        stability.Polygon(tuple((Fraction(*x) if isinstance(x, list) else Fraction(x), Fraction(*y) if isinstance(y, list) else Fraction(y)) for x, y in poly))
        for poly in load_arg(args.polygons)
    ]
    return {"vertices": stability.lower_hull(polys).to_json()}, True


# -- torsion oracle ---------------------------------------------------------------


def _model(args):
    if args.model not in ("dvr", "quiver"):
        raise InputError("--model must be dvr or quiver")
    return oracle.model_for(args.model, args.l, args.n)


def cmd_oracle_hall(args):
    model = _model(args)
    if args.action == "product":
        _need(args, "a", "b")
        a = oracle.HallElem.basis(model, model.label_from_json(load_arg(args.a)))
        b = oracle.HallElem.basis(model, model.label_from_json(load_arg(args.b)))
        return {"product": (a * b).to_json()}, True
    if args.action == "number":
        _need(args, "lam", "a", "b")
        lab = [model.label_from_json(load_arg(x)) for x in (args.lam, args.a, args.b)]
        return {"value": oracle.hall_number(*lab, model)}, True
    _need(args, "lam")
    lam = model.label_from_json(load_arg(args.lam))
    if args.action == "submodules":
        subs = oracle.enumerate_submodules(lam, model)
        return {"submodules": subs, "count": len(subs)}, True
    if args.action == "aut":
        return {"value": oracle.aut_count(lam, model)}, True
    raise InputError(f"unknown action {args.action!r}")


def cmd_oracle_bracket(args):
    if args.constants is not None:
        out = oracle.bracket_constants(args.n, args.l, args.constants)
        return {k: (v if isinstance(v, (bool, int)) else str(v)) for k, v in out.items()}, True
    if args.m is not None:
        r = oracle.verify_T_shift(args.n, args.l, args.i, args.j, args.m)
    else:
        r = oracle.verify_cyclic_bracket(args.n, args.l, args.i, args.j, args.allow_outside)
    return {"pass": r["pass"], "lhs": str(r["lhs"]), "rhs": str(r["rhs"])}, r["pass"]


def cmd_oracle_hl(args):
    r = oracle.hl_correspondence_check(args.degree, args.l)
    return {"pass": r["pass"], "pairs": r["pairs"], "failures": [str(f) for f in r["failures"]]}, r["pass"]


def cmd_exp_convert(args):
    _need(args, "src", "dst")
    coeffs = load_arg(args.coeffs)
    if coeffs is not None:
        coeffs = [oracle.TPoly.from_json(args.N, c) for c in coeffs]
    if args.src not in oracle.KINDS or args.dst not in oracle.KINDS:
        raise InputError(f"kinds are {', '.join(oracle.KINDS)}")
    res = oracle.exp_convert(args.src, args.dst, args.N, coeffs)
    return {"kind": args.dst, "N": args.N, "coefficients": [p.to_json() for p in res]}, True


def cmd_green_t0(args):
    _need(args, "d")
    r = oracle.green_pairing_T0(_curve_of(args), args.d)
    return {"pass": r["pass"], "pairing": [str(x) for x in r["lhs"]], "closed_form": [str(x) for x in r["rhs"]]}, r["pass"]


def cmd_verify_all(args):
    if args.level != "desk":
        raise InputError("only --level desk is defined")
    wanted = sorted(verify.CRITERIA) if not args.criteria else [int(x) for x in args.criteria.split(",")]
    for k in wanted:
        if k not in verify.CRITERIA:
            raise InputError(f"no criterion {k}")
    results = [verify.run_criterion(k) for k in wanted]
    ok = all(r["pass"] for r in results)
    return {"level": args.level, "pass": ok, "criteria": results}, ok


# -- argument table ---------------------------------------------------------------

# verb -> (handler, library operation, flags)
VERBS = {
    "zeta": (cmd_zeta, "curve.zeta_series", ["curve", "order"]),
    "points": (cmd_points, "curve.point_count", ["curve", "k"]),
    "xi": (cmd_xi, "curve.xi_coeffs", ["curve", "order"]),
    "shuffle-mul": (cmd_shuffle_mul, "shuffle.shuffle_mul", ["weights", "curve", "a", "b", "N", "gamma_mode", "hmax"]),
    "deconcat": (cmd_deconcat, "shuffle.deconcat", ["weights", "curve", "elem", "m", "n", "N", "gamma_mode"]),
    "sym-mul": (cmd_sym_mul, "symmetric.sym_mul", ["curve", "a", "b"]),
    "span-dim": (cmd_span_dim, "shuffle.graded_span_dim", ["weights", "curve", "tuples", "hmax", "N", "gamma_mode", "compare_sym"]),
    "euler": (cmd_euler, "ktheory.euler_form", ["weights", "a", "b", "genus", "orientation"]),
    "par-degree": (cmd_par_degree, "ktheory.parabolic_degree", ["weights", "cls", "chi"]),
    "hn-enum": (cmd_hn_enum, "stability.enumerate_hn_types", ["weights", "cls", "window", "chi"]),
    "hn-word": (cmd_hn_word, "stability.hn_word", ["weights", "type", "genus", "chi"]),
    "reineke": (cmd_reineke, "stability.reineke_expand", ["weights", "cls", "window", "genus", "k_start", "chi"]),
    "hn-identity": (cmd_hn_identity, "stability.hn_reineke_identity_check", ["weights", "cls", "window", "genus", "k_start", "chi"]),
    "polygon": (cmd_polygon, "stability.polygon_of", ["weights", "type", "chi"]),
    "hull": (cmd_hull, "stability.lower_hull", ["polygons"]),
    "oracle-hall": (cmd_oracle_hall, "oracle.hall_product", ["model", "l", "n", "action", "a", "b", "lam"]),
    "oracle-bracket": (cmd_oracle_bracket, "oracle.verify_cyclic_bracket", ["n", "l", "i", "j", "m", "allow_outside", "constants"]),
    "oracle-hl": (cmd_oracle_hl, "oracle.hl_correspondence_check", ["degree", "l"]),
    "exp-convert": (cmd_exp_convert, "oracle.exp_convert", ["src", "dst", "N", "coeffs"]),
    "green-t0": (cmd_green_t0, "oracle.green_pairing_T0", ["curve", "d"]),
    "verify-all": (cmd_verify_all, "verify.run_all", ["level", "criteria"]),
}

_FLAGS = {
    "curve": dict(help='curve JSON, e.g. {"genus":1,"numerator":[1,0,2],"l":2}'),
    "weights": dict(help="weights, e.g. [2,3]"),
    "order": dict(type=int, default=8),
    "k": dict(type=int),
    "a": dict(help="first operand (JSON)"),
    "b": dict(help="second operand (JSON)"),
    "elem": dict(help="shuffle element JSON or a list of generators"),
    "N": dict(type=int, default=6, help="truncation order"),
    "gamma_mode": dict(default="label", choices=["label", "residue"]),
    "hmax": dict(help="height window (rational)"),
    "m": dict(type=int),
    "n": dict(type=int),
    "tuples": dict(help="list of generator tuples [[d, residues], ...]"),
    "compare_sym": dict(action="store_true", help="also compute the symmetrized-algebra rank"),
    "genus": dict(type=int, default=0),
    "orientation": dict(default="physical", choices=["physical", "printed"]),
    "cls": dict(help="class JSON {rank, d0, slots}"),
    "chi": dict(help="parabolic weights, one chain per point"),
    "window": dict(help='window JSON {"lo","hi","torsion_bound"}'),
    "type": dict(help="HN type: list of classes"),
    "k_start": dict(type=int, default=2, choices=[1, 2]),
    "polygons": dict(help="list of vertex lists"),
    "model": dict(default="dvr"),
    "l": dict(type=int, default=2),
    "action": dict(default="product", choices=["product", "number", "submodules", "aut"]),
    "lam": dict(help="the ambient class for number/submodules/aut"),
    "i": dict(type=int, default=0),
    "j": dict(type=int, default=1),
    "allow_outside": dict(action="store_true"),
    "constants": dict(type=int, help="report the counted constants for O^(k)"),
    "degree": dict(type=int, default=3),
    "src": dict(choices=list(oracle.KINDS)),
    "dst": dict(choices=list(oracle.KINDS)),
    "coeffs": dict(help="input coefficients, one TPoly per degree"),
    "d": dict(type=int),
    "level": dict(default="desk"),
    "criteria": dict(help="comma-separated subset, e.g. 1,2,5"),
}

# flags that default to the model's rank-one case when absent
_DEFAULT_N = {"oracle-hall": 1, "oracle-bracket": 3}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="parahall", description="Parabolic Hall algebra computations with JSON output.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    p.verb_parsers = {}
    for verb, (_, _, flags) in VERBS.items():
        sp = sub.add_parser(verb)
        p.verb_parsers[verb] = sp
        sp.add_argument("--output", help="write the JSON here instead of standard output")
        sp.add_argument("--input", help="JSON object of flag values (inline, @file or -)")
        sp.add_argument("--threads", type=int, default=1, help="worker cap; every verb currently runs in one thread")
        for f in flags:
            spec = dict(_FLAGS[f])
            if f == "n" and verb in _DEFAULT_N:
                spec["default"] = _DEFAULT_N[verb]
            names = [f"--{f.replace('_', '-')}"]
            if f == "cls":
                names = ["--class", "--cls"]
            if f in ("src", "dst"):
                names = [{"src": "--from", "dst": "--to"}[f]]
            sp.add_argument(*names, dest=f, **spec)
    return p


def _merge_input(args, parser_defaults: dict):
    if not args.input:
        return
    data = load_arg(args.input)
    if not isinstance(data, dict):
        raise InputError("--input must be a JSON object")
    for k, val in data.items():
        key = k.replace("-", "_")
        if key == "class":
            key = "cls"
        if not hasattr(args, key):
            raise InputError(f"unknown input key {k!r}")
        if getattr(args, key) == parser_defaults.get(key):
            if isinstance(val, (dict, list)):
                val = json.dumps(val)
            setattr(args, key, val)


def run(argv=None) -> tuple[int, str, str | None]:
    """Run a command; returns (exit code, JSON text, output path or None)."""
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        if not args.verb:
            raise InputError(f"a verb is required: {', '.join(VERBS)}")
        _merge_input(args, {a.dest: a.default for a in parser.verb_parsers[args.verb]._actions})
        handler = VERBS[args.verb][0]
        payload, ok = handler(args)
        code = EXIT_OK if ok else EXIT_FAIL
    except (OracleCapacityError, symmetric.SymCapacityError, shuffle.WindowSaturationError) as e:
        payload, code = {"error": {"kind": "capacity", "type": type(e).__name__, "message": str(e)}}, EXIT_CAPACITY
    except (InputError, ValueError, KeyError, TypeError, IndexError, OSError, ArithmeticError) as e:
        payload, code = {"error": {"kind": "input", "type": type(e).__name__, "message": str(e)}}, EXIT_INPUT
    text = dumps(payload)
    return code, text, getattr(args, "output", None)


def main(argv=None) -> int:
    code, text, out = run(argv)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
