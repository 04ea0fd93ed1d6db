"""Command-line driver: lattice queries, basis dumps, transforms, propagators.

Exit codes: 0 when all invoked checks pass tolerance, 1 on a tolerance
failure, 2 on precondition violations (the violated condition is named).
Rational inputs are strings "p/q" to avoid float parsing ambiguity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import dirac
from .errors import FiniteWeylError
from .exactnum import eval_complex
from .lattice import (
    WeylDesc,
    center,
    includes,
    join,
    maximal_commutative,
    q_order,
    up_functor,
)
from .morphism import pairing
from .repmod import SpecPoint, build_module, s_basis, u_basis, v_basis
from .transform import diagonal, fourier, free_evolution, gaussian, qho_evolution, verify_conjugation

CSV_HEADER = ["mu", "N", "quantity", "x1", "x2", "re", "im", "closed_re", "closed_im", "abs_err"]


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


def parse_desc(s: str) -> WeylDesc:
    a, b = s.split(",")
    return WeylDesc(Fraction(a), Fraction(b))


def fmt_rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _emit(payload: dict, args, rows=None) -> None:
    out = sys.stdout if args.out is None else open(args.out, "w")
    try:
        if args.format == "csv" and rows is not None:
            w = csv.writer(out)
            w.writerow(CSV_HEADER)
            w.writerows(rows)
        else:
            json.dump(payload, out, indent=2, default=str)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _checks_exit(checks: list[dict]) -> int:
    return 0 if all(c["passed"] for c in checks) else 1


def _resolve_mu(args, divisors: list[int], default_min: int) -> int:
    if args.mu == "auto":
        return dirac.auto_mu(parse_rat(args.h), divisors, min_mu=args.mu_min or default_min)
    return int(args.mu)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_lattice(args) -> int:
    results = {}
    if args.center:
        A = parse_desc(args.center)
        Z = center(A)
        results["center"] = f"{fmt_rat(Z.a)},{fmt_rat(Z.b)}"
        results["q_order"] = q_order(A)
    if args.up:
        C = parse_desc(args.up)
        U = up_functor(C)
        results["up"] = f"{fmt_rat(U.a)},{fmt_rat(U.b)}"
    if args.includes:
        b_str, a_str = args.includes.split(";")
        results["includes"] = includes(parse_desc(b_str), parse_desc(a_str))
    if args.join:
        a_str, b_str = args.join.split(";")
        J = join(parse_desc(a_str), parse_desc(b_str))
        results["join"] = f"{fmt_rat(J.a)},{fmt_rat(J.b)}"
    if args.ocount:
        A = parse_desc(args.ocount)
        gens = maximal_commutative(A)
        results["ocount"] = len(gens)
        results["ogenerators"] = [f"U^{fmt_rat(g.u_exp)} V^{fmt_rat(g.v_exp)}" for g in gens]
    payload = {"meta": {"command": "lattice"}, "results": results, "checks": []}
    _emit(payload, args)
    return 0


def cmd_basis(args) -> int:
    A = parse_desc(args.alg)
    M = build_module(A, SpecPoint.principal_point())
    if args.which == "u":
        basis = u_basis(M)
    elif args.which == "v":
        basis = v_basis(M)
    else:
        from .lattice import GenWord

        if not args.s_word or not args.t_word:
            raise ValueError("--which s requires --s-word and --t-word")
        su, sv = args.s_word.split(",")
        tu, tv = args.t_word.split(",")
        basis = s_basis(M, GenWord(Fraction(su), Fraction(sv)), GenWord(Fraction(tu), Fraction(tv)))
    if args.mode == "float":
        dump = [[list(eval_complex(a)) for a in vec.amps] for vec in basis]
    else:
        dump = [[str(a) for a in vec.amps] for vec in basis]
    payload = {
        "meta": {"command": "basis", "alg": args.alg, "which": args.which,
                 "mode": args.mode, "dim": M.dim},
        "results": {"basis": dump},
        "checks": [],
    }
    _emit(payload, args)
    return 0


def cmd_pairing(args) -> int:
    N = args.n
    M = build_module(WeylDesc(1, Fraction(1, N)), SpecPoint.principal_point())

    def vec_of(spec: str):
        kind, idx = spec.split(":")
        idx = int(idx)
        if kind == "u":
            return M.basis_vector(idx)
        if kind == "v":
            return v_basis(M)[idx % N]
        raise ValueError(f"unknown basis kind {kind!r}")

    res = pairing(vec_of(args.left), vec_of(args.right))
    value = res.value.to_complex().real
    payload = {
        "meta": {"command": "pairing", "n": N, "left": args.left, "right": args.right},
        "results": {"value": value, "compatible": res.compatible},
        "checks": [],
    }
    _emit(payload, args)
    return 0


def cmd_transform(args) -> int:
    N = args.n
    M = build_module(WeylDesc(1, Fraction(1, N)), SpecPoint.principal_point())
    if args.name == "fourier":
        L = fourier(M)
    elif args.name == "gaussian":
        L = gaussian(M, b=args.b, d=args.d)
    elif args.name == "diagonal":
        L = diagonal(M, args.m)
    elif args.name == "free":
        t = parse_rat(args.t)
        L = free_evolution(M, t.numerator, t.denominator)
    elif args.name == "qho":
        e, f, c = (int(x) for x in args.triple.split(","))
        L = qho_evolution(M, e, f, c)
    else:
        raise ValueError(f"unknown transform {args.name!r}")
    reports = verify_conjugation(L, sample=args.sample)
    checks = [
        {"name": r.name, "passed": bool(r.holds), "value": r.residual, "tol": 0.0}
        for r in reports
    ]
    sampled = {}
    for m in range(min(3, L.dim)):
        col = L.image(m)
        entries = {}
        for j, a in enumerate(col.amps):
            if not a.is_zero():
                re, im = eval_complex(a)
                entries[j] = [re, im]
            if len(entries) >= 8:
                break
        sampled[m] = entries
    payload = {
        "meta": {
            "command": "transform",
            "name": L.name,
            "n": N,
            "gL": [[fmt_rat(x) for x in row] for row in L.gL],
            "dim": L.dim,
        },
        "results": {"sampled_columns": sampled},
        "checks": checks,
    }
    _emit(payload, args)
    return _checks_exit(checks)


def _grid(spec: str) -> list[float]:
    lo, hi, count = spec.split(":")
    lo, hi, count = float(lo), float(hi), int(count)
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def cmd_propagator(args) -> int:
    h = parse_rat(args.h)
    rows = []
    checks = []
    xs = _grid(args.grid)
    if args.kind == "free":
        t = parse_rat(args.t)
        mu = _resolve_mu(args, [2 * t.numerator * t.denominator], 2520)
        params = dirac.ScaleParams(h, mu)
        quantity = f"free[t={args.t}]"

        def sample(pt):
            x1, x2 = pt
            return dirac.free_propagator(x1, x2, t, params)
    else:
        e, f, c = (int(x) for x in args.triple.split(","))
        mu = _resolve_mu(args, [2 * c * e * (c - f), c * c * e], 4000)
        params = dirac.ScaleParams(h, mu)
        quantity = f"qho[{e},{f},{c}]"

        def sample(pt):
            x1, x2 = pt
            return dirac.qho_propagator(x1, x2, (e, f, c), params)

    points = [(x1, x2) for x1 in xs for x2 in xs]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            samples = list(pool.map(sample, points))
    else:
        samples = [sample(pt) for pt in points]

    worst = 0.0
    for s in samples:
        worst = max(worst, s.abs_err)
        rows.append(
            [
                params.mu,
                params.N,
                quantity,
                s.x1,
                s.x2,
                s.value.real,
                s.value.imag,
                s.closed_form.real,
                s.closed_form.imag,
                s.abs_err,
            ]
        )
    checks.append({"name": "kernel_matches_closed_form", "passed": worst <= args.tol, "value": worst, "tol": args.tol})
    payload = {
        "meta": {
            "command": f"propagator {args.kind}",
            "h": args.h,
            "mu": params.mu,
            "mu_policy": "auto: lcm of h parts and required indices, scaled to --mu-min" if args.mu == "auto" else "explicit",
            "N": params.N,
            "grid": args.grid,
            "t": args.t if args.kind == "free" else None,
            "triple": args.triple if args.kind == "qho" else None,
            "seed": args.seed,
        },
        "results": {"max_abs_err": worst, "samples": len(samples)},
        "checks": checks,
    }
    _emit(payload, args, rows=rows)
    return _checks_exit(checks)


def cmd_trace(args) -> int:
    h = parse_rat(args.h)
    e, f, c = (int(x) for x in args.triple.split(","))
    mu = _resolve_mu(args, [2 * c * e * (c - f)], 200)
    params = dirac.ScaleParams(h, mu)
    r = dirac.qho_trace((e, f, c), params)
    checks = [
        {"name": "trace_matches_closed_form", "passed": r.abs_err <= args.tol, "value": r.abs_err, "tol": args.tol}
    ]
    rows = [
        [params.mu, params.N, f"trace qho[{e},{f},{c}]", 0.0, 0.0, r.value.real, r.value.imag,
         r.closed_form.real, r.closed_form.imag, r.abs_err]
    ]
    payload = {
        "meta": {"command": "trace qho", "h": args.h, "mu": params.mu, "N": params.N,
                 "triple": args.triple, "terms": r.terms},
        "results": {
            "tr_re": r.value.real,
            "tr_im": r.value.imag,
            "tr_abs": abs(r.value),
            "closed_re": r.closed_form.real,
            "closed_im": r.closed_form.imag,
            "abs_err": r.abs_err,
        },
        "checks": checks,
    }
    _emit(payload, args, rows=rows)
    return _checks_exit(checks)


def cmd_converge(args) -> int:
    mus = [int(x) for x in args.mu_list.split(",")]
    rep = dirac.converge_study(args.quantity, mus, h=parse_rat(args.h), seed=args.seed)
    checks = []
    if args.quantity == "ccr":
        checks.append(
            {
                "name": "fitted_order_is_minus_one",
                "passed": -1.2 <= rep.fitted_order <= -0.8,
                "value": rep.fitted_order,
                "tol": 0.2,
            }
        )
    else:
        worst = max(rep.residuals)
        checks.append(
            {"name": "residuals_within_tol", "passed": worst <= args.tol, "value": worst, "tol": args.tol}
        )
    rows = [
        [mu, "", f"converge {args.quantity}", "", "", "", "", "", "", res]
        for mu, res in zip(rep.mus, rep.residuals)
    ]
    payload = {
        "meta": {"command": f"converge {args.quantity}", "h": args.h, "mu_list": rep.mus, "seed": args.seed},
        "results": {"residuals": rep.residuals, "fitted_order": rep.fitted_order},
        "checks": checks,
    }
    _emit(payload, args, rows=rows)
    return _checks_exit(checks)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--mode", choices=["exact", "float"], default="exact",
                        help="exact: scalar strings; float: evaluated (re, im) pairs")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(
        prog="finiteweyl",
        description="Finite-N quantum mechanics over rational Weyl algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    lat = add_parser("lattice", help="inclusion/center/O(A) queries")
    lat.add_argument("--center", help='algebra "a,b"')
    lat.add_argument("--up", help='commutative algebra "c,d"')
    lat.add_argument("--includes", help='"B;A" with descs "a,b"')
    lat.add_argument("--join", help='"A;B"')
    lat.add_argument("--ocount", help='algebra "a,b": count maximal commutative subalgebras')
    lat.set_defaults(func=cmd_lattice)

    bas = add_parser("basis", help="dump u/v/s bases as scalar strings")
    bas.add_argument("--alg", required=True, help='algebra "a,b"')
    bas.add_argument("--which", choices=["u", "v", "s"], default="u")
    bas.add_argument("--s-word", help='"u_exp,v_exp" for the S generator')
    bas.add_argument("--t-word", help='"u_exp,v_exp" for the T generator')
    bas.set_defaults(func=cmd_basis)

    par = add_parser("pairing", help="[e|f] of two basis vectors")
    par.add_argument("--n", type=int, required=True, help="module dimension")
    par.add_argument("--left", required=True, help='"u:k" or "v:m"')
    par.add_argument("--right", required=True, help='"u:k" or "v:m"')
    par.set_defaults(func=cmd_pairing)

    tr = add_parser("transform", help="build + verify a transformation")
    tr.add_argument("--name", required=True,
                    choices=["fourier", "gaussian", "diagonal", "free", "qho"])
    tr.add_argument("--n", type=int, required=True, help="module dimension")
    tr.add_argument("--b", type=int, default=1)
    tr.add_argument("--d", type=int, default=1)
    tr.add_argument("--m", type=int, default=2)
    tr.add_argument("--t", default="1/2", help='rational time "b/d"')
    tr.add_argument("--triple", default="3,4,5")
    tr.add_argument("--sample", type=int, default=None)
    tr.set_defaults(func=cmd_transform)

    mu_help = ('integer, or "auto": smallest even mu divisible by the parts of h '
               "and every index the computation needs, scaled up to --mu-min")
    prop_p = add_parser("propagator", help="free/qho kernels vs closed forms")
    prop_p.add_argument("kind", choices=["free", "qho"])
    prop_p.add_argument("--h", default="1")
    prop_p.add_argument("--mu", default="auto", help=mu_help)
    prop_p.add_argument("--mu-min", type=int, default=None)
    prop_p.add_argument("--t", default="1/2")
    prop_p.add_argument("--triple", default="3,4,5")
    prop_p.add_argument("--grid", default="-1:1:5")
    prop_p.set_defaults(func=cmd_propagator)

    trc = add_parser("trace", help="QHO trace vs 1/(i|sin(t/2)|)")
    trc.add_argument("kind", choices=["qho"])
    trc.add_argument("--triple", default="3,4,5")
    trc.add_argument("--h", default="1")
    trc.add_argument("--mu", default="auto", help=mu_help)
    trc.add_argument("--mu-min", type=int, default=None)
    trc.set_defaults(func=cmd_trace)

    cv = add_parser("converge", help="residual sweeps over mu")
    cv.add_argument("quantity", choices=["ccr", "free", "qho", "weakring"])
    cv.add_argument("--mu", dest="mu_list", required=True, help="comma list of mu")
    cv.add_argument("--h", default="1")
    cv.set_defaults(func=cmd_converge)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FiniteWeylError as exc:
        print(f"precondition violated ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
