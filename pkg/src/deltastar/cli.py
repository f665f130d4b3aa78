"""Command-line front end.

Six subcommands: product, classify, represent, scatter, spectrum,
weaklimit.  Exact commands take "p/q" rational (optionally complex,
"1-2i") parameters and print expr_io records; numeric commands take
floats and print CSV.  --format json wraps the same payload in a JSON
object whose record fields round-trip through expr_io.

Exit codes: 0 ok, 2 parse error (with input position), 3 precondition
violation.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .boundary_ops import (
    DeltaPrimeFamily,
    PointPotential,
    PreconditionError,
)
from .dist_core import AlgebraError, parse_scalar
from .expr_io import ExprError, encode, format_dist, parse_dist, parse_poly
from .numerics import bound_states, bump, grid_eigenvalues, \
    grid_hamiltonian, mollified_pairing, scattering, weak_limit_value
from .schrodinger import (
    BCMatrix,
    ConjugatePairFamily,
    NotRepresentable,
    NotSelfAdjoint,
    OppositeSignFamily,
    SeparatingFamily,
    check_potential_representable_B3_zero,
    classify,
    delta_prime_interaction,
    delta_well,
    dirichlet_specs,
    extract_bc,
    match_continuity_jump,
    match_theta_jump,
    represent_from_bc,
    represent_interacting,
    represent_separating,
)


def _scalars(text, count, what):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ExprError(
            "%s takes %d comma-separated values, got %d"
            % (what, count, len(parts))
        )
    return [parse_scalar(p) for p in parts]


def _bc_rows(text):
    rows = [r for r in (part.strip() for part in text.split(";")) if r]
    if len(rows) != 2:
        raise ExprError("--bc takes two rows separated by ';'")
    return [tuple(_scalars(r, 4, "a bc row")) for r in rows]


def _floats(text, what):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ExprError("%s takes comma-separated numbers" % what) from None


def _fnum(x):
    if isinstance(x, complex):
        if math.isnan(x.real) and math.isnan(x.imag):
            return "nan"
        if x.imag == 0.0:
            return "%.15g" % x.real
        return "%.15g%+.15gi" % (x.real, x.imag)
    return "%.15g" % x


def _classification_kind(c):
    if isinstance(c, NotSelfAdjoint):
        return "not-self-adjoint"
    return "separating" if hasattr(c, "a_minus") else "interacting"


# -- subcommand bodies: each returns (json payload, text lines) -------------


def _cmd_product(args):
    F = parse_dist(args.expr, n_cap=args.n_cap)
    text = format_dist(F)
    payload = {"status": "ok", "result": text, "record": encode(F)}
    return payload, [text]


def _spec_annotations(bc):
    notes = {}
    jump = match_continuity_jump(bc)
    if jump is not None:
        notes["jump"] = jump.token()
    theta = match_theta_jump(bc)
    if theta is not None:
        notes["theta"] = theta.token()
    return notes


def _cmd_classify(args):
    spec = PointPotential(
        parse_scalar(args.c1),
        parse_scalar(args.c2),
        parse_scalar(args.b1),
        parse_scalar(args.b2),
    )
    result = classify(spec)
    bc = extract_bc(spec)
    notes = _spec_annotations(bc)
    payload = {
        "status": "ok",
        "kind": _classification_kind(result),
        "classification": encode(result),
        "bc": encode(bc),
    }
    payload.update(notes)
    lines = [encode(result).rstrip("\n"), encode(bc).rstrip("\n")]
    lines += ["%s %s" % kv for kv in sorted(notes.items())]
    return payload, lines


def _represent_payload(family, specs, notes, params=None):
    payload = {
        "status": "ok",
        "family": family,
        "specs": [encode(s) for s in specs],
        "notes": notes,
    }
    if params:
        payload["params"] = params
    lines = ["family %s" % family]
    lines += ["%s %s" % kv for kv in (params or {}).items()]
    lines += ["note %s" % n for n in notes]
    lines += [encode(s).rstrip("\n") for s in specs]
    return payload, lines


def _cmd_represent(args):
    if args.interacting:
        a, b, c = _scalars(args.interacting, 3, "--interacting")
        fam = represent_interacting(a, b, c)
        if isinstance(fam, NotRepresentable):
            return _represent_payload(
                "pseudo-only", [fam.pseudo], [fam.reason]
            )
        if isinstance(fam, OppositeSignFamily):
            spec = fam.spec(
                parse_scalar(args.b1) if args.b1 else 0,
                parse_scalar(args.c1) if args.c1 else None,
            )
            return _represent_payload(
                "opposite-sign", [spec], [],
                {"c": fam.c.token()},
            )
        spec = fam.spec(parse_scalar(args.k1) if args.k1 else None)
        params = {
            k: getattr(fam, k).token() for k in ("b", "c", "b1", "b2", "x1", "x2")
        }
        return _represent_payload("conjugate-pair", [spec], [], params)

    if args.separating:
        am, bm, ap, bp = _scalars(args.separating, 4, "--separating")
        fam = represent_separating(am, bm, ap, bp)
        if isinstance(fam, NotRepresentable):
            return _represent_payload(
                "pseudo-only", [fam.pseudo], [fam.reason]
            )
        spec = fam.spec(
            parse_scalar(args.c1) if args.c1 else None,
            parse_scalar(args.c2) if args.c2 else None,
        )
        params = {
            "b1": fam.b1.token(),
            "b2": fam.b2.token(),
            "free": ",".join(fam.free) or "none",
        }
        return _represent_payload("separating", [spec], [], params)

    rows = _bc_rows(args.bc)
    bc = BCMatrix(rows)
    if bc.rank != 2:
        raise PreconditionError("--bc rows must be independent (rank 2)")
    pseudo = represent_from_bc(rows[0], rows[1])
    specs = [pseudo]
    notes = []
    ok, witness = check_potential_representable_B3_zero(bc)
    if not ok:
        notes.append(
            "not representable as a potential: derivative block det %s"
            % witness.det.token()
        )
    jump = match_continuity_jump(bc)
    if jump is not None:
        specs.append(delta_well(jump))
        notes.append("continuity with jump %s" % jump.token())
    theta = match_theta_jump(bc)
    if theta is not None and theta != 0 and theta != -1:
        specs.append(delta_prime_interaction(theta))
        notes.append("theta conditions with theta %s" % theta.token())
    dshapes = dirichlet_specs()
    if bc.row_equivalent(extract_bc(dshapes[1])):
        specs.append(dshapes[1])
        notes.append("double Dirichlet point form")
    return _represent_payload("from-bc", specs, notes)


def _operator_bc(args):
    if args.delta:
        return extract_bc(delta_well(parse_scalar(args.delta)))
    if args.theta:
        return extract_bc(delta_prime_interaction(parse_scalar(args.theta)))
    if args.potential:
        return extract_bc(PointPotential(*_scalars(args.potential, 4, "--potential")))
    if args.deltaprime:
        return extract_bc(DeltaPrimeFamily(*_scalars(args.deltaprime, 4, "--deltaprime")))
    return BCMatrix(_bc_rows(args.bc))


def _table(columns, rows):
    payload = {"status": "ok", "columns": columns, "rows": rows}
    lines = [",".join(columns)] + [",".join(r) for r in rows]
    return payload, lines


def _cmd_scatter(args):
    bc = _operator_bc(args)
    rows = []
    for k in _floats(args.k, "--k"):
        s = scattering(bc, k)
        rows.append([
            _fnum(s.k),
            _fnum(s.r_left),
            _fnum(s.t_left),
            _fnum(s.r_right),
            _fnum(s.t_right),
            "nan" if s.singular else _fnum(abs(s.r_left) ** 2),
            "nan" if s.singular else _fnum(abs(s.t_left) ** 2),
            "1" if s.singular else "0",
        ])
    return _table(
        ["k", "r_left", "t_left", "r_right", "t_right",
         "refl_left", "trans_left", "singular"],
        rows,
    )


def _cmd_spectrum(args):
    bc = _operator_bc(args)
    energies = bound_states(bc, kappa_max=args.kappa_max, samples=args.samples)
    rows = [["bound", str(i), _fnum(e)] for i, e in enumerate(energies)]
    if args.grid:
        eps, L, N = _floats(args.grid, "--grid")
        strength = args.strength
        if strength is None:
            if not args.delta:
                raise PreconditionError(
                    "--grid needs --strength unless the operator is --delta"
                )
            strength = complex(parse_scalar(args.delta)).real

        def potential(x):
            return strength * bump(x / eps) / eps

        ham = grid_hamiltonian(L, int(N), potential if strength else None)
        for i, e in enumerate(grid_eigenvalues(ham, args.levels)):
            rows.append(["grid", str(i), _fnum(e)])
    return _table(["source", "index", "energy"], rows)


def _cmd_weaklimit(args):
    F = parse_dist(args.dist)
    t = parse_poly(args.test)
    exact = complex(weak_limit_value(F, t, args.order, args.side))
    rows = []
    for eps in _floats(args.eps, "--eps"):
        val = mollified_pairing(F, t, args.order, args.side, eps)
        rows.append([
            _fnum(eps), _fnum(val), _fnum(exact), _fnum(abs(val - exact)),
        ])
    return _table(["eps", "value", "exact", "abs_error"], rows)


# -- parser -----------------------------------------------------------------


def build_parser():
    top = argparse.ArgumentParser(
        prog="deltastar",
        description="one-sided distribution products and point interactions",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("product", help="evaluate an expression to canonical form")
    p.add_argument("expr")
    p.add_argument("--n-cap", type=int, default=None,
                   help="regularity cap on delta orders")
    common(p)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("classify", help="classify a point potential")
    for name in ("c1", "c2", "b1", "b2"):
        p.add_argument("--" + name, default="0", metavar="SCALAR")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("represent", help="find operator specs for conditions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--interacting", metavar="a,b,c")
    g.add_argument("--separating", metavar="am,bm,ap,bp")
    g.add_argument("--bc", metavar="f1;f2")
    p.add_argument("--k1", help="coupling split for the conjugate-pair family")
    p.add_argument("--b1", help="free b1 for the opposite-sign family")
    p.add_argument("--c1", help="free coupling override")
    p.add_argument("--c2", help="free coupling override")
    common(p)
    p.set_defaults(func=_cmd_represent)

    def operator_flags(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--delta", metavar="A", help="delta potential strength")
        g.add_argument("--theta", metavar="TH", help="delta-prime parameter")
        g.add_argument("--potential", metavar="c1,c2,b1,b2")
        g.add_argument("--deltaprime", metavar="c,d,e,f")
        g.add_argument("--bc", metavar="f1;f2")

    p = sub.add_parser("scatter", help="reflection/transmission table")
    operator_flags(p)
    p.add_argument("--k", default="1", metavar="K1,K2,...")
    common(p)
    p.set_defaults(func=_cmd_scatter)

    p = sub.add_parser("spectrum", help="bound-state energies")
    operator_flags(p)
    p.add_argument("--kappa-max", type=float, default=50.0)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--grid", metavar="EPS,L,N", default=None,
                   help="also diagonalize the mollified potential on a grid")
    p.add_argument("--strength", type=float, default=None,
                   help="coupling of the mollified delta on the grid "
                        "(defaults to the --delta strength)")
    p.add_argument("--levels", type=int, default=1,
                   help="grid eigenvalues to print")
    common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("weaklimit", help="mollified one-sided limit errors")
    p.add_argument("--dist", required=True, metavar="EXPR")
    p.add_argument("--test", default="1", metavar="POLY")
    p.add_argument("--order", type=int, default=0, choices=(0, 1))
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--eps", default="0.1,0.05,0.025")
    common(p)
    p.set_defaults(func=_cmd_weaklimit)

    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        payload, lines = args.func(args)
    except ExprError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except (PreconditionError, AlgebraError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
