"""Command line interface: `monotoric <command> ...`."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cohomology as coh
from . import division as dv
from . import fan as fn
from . import sections as sc
from .errors import (BoundViolationError, ConstructionError, ContinuationError,
                     DegeneracyError, InputError, IntegrityError, ModelDisagreementError,
                     PreconditionError, ToricError, UnsupportedError)
from .io import Workspace, dump_report, parse_int_list
from .lattice.polyhedron import lattice_points, polyhedron_is_empty, vertices

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _cone(F, c) -> str:
    return "<" + ",".join(_vec(F.rays[i]) for i in sorted(c)) + ">"


# -- commands -----------------------------------------------------------------------------

def cmd_fan_validate(args, ws):
    rep = fn.validate_fan(ws.fan)
    words = ["complete" if rep.complete else "incomplete",
             "smooth" if rep.smooth else "singular",
             "simplicial" if rep.simplicial else "non-simplicial"]
    report = {"derived": {"complete": rep.complete, "smooth": rep.smooth,
                          "simplicial": rep.simplicial, "rays": len(ws.fan.rays),
                          "max_cones": len(ws.fan.max_cones)}}
    return report, " ".join(words)


def cmd_fan_star(args, ws):
    F = ws.fan
    alpha = parse_int_list(args.ray)
    cones = fn.star(F, alpha)
    lines = [f"star of {_vec(alpha)}: {len(cones)} cones"]
    lines += ["  " + _cone(F, c) for c in cones]
    derived = {"ray": alpha, "cones": [sorted(c) for c in cones]}
    if args.point:
        v = parse_int_list(args.point)
        mem = fn.interior_membership(F, alpha, v)
        derived["membership"] = {"point": v, "status": mem}
        lines.append(f"{_vec(v)}: {mem}")
    return {"derived": derived}, "\n".join(lines)


def cmd_divisor_polytope(args, ws):
    D = ws.divisor(args.divisor)
    P = fn.divisor_polytope(ws.fan, D)
    if polyhedron_is_empty(P):
        return {"derived": {"empty": True, "vertices": [], "lattice_points": 0}}, "empty polytope"
    V = vertices(P)
    pts = lattice_points(P)
    text = "vertices: " + " ".join(_vec(v) for v in V) + f"\nlattice points: {len(pts)}"
    return {"derived": {"empty": False, "vertices": V, "lattice_points": len(pts)}}, text


def cmd_divisor_ample(args, ws):
    D = ws.divisor(args.divisor)
    psi = fn.support_function(ws.fan, D)
    ample = fn.is_ample(ws.fan, D)
    lines = [f"ample: {'yes' if ample else 'no'}"]
    lines += [f"  m{_cone(ws.fan, c)} = {_vec(m)}" for c, m in zip(ws.fan.max_cones, psi.linear_parts)]
    derived = {"ample": ample,
               "linear_parts": [{"cone": list(c), "m": m}
                                for c, m in zip(ws.fan.max_cones, psi.linear_parts)]}
    return {"derived": derived}, "\n".join(lines)


def cmd_divisor_class(args, ws):
    D0 = ws.divisor(args.divisor)
    D1 = ws.divisor(args.other) if args.other else fn.ToricDivisor((0,) * ws.fan.n_rays)
    eq = fn.pic_class_eq(ws.fan, D0, D1)
    rank = fn.pic_rank(ws.fan)
    return ({"derived": {"equal": eq, "pic_rank": rank}},
            f"same class: {'yes' if eq else 'no'}\nPicard rank: {rank}")


def cmd_division_build(args, ws):
    F = ws.fan
    lc = [Fraction(x) for x in args.logc.split(",")] if args.logc else None
    if args.mode == "tropical":
        div = dv.tropical_division(F.rays, lc, args.slack)
    elif args.mode == "norm2d":
        k = dv.exponents_2d(F.rays, F)
        div = dv.MonomialDivision(F.rays, k, lc or (0,) * F.n_rays, args.slack)
    else:
        if not args.divisor:
            raise InputError("--mode from-ample needs --divisor")
        k = dv.exponents_from_ample(F, ws.divisor(args.divisor))
        div = dv.MonomialDivision(F.rays, k, lc or (0,) * F.n_rays, args.slack)
    data = div.to_dict()
    adapted = dv.is_adapted(div, F).adapted
    if args.out:
        path = ws.output_path(args.out)
        path.write_text(dump_report(data), encoding="utf-8")
    text = dump_report(data).rstrip() + f"\nadapted: {'yes' if adapted else 'no'}"
    return {"derived": {"division": data, "adapted": adapted}}, text


def cmd_division_check(args, ws):
    F = ws.fan
    div = ws.division(args.division)
    rep = dv.is_adapted(div, F)
    if rep.adapted:
        text = "ADAPTED"
    else:
        text = "\n".join(
            f"NOT ADAPTED: witness α={_vec(a)} σ=<{','.join(_vec(r) for r in cone)}> ray={_vec(ray)}"
            for a, cone, ray in rep.witnesses)
    derived = {"adapted": rep.adapted,
               "witnesses": [{"ray": a, "cone": c, "certificate": r} for a, c, r in rep.witnesses]}
    return {"derived": derived}, text


def _table(n, g) -> str:
    lines = ["weight           " + " ".join(f"h{p}" for p in range(n + 1))]
    weights = sorted({m for (_, m) in g.dims})
    for m in weights:
        row = " ".join(f"{g.dims.get((p, m), 0):>2}" for p in range(n + 1))
        lines.append(f"{_vec(m):<16} {row}")
    lines.append("total            " + " ".join(f"{t:>2}" for t in g.totals(n)))
    return "\n".join(lines)


def cmd_cohomology(args, ws):
    F = ws.fan
    D = ws.divisor(args.divisor)
    g = coh.line_bundle_cohomology(F, D, args.model, experimental=args.experimental)
    checks = {"shell_vanishes": True}
    if args.model == "all":
        checks["models_agree"] = True
    report = {"derived": {"divisor": list(D), "model": args.model,
                          "triples": [{"weight": m, "degree": p, "dim": v}
                                      for m, p, v in g.triples()],
                          "totals": g.totals(F.dim)},
              "checks": checks}
    text = _table(F.dim, g)
    if args.model == "all":
        text += "\nmodels agree"
    return report, text


def cmd_hom(args, ws):
    F = ws.fan
    nu0 = sc.SectionClass(F, parse_int_list(getattr(args, "from")))
    nu1 = sc.SectionClass(F, parse_int_list(args.to))
    g = coh.hom_graded_dims(F, nu0, nu1, args.model)
    report = {"derived": {"from": nu0.nu, "to": nu1.nu, "model": args.model,
                          "triples": [{"weight": m, "degree": p, "dim": v}
                                      for m, p, v in g.triples()],
                          "totals": g.totals(F.dim)}}
    return report, _table(F.dim, g)


def cmd_ring(args, ws):
    R = coh.section_ring(ws.fan, ws.divisor(args.divisor), args.kmax)
    text = "dims: " + " ".join(str(d) for d in R.dims) + "\nproducts: (p,q) -> p+q, coefficient 1"
    return {"derived": {"dims": R.dims, "pieces": R.pieces},
            "checks": {"closed": True, "associative": True}}, text


def cmd_monodromy_twist(args, ws):
    F = ws.fan
    D = ws.divisor(args.divisor)
    nu = sc.SectionClass(F, parse_int_list(args.section))
    phi = sc.MonodromyFunctor(D)
    out = nu
    for _ in range(args.times):
        out = sc.monodromy_apply(phi, out)
    div = sc.divisor_from_section(out)
    text = f"section: {_vec(out.nu)}\nline bundle: O({' + '.join(f'{c}*D{i}' for i, c in enumerate(div))})"
    return {"derived": {"section": out.nu, "divisor": list(div)}}, text


def cmd_localize(args, ws):
    F = ws.fan
    res = coh.localize(F, ws.divisor(args.cut), ws.divisor(args.bundle), args.box)
    lines = ["weight           dim  stabilizes-at  subfan"]
    for m in sorted(res.dims):
        lines.append(f"{_vec(m):<16} {res.dims[m]:>3}  {res.stabilization[m]:>13}  {res.subfan_dims[m]:>6}")
    lines.append("subfan cross-check: " + ("agrees" if res.agrees else "DISAGREES"))
    report = {"derived": {"weights": [{"weight": m, "dim": res.dims[m],
                                       "stabilization": res.stabilization[m]}
                                      for m in sorted(res.dims)]},
              "checks": {"subfan_agrees": res.agrees}}
    if not res.agrees:
        raise IntegrityError("localization disagrees with the subfan Cech computation")
    return report, "\n".join(lines)


def cmd_track(args, ws):
    from . import tracker as tk
    F = ws.fan
    D = ws.divisor(args.twist)
    cfg = tk.SuperpotentialConfig(F.rays, (1.0,) * F.n_rays, tuple(D), args.steps)
    tr = tk.track_monodromy(cfg, seed=args.seed)
    lines = []
    header = "theta " + " ".join(f"re{i} im{i}" for i in range(len(tr.values)))
    lines.append(header)
    for k, t in enumerate(tr.thetas):
        vals = " ".join(f"{v.real:.12f} {v.imag:.12f}" for v in tr.values[:, k])
        lines.append(f"{t:.12f} {vals}")
    table = "\n".join(lines) + "\n"
    if args.out:
        ws.output_path(args.out).write_text(table, encoding="utf-8")
    if args.plot:
        from .plotting import plot_trace
        plot_trace(tr, ws.output_path(args.plot))
    summary = (f"critical points: {len(tr.permutation)}\n"
               f"permutation: {list(tr.permutation)}\n"
               f"cycle type: {tr.cycle_type()}\n"
               f"windings: {[round(w, 9) for w in tr.windings]}")
    report = {"derived": {"permutation": tr.permutation, "cycle_type": tr.cycle_type(),
                          "windings": [round(w, 12) for w in tr.windings],
                          "steps": args.steps}}
    return report, summary if args.out else table + summary


def cmd_plot(args, ws):
    from .plotting import plot_division
    div = ws.division(args.division) if args.division else None
    out = ws.output_path(args.out)
    plot_division(ws.fan, div, out, view=args.view)
    return {"derived": {"out": str(out)}}, f"wrote {out}"


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monotoric", description="Toric mirror-symmetry bookkeeping tools.")
    p.add_argument("--json", action="store_true", help="print a machine-readable report")
    p.add_argument("--output-dir", help="directory for output files (default: $MONOTORIC_OUTPUT_DIR or .)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    fan = sub.add_parser("fan").add_subparsers(dest="action", parser_class=_Parser)
    q = fan.add_parser("validate")
    q.add_argument("fan")
    q.set_defaults(func=cmd_fan_validate)
    q = fan.add_parser("star")
    q.add_argument("fan")
    q.add_argument("--ray", required=True)
    q.add_argument("--point")
    q.set_defaults(func=cmd_fan_star)

    divisor = sub.add_parser("divisor").add_subparsers(dest="action", parser_class=_Parser)
    for name, func in (("polytope", cmd_divisor_polytope), ("ample", cmd_divisor_ample),
                       ("class", cmd_divisor_class)):
        q = divisor.add_parser(name)
        q.add_argument("fan")
        q.add_argument("--divisor", required=True)
        if name == "class":
            q.add_argument("--other")
        q.set_defaults(func=func)

    division = sub.add_parser("division").add_subparsers(dest="action", parser_class=_Parser)
    q = division.add_parser("build")
    q.add_argument("fan")
    q.add_argument("--mode", choices=["tropical", "norm2d", "from-ample"], default="tropical")
    q.add_argument("--divisor")
    q.add_argument("--logc", help="comma separated log-coefficients")
    q.add_argument("--slack", default="0")
    q.add_argument("--out")
    q.set_defaults(func=cmd_division_build)
    q = division.add_parser("check")
    q.add_argument("--fan", required=True)
    q.add_argument("division", help="division file, or a division name from the fan file")
    q.set_defaults(func=cmd_division_check)

    q = sub.add_parser("cohomology")
    q.add_argument("--fan", required=True)
    q.add_argument("--divisor", required=True)
    q.add_argument("--model", choices=["cech", "polytope", "points", "all"], default="cech")
    q.add_argument("--experimental", action="store_true")
    q.set_defaults(func=cmd_cohomology)

    q = sub.add_parser("hom")
    q.add_argument("--fan", required=True)
    q.add_argument("--from", required=True)
    q.add_argument("--to", required=True)
    q.add_argument("--model", choices=["cech", "polytope", "points", "all"], default="cech")
    q.set_defaults(func=cmd_hom)

    q = sub.add_parser("ring")
    q.add_argument("--fan", required=True)
    q.add_argument("--divisor", required=True)
    q.add_argument("--kmax", type=int, default=3)
    q.set_defaults(func=cmd_ring)

    mono = sub.add_parser("monodromy").add_subparsers(dest="action", parser_class=_Parser)
    q = mono.add_parser("twist")
    q.add_argument("--fan", required=True)
    q.add_argument("--divisor", required=True)
    q.add_argument("--section", required=True)
    q.add_argument("--times", type=int, default=1)
    q.set_defaults(func=cmd_monodromy_twist)

    q = sub.add_parser("localize")
    q.add_argument("--fan", required=True)
    q.add_argument("--cut", required=True)
    q.add_argument("--bundle", required=True)
    q.add_argument("--box", type=int, required=True)
    q.set_defaults(func=cmd_localize)

    q = sub.add_parser("track")
    q.add_argument("--fan", required=True)
    q.add_argument("--twist", required=True)
    q.add_argument("--steps", type=int, default=256)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q.add_argument("--plot")
    q.set_defaults(func=cmd_track)

    q = sub.add_parser("plot")
    q.add_argument("--fan", required=True)
    q.add_argument("--division")
    q.add_argument("--out", required=True)
    q.add_argument("--view", type=int, default=4)
    q.set_defaults(func=cmd_plot)
    return p


_INPUT_ERRORS = (InputError, PreconditionError, UnsupportedError)
_COMPUTE_ERRORS = (ConstructionError, IntegrityError, ModelDisagreementError,
                   BoundViolationError, ContinuationError, DegeneracyError)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError(parser.format_help())
        fan_path = args.fan
        ws = Workspace(fan_path, output_dir=args.output_dir)
        fn.validate_fan(ws.fan)
        report, text = args.func(args, ws)
    except UsageError as exc:
        print(str(exc).rstrip(), file=stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ModelDisagreementError as exc:
        print(f"error: {exc}", file=stderr)
        for item in exc.offending[:20]:
            print(f"  weight {_vec(item[0])} degree {item[1]}", file=stderr)
        return EXIT_COMPUTE
    except _COMPUTE_ERRORS as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_COMPUTE
    except ToricError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_COMPUTE
    if args.json:
        report = {"command": " ".join(x for x in (args.command, getattr(args, "action", None)) if x),
                  **report}
        report.setdefault("checks", {})
        stdout.write(dump_report(report))
    else:
        print(text, file=stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
