"""Command-line interface.

Every subcommand prints human-readable text followed by a JSON block
between ``#BEGIN-REPORT`` and ``#END-REPORT`` lines.

Exit codes: 0 success, 1 usage error, 2 parse/validation error,
3 complete-or-empty dichotomy violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import dynamics
from .automorphism import (
    Automorphism,
    AutomorphismError,
    is_positive,
    is_pure,
    is_square,
    pure_power,
)
from .diagram import (
    Violation,
    build_diagram,
    components,
    cycle_analysis,
    is_acyclic,
    terminal_partition,
)
from .io import PARSE_ERRORS, SpecError, export_dot, graph_to_json, parse_spec, spec_to_json
from .words import cyclically_reduce, format_word, normal_form, parse_word, reduce

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2, 3
PURE_POWER_CAP = 2 ** 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vs(G, S) -> list:
    return G.ordered(S)


def verification_block(phi: Automorphism) -> dict:
    purity = is_pure(phi)
    sq = is_square(phi)
    return {
        "relations": True,
        "automorphism": not phi.warnings,
        "pure": {
            "pure": purity.pure,
            "support_ok": purity.support_ok,
            "cyclically_reduced_ok": purity.cyclically_reduced_ok,
        },
        "square": {
            "square": sq.square,
            "witness": None if sq.witness is None else {
                "edge": list(sq.witness[0]), "pair": list(sq.witness[1])},
        },
        "positive": is_positive(phi),
        "warnings": phi.warnings,
    }


def diagram_block(phi: Automorphism) -> dict:
    G = phi.graph
    D = build_diagram(phi)
    C = cycle_analysis(G, D)
    block = {
        "arcs": [list(a) for a in D.arcs()],
        "components": [_vs(G, c) for c in components(D)],
        "acyclic": is_acyclic(D),
        "cycles": [
            {
                "vertices": _vs(G, c.vertices),
                "kind": c.kind.value,
                "witness": None if c.witness is None else {
                    "commuting": list(c.witness[0]), "non_commuting": list(c.witness[1])},
            }
            for c in C.sccs
        ],
        "terminal_partition": None,
    }
    if block["acyclic"]:
        T = terminal_partition(D)
        block["terminal_partition"] = {"layers": [_vs(G, L) for L in T.layers], "height": T.height}
    return block, D, C


def _per_generator_json(per: dict) -> dict:
    out = {}
    for s, entry in per.items():
        if isinstance(entry, dynamics.PolyBound):
            out[s] = {"kind": "polynomial-by-theorem", "degree_bound": entry.degree_bound}
        else:
            out[s] = {"kind": "exponential-estimate", "lambda_hat": entry.lambda_hat}
    return out


def growth_block(report: dynamics.GrowthReport, G) -> dict:
    cls = report.classification
    c = {"kind": cls.name}
    if isinstance(cls, dynamics.PolynomialByTheorem):
        c["degree_bound"] = cls.degree_bound
        c["degree_fits"] = {s: {"degree_hat": d, "residual": r} for s, (d, r) in cls.degree_fits.items()}
    else:
        c["per_generator"] = _per_generator_json(cls.per_generator)
    est = report.estimates
    sub = report.invariant_subgraph
    return {
        "classification": c,
        "estimates": {
            "per_generator": {s: {"lambda_hat": e.lambda_hat, "window": list(e.window)}
                              for s, e in est.per_generator.items()},
            "lambda_phi_hat": est.lambda_phi_hat,
            "argmax_generator": est.argmax_generator,
        },
        "orbits": {s: {"lengths": list(o.lengths), "truncated": o.truncated}
                   for s, o in report.orbits.items()},
        "invariant_subgraph": None if sub is None else {
            "starting_generator": sub.starting_generator,
            "down_set": _vs(G, sub.down_set),
            "trimmed": _vs(G, sub.trimmed),
            "delta": _vs(G, sub.delta),
            "kind": sub.kind.value,
            "core": None if sub.core is None else _vs(G, sub.core),
        },
        "warnings": list(report.warnings),
    }


def _emit(out, text_lines, report) -> None:
    for line in text_lines:
        print(line, file=out)
    print("#BEGIN-REPORT", file=out)
    print(json.dumps(report, indent=2), file=out)
    print("#END-REPORT", file=out)


def _load(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    spec = parse_spec(data)
    return spec, spec.automorphism()


def _flag_lines(v: dict) -> list:
    pure = v["pure"]
    bad_sup = [s for s, ok in pure["support_ok"].items() if not ok]
    bad_cyc = [s for s, ok in pure["cyclically_reduced_ok"].items() if not ok]
    lines = [
        "relations: ok",
        "automorphism: " + ("verified" if v["automorphism"] else "homomorphism only (no verified inverse)"),
        f"pure: {str(pure['pure']).lower()}"
        + (f" (support fails at {', '.join(bad_sup)})" if bad_sup else "")
        + (f" (image not cyclically reduced at {', '.join(bad_cyc)})" if bad_cyc else ""),
        f"square: {str(v['square']['square']).lower()}",
        f"positive: {str(v['positive']).lower()}",
    ]
    w = v["square"]["witness"]
    if w:
        lines[3] += f" (edge {w['edge'][0]}-{w['edge'][1]}, pair {w['pair'][0]}/{w['pair'][1]} does not commute)"
    return lines


def cmd_check(args, out) -> int:
    spec, phi = _load(args.file)
    v = verification_block(phi)
    _emit(out, _flag_lines(v), {"command": "check", "input": spec_to_json(spec), "verification": v})
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    spec, _ = _load(args.file)
    w = parse_word(spec.graph, args.word)
    r = reduce(w)
    cf = cyclically_reduce(w)
    nf = normal_form(w)
    lines = [
        f"reduced: {format_word(r)} (length {len(r)})",
        f"normal form: {format_word(nf)}",
        f"cyclically reduced core: {format_word(cf.core)}",
        f"conjugator: {format_word(cf.conjugator)}",
    ]
    _emit(out, lines, {
        "command": "reduce", "word": args.word, "reduced": format_word(r), "length": len(r),
        "normal_form": format_word(nf), "core": format_word(cf.core),
        "conjugator": format_word(cf.conjugator),
    })
    return EXIT_OK


def _diagram_lines(block) -> list:
    lines = ["arcs: " + (", ".join(f"{u}->{v}" for u, v in block["arcs"]) or "(none)")]
    lines.append("components: " + " | ".join("{" + ",".join(c) + "}" for c in block["components"]))
    if block["terminal_partition"]:
        T = block["terminal_partition"]
        lines.append(f"acyclic; terminal partition height {T['height']}: "
                     + " < ".join("{" + ",".join(L) + "}" for L in T["layers"]))
    for c in block["cycles"]:
        lines.append(f"cycle class {{{','.join(c['vertices'])}}}: {c['kind']}")
    return lines


def cmd_diagram(args, out) -> int:
    spec, phi = _load(args.file)
    block, D, C = diagram_block(phi)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_dot(D, C))
    _emit(out, _diagram_lines(block), {"command": "diagram", "input": spec_to_json(spec), "diagram": block})
    return EXIT_VIOLATION if C.violations else EXIT_OK


def cmd_analyze(args, out) -> int:
    spec, phi = _load(args.file)
    G = spec.graph
    report = {"command": "analyze", "input": spec_to_json(spec), "pure_power": None}
    lines = []
    if args.pure_power:
        pp = pure_power(phi, PURE_POWER_CAP)
        phi = pp.phi_N
        report["pure_power"] = pp.N
        lines.append(f"pure power: N = {pp.N} (analysing phi^{pp.N})")
    v = verification_block(phi)
    block, D, C = diagram_block(phi)
    report["verification"] = v
    report["diagram"] = block
    lines += _flag_lines(v) + _diagram_lines(block)
    code = EXIT_VIOLATION if C.violations else EXIT_OK
    try:
        g = dynamics.classify_growth(G, phi, args.kmax, args.cap)
    except Violation as exc:
        report["growth"] = None
        report["violation"] = str(exc)
        lines.append(f"violation: {exc}")
        _emit(out, lines, report)
        return EXIT_VIOLATION
    gb = growth_block(g, G)
    report["growth"] = gb
    report["invariant_subgraph"] = gb.pop("invariant_subgraph")
    cls = gb["classification"]
    if cls["kind"] == "polynomial-by-theorem":
        lines.append(f"classification: PolynomialByTheorem({cls['degree_bound']})")
    else:
        lines.append(f"classification: {cls['kind']}")
        for s, e in cls["per_generator"].items():
            detail = (f"polynomial (degree <= {e['degree_bound']})" if "degree_bound" in e
                      else f"lambda_hat = {e['lambda_hat']:.4f}")
            lines.append(f"  {s}: {detail}")
    lines.append(f"lambda_phi_hat = {gb['estimates']['lambda_phi_hat']:.4f} "
                 f"(at {gb['estimates']['argmax_generator']})")
    sub = report["invariant_subgraph"]
    if sub:
        extra = f", core {{{','.join(sub['core'])}}}" if sub["core"] else ""
        lines.append(f"invariant subgraph: {{{','.join(sub['delta'])}}} ({sub['kind']}{extra})")
    lines += [f"warning: {w}" for w in gb["warnings"]]
    _emit(out, lines, report)
    return code


def cmd_dilatation(args, out) -> int:
    spec, phi = _load(args.file)
    orbits = dynamics.iterate_lengths(phi, args.kmax, args.cap)
    est = dynamics.estimate_dilatation(orbits)
    lines = [f"{'gen':<8}{'lambda_hat':>12}  {'k':>4}  lengths"]
    for s, o in orbits.items():
        tail = ", ".join(str(x) for x in o.lengths[-4:])
        mark = " (truncated)" if o.truncated else ""
        lines.append(f"{s:<8}{est.per_generator[s].lambda_hat:>12.4f}  {o.k_last:>4}  ...{tail}{mark}")
    lines.append(f"lambda_phi_hat = {est.lambda_phi_hat:.4f} (at {est.argmax_generator})")
    _emit(out, lines, {
        "command": "dilatation",
        "graph": graph_to_json(spec.graph),
        "generators": {
            s: {"lengths": list(o.lengths), "truncated": o.truncated,
                "lambda_hat": est.per_generator[s].lambda_hat}
            for s, o in orbits.items()
        },
        "lambda_phi_hat": est.lambda_phi_hat,
        "argmax_generator": est.argmax_generator,
    })
    return EXIT_OK


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="raagdyn", description="Growth dynamics of RAAG automorphisms.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="verify relations, purity, squareness, positivity")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reduce", help="reduced and cyclically reduced forms of a word")
    r.add_argument("file")
    r.add_argument("--word", required=True)
    r.set_defaults(func=cmd_reduce)

    d = sub.add_parser("diagram", help="automorphism diagram, components, cycle classes")
    d.add_argument("file")
    d.add_argument("--dot", metavar="PATH")
    d.set_defaults(func=cmd_diagram)

    a = sub.add_parser("analyze", help="full analysis report")
    a.add_argument("file")
    a.add_argument("--kmax", type=_positive, default=dynamics.DEFAULT_KMAX)
    a.add_argument("--cap", type=_positive, default=dynamics.DEFAULT_CAP)
    a.add_argument("--pure-power", action="store_true")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("dilatation", help="orbit lengths and dilatation estimates")
    g.add_argument("file")
    g.add_argument("--kmax", type=_positive, required=True)
    g.add_argument("--cap", type=_positive, default=dynamics.DEFAULT_CAP)
    g.set_defaults(func=cmd_dilatation)
    return p


def run_command(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        dynamics.default_threads()
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except Violation as exc:
        print(f"violation: {exc}", file=err)
        return EXIT_VIOLATION
    except (*PARSE_ERRORS, AutomorphismError, dynamics.OrbitTooShort) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID


def main(argv: Optional[list] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
