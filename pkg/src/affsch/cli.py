"""Command-line frontend: analyses, poset dumps, property sweeps, loop checks.

Subcommands:
  analyze    stratum-by-stratum smoothness report for one orbit closure
  poset      dominant strata below mu and the labelled covering edges
  verify     named property sweep; exit 1 with counterexamples on failure
  loopcheck  symbolic loop-algebra inventory for one twisted datum

Output is text by default, JSON with --json; identical inputs give
byte-identical JSON (randomized sweeps take --seed, echoed in the output).
Exit codes: 0 success, 1 failed property sweep, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from affsch import __version__
from affsch.loopalg import (
    ad_exp,
    cartan_direction,
    loop_context,
    make_e_a,
    matrix_realization,
    realize,
    root_lines_at_degree,
)
from affsch.rootsys import Coweight, two_rho_pairing
from affsch.schubert import certificate, minimal_degenerations, smooth_locus_report
from affsch.twist import cartan_sigma_dim, sigma_affine_to_relative, twisted_datum
from affsch.verify import SUITES, run_suite, vector_rows

SCHEMA_VERSION = 1


def _document(command: str, request: dict, result: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "affsch", "version": __version__},
        "command": command,
        "request": request,
        "result": result,
    }


def _parse_vector(text: str, rank: int, name: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"{name} must be a comma-separated integer vector") from None
    if len(values) != rank:
        raise ValueError(f"{name} must have {rank} entries for this type, got {len(values)}")
    return values


def _describe_datum(datum) -> dict:
    return {
        "label": datum.label,
        "absolute": datum.absolute.label,
        "order": datum.e,
        "vertex": datum.vertex,
        "relative": {
            "label": datum.echelonnage.label,
            "rank": datum.echelonnage.rank,
            "simple_half_norms": list(datum.echelonnage.half_norms),
        },
    }


def _certificate_dict(cert) -> dict:
    return {
        "lambda": list(cert.lam.pairings),
        "dim": cert.dim,
        "root_bound": cert.root_bound,
        "cartan_extra": cert.cartan_extra,
        "total": cert.root_bound + cert.cartan_extra,
        "verdict": cert.verdict,
    }


# -- analyze -------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    datum = twisted_datum(args.type)
    system = datum.echelonnage
    mu_vec = _parse_vector(args.mu, system.rank, "--mu")
    if any(v < 0 for v in mu_vec):
        raise ValueError("--mu must be dominant: all entries nonnegative")
    mu = Coweight(system, mu_vec)
    report = smooth_locus_report(mu, datum)
    strata = []
    for stratum in report.strata:
        strata.append(
            {
                "lambda": list(stratum.lam.pairings),
                "dimension": two_rho_pairing(stratum.lam),
                "status": stratum.status,
                "mechanism": stratum.mechanism,
                "certificate": _certificate_dict(stratum.certificate)
                if stratum.certificate
                else None,
                "via": list(stratum.via.pairings) if stratum.via else None,
            }
        )
    focus = None
    if args.lam is not None:
        lam = Coweight(system, _parse_vector(args.lam, system.rank, "--lambda"))
        focus = _certificate_dict(certificate(mu, lam, datum))
    result = {
        "datum": _describe_datum(datum),
        "mu": list(mu_vec),
        "dimension": two_rho_pairing(mu),
        "strata": strata,
        "focus": focus,
    }
    if args.json:
        _emit_json("analyze", _request_fields(args), result)
    else:
        d = result["datum"]
        print(
            f"datum {d['label']}: absolute {d['absolute']}, order {d['order']}, "
            f"vertex {d['vertex']}"
        )
        rel = d["relative"]
        norms = ",".join(str(n) for n in rel["simple_half_norms"])
        print(f"relative system {rel['label']} (rank {rel['rank']}, half-norms {norms})")
        print(f"mu = {tuple(mu_vec)}, dimension {result['dimension']}")
        print("strata:")
        for row in strata:
            line = (
                f"  {tuple(row['lambda'])}  dim {row['dimension']}"
                f"  {row['status']}  [{row['mechanism']}]"
            )
            if row["certificate"]:
                c = row["certificate"]
                line += (
                    f" root bound {c['root_bound']} + cartan {c['cartan_extra']}"
                    f" = {c['total']} vs dim {c['dim']}"
                )
            if row["via"]:
                line += f" via {tuple(row['via'])}"
            print(line)
        if focus:
            print(
                f"focus lambda {tuple(focus['lambda'])}: {focus['verdict']}"
                f" (root bound {focus['root_bound']} + cartan {focus['cartan_extra']}"
                f" = {focus['total']} vs dim {focus['dim']})"
            )
    return 0


# -- poset ---------------------------------------------------------------------


def _cmd_poset(args) -> int:
    datum = twisted_datum(args.type)
    system = datum.echelonnage
    mu_vec = _parse_vector(args.mu, system.rank, "--mu")
    if any(v < 0 for v in mu_vec):
        raise ValueError("--mu must be dominant: all entries nonnegative")
    mu = Coweight(system, mu_vec)
    edges = minimal_degenerations(mu)
    strata = sorted(
        {edge.mu.pairings for edge in edges}
        | {edge.lam.pairings for edge in edges}
        | {mu.pairings},
        key=lambda p: (-sum(h * v for h, v in zip(system.two_rho_coefficients, p)), p),
    )
    result = {
        "datum": _describe_datum(datum),
        "mu": list(mu_vec),
        "strata": [list(p) for p in strata],
        "edges": [
            {
                "upper": list(edge.mu.pairings),
                "lower": list(edge.lam.pairings),
                "case": edge.stembridge_case,
                "support": list(edge.support_indices),
            }
            for edge in edges
        ],
    }
    if args.json:
        _emit_json("poset", _request_fields(args), result)
    else:
        print(f"strata below mu = {tuple(mu_vec)} in {system.label}: {len(strata)}")
        for p in strata:
            print(f"  {tuple(p)}  dim {sum(h * v for h, v in zip(system.two_rho_coefficients, p))}")
        print(f"covering edges: {len(edges)}")
        for row in result["edges"]:
            print(
                f"  {tuple(row['upper'])} > {tuple(row['lower'])}"
                f"  case {row['case']}  support {row['support']}"
            )
    return 0


# -- verify ----------------------------------------------------------------------


def _cmd_verify(args) -> int:
    outcome = run_suite(
        args.suite,
        max_rank=args.max_rank,
        max_pairing=args.max_pairing,
        window=args.window,
        seed=args.seed,
        jobs=args.jobs,
    )
    result = asdict(outcome)
    result["instances"] = list(result["instances"])
    result["counterexamples"] = list(result["counterexamples"])
    if args.json:
        _emit_json("verify", _request_fields(args), result)
    else:
        status = "PASS" if outcome.passed else "FAIL"
        print(f"suite {outcome.suite}: {status} ({outcome.instances_checked} instances)")
        if outcome.seed is not None:
            print(f"seed {outcome.seed}")
        if outcome.details.get("histogram"):
            print("case histogram:")
            for label, cases in outcome.details["histogram"].items():
                shown = ", ".join(f"case {c}: {n}" for c, n in cases.items())
                print(f"  {label}: {shown}")
        for row in outcome.counterexamples:
            print(f"  counterexample: {json.dumps(row, sort_keys=True)}")
    return 0 if outcome.passed else 1


# -- loopcheck --------------------------------------------------------------------


def _cmd_loopcheck(args) -> int:
    datum = twisted_datum(args.type)
    loop_context(datum)  # raises for types without a symbolic model
    window = args.window
    if not 0 <= window <= 8:
        raise ValueError("--window must be between 0 and 8")
    degrees = []
    for n in range(-window, window + 1):
        lines = root_lines_at_degree(datum, n)
        vectors = []
        for root, level in lines:
            rel = sigma_affine_to_relative(datum, (root, level))
            vectors.append(
                {
                    "root": list(root),
                    "sigma_level": level,
                    "case": rel.case,
                    "terms": vector_rows(make_e_a(datum, rel)),
                }
            )
        degrees.append({"degree": n, "lines": len(lines), "vectors": vectors})
    directions = []
    for root in datum.echelonnage.roots:
        try:
            vec = cartan_direction(datum, (root, -1))
        except ValueError:
            continue
        directions.append({"root": list(root), "level": -1, "terms": vector_rows(vec)})
    result = {
        "datum": _describe_datum(datum),
        "window": window,
        "degrees": degrees,
        "cartan_directions": directions,
        "special": _loopcheck_special(datum),
    }
    if args.json:
        _emit_json("loopcheck", _request_fields(args), result)
    else:
        print(f"datum {datum.label}: root lines by u-degree (window {window})")
        for row in degrees:
            print(f"  degree {row['degree']:>3}: {row['lines']} lines")
        print(f"cartan directions at level -1: {len(directions)}")
        for row in directions:
            terms = "; ".join(
                f"H_{t['index']} u^{t['degree']} * {t['coeff']}" for t in row["terms"]
            )
            print(f"  root {tuple(row['root'])}: {terms}")
        for key, value in result["special"].items():
            print(f"{key}: {json.dumps(value, sort_keys=True)}")
    return 0


def _loopcheck_special(datum) -> dict:
    special: dict = {}
    if datum.label == "A1":
        ctx = loop_context(datum)
        from affsch.loopalg import LoopVector

        x = LoopVector.make(ctx.algebra, 1, [(("X", (-1,)), -1, 1)])
        y = LoopVector.make(ctx.algebra, 1, [(("X", (1,)), 0, 1)])
        special["sl2_expansion"] = vector_rows(ad_exp(x, y))
    elif datum.label == "2A2":
        e_a = make_e_a(datum, sigma_affine_to_relative(datum, ((1,), -1)))
        e_b = make_e_a(datum, sigma_affine_to_relative(datum, ((-1,), 0)))
        table = matrix_realization("A2", 2)
        h = realize(e_b, table).exp_nilpotent()
        h_inv = realize(e_b.scale(-1), table).exp_nilpotent()
        conjugated = h @ realize(e_a, table) @ h_inv
        diagonal = []
        for i in range(3):
            cell = conjugated.entry(i, i)
            value = cell.get(-1)
            diagonal.append(str(value.a) if value else "0")
        special["su3_diagonal_at_degree_minus_one"] = diagonal
        special["su3_trace_zero"] = conjugated.trace() == {}
    elif datum.label == "3D4":
        vec = cartan_direction(datum, ((0, 1), -1))
        special["triality_line"] = {
            "invariant_cartan_dim": cartan_sigma_dim(datum, 1),
            "vector": vector_rows(vec),
        }
    return special


# -- plumbing ----------------------------------------------------------------------


def _request_fields(args) -> dict:
    fields = {}
    for key in ("type", "mu", "suite", "window", "max_rank", "max_pairing", "seed", "jobs"):
        fields[key] = getattr(args, key, None)
    fields["lambda"] = getattr(args, "lam", None)
    for key in ("mu", "lambda"):
        if isinstance(fields[key], str):
            fields[key] = [int(part) for part in fields[key].split(",")]
    return fields


def _emit_json(command: str, request: dict, result: dict) -> None:
    print(json.dumps(_document(command, request, result), indent=2, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    default_jobs = int(os.environ.get("AFFSCH_JOBS", "1"))
    parser = argparse.ArgumentParser(
        prog="affsch",
        description="Exact smoothness analysis for orbit closures in twisted affine Grassmannians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="stratum-by-stratum smoothness report")
    analyze.add_argument("--type", required=True, help="twisted type label, e.g. 3D4, 2A3, C2")
    analyze.add_argument("--mu", required=True, help="dominant coweight, comma-separated pairings")
    analyze.add_argument("--lambda", dest="lam", default=None, help="focus stratum")
    analyze.add_argument("--json", action="store_true")
    analyze.set_defaults(func=_cmd_analyze)

    poset = sub.add_parser("poset", help="dominant strata and labelled covering edges")
    poset.add_argument("--type", required=True)
    poset.add_argument("--mu", required=True)
    poset.add_argument("--json", action="store_true")
    poset.set_defaults(func=_cmd_poset)

    verify = sub.add_parser("verify", help="run a named property sweep")
    verify.add_argument("--suite", required=True, choices=SUITES)
    verify.add_argument("--max-rank", dest="max_rank", type=int, default=4)
    verify.add_argument("--max-pairing", dest="max_pairing", type=int, default=14)
    verify.add_argument("--window", type=int, default=4)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--jobs", type=int, default=default_jobs)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=_cmd_verify)

    loopcheck = sub.add_parser("loopcheck", help="symbolic loop-algebra inventory")
    loopcheck.add_argument("--type", required=True)
    loopcheck.add_argument("--window", type=int, default=2)
    loopcheck.add_argument("--json", action="store_true")
    loopcheck.set_defaults(func=_cmd_loopcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
