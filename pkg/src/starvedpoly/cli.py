"""Command-line front end.

Subcommands: lattice (composition lattice of d), classify, occurs, atoms,
subdisc, mesh, verify.  Outputs are deterministic: identical inputs and seed
produce byte-identical JSON/CSV/DOT, and every output embeds the library
version, the full effective configuration, and the input echo.

Exit codes: 0 success, 1 usage error, 2 solver or numeric error,
3 hypothesis violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .compositions import (
    Composition,
    covers_of,
    enumerate_compositions,
    join,
    upward_closure,
)
from .config import DEFAULT_CONFIG, DEFAULT_SEED, SolverConfig
from .errors import (
    HypothesisViolation,
    SolverError,
    StarvedPolyError,
    UsageError,
)
from .polynomials import MonicPoly, RootMultiset, from_roots
from .stratify import (
    brute_force_occurring,
    build_lattice,
    compute_U,
    occurrence_table,
    verify_lattice_properties,
)
from .subresultants import Certificate, count_distinct_roots, hyperbolicity_certificate, subdiscriminants
from .vandermonde import StratumSolver, classify_stratum


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; the contract wants 1."""

    def error(self, message):
        raise UsageError(message)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _parse_numbers(text: str, flag: str, kind=float) -> list:
    try:
        return [kind(part.strip()) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"{flag} expects a comma-separated list: {exc}") from exc


def _poly_from_args(args) -> MonicPoly:
    has_coeffs = getattr(args, "coeffs", None) is not None
    has_roots = getattr(args, "roots", None) is not None
    if has_coeffs == has_roots:
        raise UsageError("provide exactly one of --coeffs or --roots")
    if has_coeffs:
        return MonicPoly(tuple(_parse_numbers(args.coeffs, "--coeffs")))
    roots = _parse_numbers(args.roots, "--roots")
    if getattr(args, "mults", None) is not None:
        mults = _parse_numbers(args.mults, "--mults", kind=int)
    else:
        mults = [1] * len(roots)
    return from_roots(RootMultiset(tuple(roots), tuple(mults)))


def _comp_from_args(args) -> Composition:
    return Composition(tuple(_parse_numbers(args.u, "--u", kind=int)))


def _config_from_args(args) -> SolverConfig:
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("STARVED_POLY_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError as exc:
                raise UsageError(f"STARVED_POLY_SEED must be an integer, got {env!r}") from exc
        else:
            seed = DEFAULT_SEED
    overrides = {"seed": seed}
    if getattr(args, "tol_hyper", None) is not None:
        overrides["hyper_tol_rel"] = args.tol_hyper
    if getattr(args, "tol_cluster", None) is not None:
        overrides["cluster_tol_rel"] = args.tol_cluster
    if getattr(args, "tol_residual", None) is not None:
        overrides["verify_tol"] = args.tol_residual
    return DEFAULT_CONFIG.replace(**overrides)


def _metadata(args, config: SolverConfig, extra_input: dict) -> dict:
    return {
        "version": __version__,
        "command": args.command,
        "seed": config.seed,
        "config": config.as_dict(),
        "input": extra_input,
    }


def _ckey(u: Composition):
    return tuple(sorted(u.proper_sums()))


def _comp_list(comps) -> list:
    return [list(u.parts) for u in sorted(comps, key=_ckey)]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_lattice(args) -> int:
    if args.d < 1:
        raise UsageError(f"--d must be at least 1, got {args.d}")
    min_len = args.min_len if args.min_len is not None else 1
    if not 1 <= min_len <= args.d:
        raise UsageError(f"--min-len must be in 1..{args.d}, got {min_len}")
    comps = enumerate_compositions(args.d, min_len, args.d)
    index = {u: i for i, u in enumerate(comps)}
    edges = sorted(
        (index[u], index[v]) for u in comps for v in covers_of(u) if v in index
    )
    config = _config_from_args(args)
    if args.format == "dot":
        lines = ["digraph composition_lattice {", "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']
        for i, u in enumerate(comps):
            lines.append(f'  n{i} [label="{u}"];')
        for i, j in edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "json":
        doc = {
            "metadata": _metadata(args, config, {"d": args.d, "min_len": min_len}),
            "nodes": [{"parts": list(u.parts), "rank": u.length - 1} for u in comps],
            "edges": [list(e) for e in edges],
        }
        _emit(_json_dumps(doc), args.out)
    else:
        raise UsageError("lattice supports --format json or dot")
    return 0


def _cmd_classify(args) -> int:
    f = _poly_from_args(args)
    u = _comp_from_args(args)
    config = _config_from_args(args)
    verdict = classify_stratum(f, args.s, u, config)
    doc = {
        "metadata": _metadata(
            args, config, {"coeffs": list(f.coeffs), "s": args.s, "u": list(u.parts)}
        ),
        "classification": verdict.to_json(),
    }
    _emit(_json_dumps(doc), args.out)
    return 0


def _cmd_occurs(args) -> int:
    f = _poly_from_args(args)
    config = _config_from_args(args)
    solver = StratumSolver(f, args.s, config)
    U = compute_U(f, args.s, config, solver=solver)
    pairs = sorted(U, key=_ckey)
    joins = {join(a, b) for i, a in enumerate(pairs) for b in pairs[i + 1 :]}
    closure = upward_closure(joins)
    final = frozenset(U) | closure
    oracle = None
    if args.oracle:
        brute = brute_force_occurring(f, args.s, config, solver=solver)
        oracle = {"match": brute == final, "brute": _comp_list(brute)}
    doc = {
        "metadata": _metadata(args, config, {"coeffs": list(f.coeffs), "s": args.s}),
        "U": _comp_list(U),
        "joins": _comp_list(joins),
        "closure": _comp_list(closure),
        "final": _comp_list(final),
        "oracle": oracle,
    }
    _emit(_json_dumps(doc), args.out)
    return 0


def _cmd_atoms(args) -> int:
    f = _poly_from_args(args)
    config = _config_from_args(args)
    solver = StratumSolver(f, args.s, config)
    U = compute_U(f, args.s, config, solver=solver)
    atoms = []
    for u in sorted(U, key=_ckey):
        h, x, comp = solver.point(u)
        atoms.append(
            {
                "composition": list(comp.parts),
                "roots": list(x),
                "witness": h.to_json(),
            }
        )
    doc = {
        "metadata": _metadata(args, config, {"coeffs": list(f.coeffs), "s": args.s}),
        "atoms": atoms,
    }
    _emit(_json_dumps(doc), args.out)
    return 0


def _cmd_subdisc(args) -> int:
    f = _poly_from_args(args)
    config = _config_from_args(args)
    seq = subdiscriminants(f)
    cert = hyperbolicity_certificate(f, config=config)
    distinct = None
    if cert is Certificate.HYPERBOLIC:
        distinct = count_distinct_roots(f, config=config)
    doc = {
        "metadata": _metadata(args, config, {"coeffs": list(f.coeffs)}),
        "mode": seq.mode,
        "values": [_num_to_json(v) for v in seq.values],
        "certificate": cert.value,
        "distinct_roots": distinct,
    }
    _emit(_json_dumps(doc), args.out)
    return 0


def _num_to_json(v):
    if isinstance(v, float):
        return v
    if isinstance(v, int):
        return v
    return str(v)  # exact rationals keep full precision as "p/q"


def _cmd_mesh(args) -> int:
    f = _poly_from_args(args)
    config = _config_from_args(args)
    if args.out is None:
        raise UsageError("mesh requires --out DIRECTORY")
    counts = _parse_numbers(args.grid, "--grid", kind=int)
    if not counts or any(n < 1 for n in counts):
        raise UsageError(f"--grid expects positive counts, got {args.grid!r}")
    fmt = args.format
    if fmt == "dot":
        raise UsageError("mesh supports --format csv or json")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    solver = StratumSolver(f, args.s, config)
    table = occurrence_table(f, args.s, config, solver=solver)
    strata_meta = []
    for u in sorted(table.occurring, key=_ckey):
        l, dim = u.length, max(u.length - args.s, 0)
        axis_counts: list[int] = []
        if l <= args.s:
            got = solver.point(u)
            rows = [] if got is None else [(got[1], got[0])]
            failures = [] if got is not None else [((), "no point")]
        else:
            axis_counts = (counts + [counts[-1]] * dim)[:dim]
            # keep the per-stratum cell total bounded; trim the widest axis
            while math.prod(axis_counts) > config.sweep_budget_cap:
                axis_counts[axis_counts.index(max(axis_counts))] -= 1
            rows, failures = solver.sample(u, axis_counts)
        name = "stratum_" + "-".join(str(p) for p in u.parts) + ("." + fmt)
        _write_mesh_file(outdir / name, fmt, u, rows, args.s, f.degree)
        strata_meta.append(
            {
                "composition": list(u.parts),
                "dim": dim,
                "file": name,
                "rows": len(rows),
                "failures": len(failures),
                "grid": axis_counts,
            }
        )
    meta = {
        "metadata": _metadata(
            args,
            config,
            {"coeffs": list(f.coeffs), "s": args.s, "grid": counts},
        ),
        "strata": strata_meta,
    }
    text = _json_dumps(meta)
    (outdir / "metadata.json").write_text(text)
    sys.stdout.write(text)
    return 0


def _write_mesh_file(path: Path, fmt: str, u: Composition, rows, s: int, d: int) -> None:
    l = u.length
    if fmt == "json":
        doc = {
            "composition": list(u.parts),
            "samples": [
                {"x": list(x), "coeffs_tail": list(h.coeffs[s:])} for x, h in rows
            ],
        }
        path.write_text(_json_dumps(doc))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    header = (
        ["composition"]
        + [f"x{j}" for j in range(1, l + 1)]
        + [f"f{j}" for j in range(s + 1, d + 1)]
    )
    writer.writerow(header)
    for x, h in rows:
        writer.writerow([str(u)] + [repr(float(v)) for v in x] + [repr(float(c)) for c in h.coeffs[s:]])
    path.write_text(buf.getvalue())


def _cmd_verify(args) -> int:
    f = _poly_from_args(args)
    config = _config_from_args(args)
    solver = StratumSolver(f, args.s, config)
    table = occurrence_table(f, args.s, config, solver=solver)
    lat = build_lattice(table)
    report = verify_lattice_properties(lat)
    elements = []
    for e in lat.elements:
        witness = None
        if e.rep is not None and args.s >= 1:
            got = solver.point(e.rep) if e.rep.length <= args.s else solver.interior(e.rep)
            if got is not None:
                witness = got[0].to_json()
        elements.append(
            {
                "rep": None if e.rep is None else list(e.rep.parts),
                "dim": e.dim,
                "rank": e.rank,
                "witness": witness,
            }
        )
    doc = {
        "metadata": _metadata(args, config, {"coeffs": list(f.coeffs), "s": args.s}),
        "lattice": {"elements": elements, "covers": [list(c) for c in lat.covers]},
        "report": report.to_json(),
    }
    _emit(_json_dumps(doc), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> _Parser:
    poly = _Parser(add_help=False)
    poly.add_argument("--coeffs", help="comma-separated f_1..f_d of a monic polynomial")
    poly.add_argument("--roots", help="comma-separated distinct roots, increasing")
    poly.add_argument("--mults", help="comma-separated multiplicities matching --roots")

    solver = _Parser(add_help=False)
    solver.add_argument("--seed", type=int, default=None)
    solver.add_argument("--tol-hyper", type=float, default=None, dest="tol_hyper")
    solver.add_argument("--tol-cluster", type=float, default=None, dest="tol_cluster")
    solver.add_argument("--tol-residual", type=float, default=None, dest="tol_residual")

    output = _Parser(add_help=False)
    output.add_argument("--out", default=None)
    output.add_argument("--format", choices=["json", "csv", "dot"], default="json")

    parser = _Parser(prog="starvedpoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lattice", parents=[solver, output], help="composition lattice of d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--min-len", type=int, default=None, dest="min_len")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("classify", parents=[poly, solver, output], help="classify one stratum")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--u", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("occurs", parents=[poly, solver, output], help="occurring compositions")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=_cmd_occurs)

    p = sub.add_parser("atoms", parents=[poly, solver, output], help="length <= s occurrences")
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_atoms)

    p = sub.add_parser("subdisc", parents=[poly, solver, output], help="subdiscriminant sequence")
    p.set_defaults(func=_cmd_subdisc)

    p = sub.add_parser("mesh", parents=[poly, solver, output], help="sample every occurring stratum")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma-separated per-axis counts")
    p.set_defaults(func=_cmd_mesh)

    p = sub.add_parser("verify", parents=[poly, solver, output], help="lattice property report")
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


# argparse mistakes a leading-minus value ("-3.1,0,2") for a flag; gluing
# list-valued options into --flag=value form sidesteps that
_LIST_FLAGS = frozenset({"--coeffs", "--roots", "--mults", "--u", "--grid"})


def _glue_list_flags(argv: list[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_list_flags(argv))
        return args.func(args)
    except UsageError as exc:
        _print_error(exc)
        return 1
    except HypothesisViolation as exc:
        _print_error(exc)
        return 3
    except SolverError as exc:
        _print_error(exc)
        return 2
    except StarvedPolyError as exc:
        _print_error(exc)
        return 2


def _print_error(exc: Exception) -> None:
    sys.stderr.write(_json_dumps({"error": type(exc).__name__, "message": str(exc)}))


if __name__ == "__main__":
    sys.exit(main())
