"""Command-line front end: ``ospbranch {verify,branch,casimir,exceptional}``.

Exit status: 0 all checks pass, 1 a check failed, 2 invalid input, 3 sector
above the dimension cap.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any

from .algebra import (LabelPair, SpecError, Weight, casimir_closed_form, casimir_eigenvalue_osp, casimir_gap,
                      gap_first_form, gap_second_form, gap_scan, allowed_zero, lambda_ab, make_spec,
                      predict_branching, quasi_spin_top, weight_from_labels)
from .cache import ENV_VAR, Cache
from .fock import DEFAULT_DIM_CAP, SectorTooLarge
from .report import CheckList, dumps, exact, provenance

log = logging.getLogger("ospbranch")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


# --- config ------------------------------------------------------------------

def read_config_file(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; '#' starts a comment; dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, sub: argparse.ArgumentParser, values: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        if key not in actions:
            raise InputError(f"unknown config key {key!r}")
        act = actions[key]
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[key] = act.type(raw) if act.type else raw
            except (TypeError, ValueError) as exc:
                raise InputError(f"config key {key!r}: {exc}") from None
            if act.choices is not None and defaults[key] not in act.choices:
                raise InputError(f"config key {key!r}: {raw!r} not in {sorted(act.choices)}")
    sub.set_defaults(**defaults)


def _common(p: argparse.ArgumentParser, need_m: bool = True) -> None:
    if need_m:
        p.add_argument("--m", type=int, help="even (fermionic) orbital count")
    p.add_argument("--n", type=int, help="odd (bosonic) orbital count, even and > 2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache-dir", default=None, help=f"cache directory (default ${ENV_VAR})")
    p.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP, help="largest sector dimension to build")
    p.add_argument("--plot-dir", default=None, help="write figures here")
    p.add_argument("--config", default=None, help="key=value file; flags take precedence")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ospbranch",
                                     description="Exact gl(m|n) and osp(m|n) Fock realizations and branching checks.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="run the operator identity suite on Fock sectors")
    _common(p)
    p.add_argument("--spins", type=int, choices=(1, 2), default=2)
    p.add_argument("--N", type=int, default=None, help="a single particle number")
    p.add_argument("--max-N", type=int, default=None, help="all particle numbers 0..max-N (default 2)")
    p.add_argument("--light", action="store_true", help="skip the gl(2m|2n) and [T, T] sweeps")

    p = subs.add_parser("branch", help="gl(m|n) -> osp(m|n) branching of a two-column module")
    _common(p)
    p.add_argument("--a", type=int, required=False)
    p.add_argument("--b", type=int, required=False)
    p.add_argument("--verify", action="store_true", help="decompose the Fock block and check the prediction")

    p = subs.add_parser("casimir", help="osp Casimir eigenvalues and gaps")
    _common(p)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--lambda", dest="weight", default=None, help='osp weight "eps,...|delta,..."')
    for lab in "cdef":
        p.add_argument(f"--{lab}", type=int, default=None, help="weight label for the gap")
    p.add_argument("--scan", action="store_true", help="scan every admissible weight for the given (a, b)")

    p = subs.add_parser("exceptional", help="composition series of the m = n spin-singlet block")
    _common(p)
    return parser


# --- commands ------------------------------------------------------------------

def _spec(args):
    if args.m is None or args.n is None:
        raise InputError("--m and --n are required")
    return make_spec(args.m, args.n)


def _labels(args) -> LabelPair:
    if args.a is None or args.b is None:
        raise InputError("--a and --b are required")
    return LabelPair(args.a, args.b)


def _algebra(args, spec, spins: int = 2):
    from .operators import OperatorAlgebra
    return OperatorAlgebra(spec, spins, dim_cap=args.dim_cap, cache=_cache(args))


def _cache(args) -> Cache | None:
    root = args.cache_dir or os.environ.get(ENV_VAR)
    return Cache(root) if root else None


def cmd_verify(args) -> tuple[list, CheckList]:
    from .relations import full_suite
    spec = _spec(args)
    if args.N is not None and args.max_N is not None:
        raise InputError("give either --N or --max-N, not both")
    Ns = [args.N] if args.N is not None else list(range((2 if args.max_N is None else args.max_N) + 1))
    if any(N < 0 for N in Ns):
        raise InputError("particle numbers must be non-negative")
    alg = _algebra(args, spec, args.spins)
    results, checks = [], CheckList()
    for N in Ns:
        basis = alg.sector(N)
        log.info("verifying sector N=%d (dim %d)", N, basis.dim)
        found = full_suite(alg, N, heavy=not args.light)
        checks.extend(found)
        results.append({"N": N, "dimension": basis.dim, "checks": len(found),
                        "failed": sum(c.status not in ("pass", "expected-fail") for c in found)})
    return results, checks


def _block_dims(alg, b: int, a: int) -> list[int]:
    from .decompose import spin_block
    return [spin_block(alg, c, b).dim for c in range(a + 1)]


def cmd_branch(args) -> tuple[list, CheckList]:
    spec = _spec(args)
    p = _labels(args)
    pred = predict_branching(p, spec)
    alg = _algebra(args, spec)
    dims = _block_dims(alg, p.b, p.a)
    checks = CheckList()
    found = {}
    if args.verify:
        from .decompose import verify_branching
        report = verify_branching(p, spec, alg)
        checks.extend(report.checks)
        found = {(f.label.a, f.label.b): f for f in report.found}
    rows = []
    for comp in pred.components:
        c = comp.label.a
        if comp.exceptional:
            dim = dims[1]
        else:
            dim = dims[c] - (dims[c - 1] if c else 0)
        row = {"label": [c, comp.label.b], "highest_weight": str(comp.weight), "dimension": dim,
               "quasi_spin": quasi_spin_top(comp.label.N, spec),
               "casimir": casimir_closed_form(c, comp.label.b, spec),
               "exceptional": comp.exceptional,
               "composition_factors": [[str(w), k] for w, k in comp.composition_factors]}
        if args.verify:
            f = found.get((c, comp.label.b))
            ok = f is not None and f.dimension == dim and checks.all_ok
            row["status"] = "failed" if not ok else ("exceptional" if comp.exceptional else "verified")
        else:
            row["status"] = "predicted"
        rows.append(row)
    if args.plot_dir:
        from .plots import branching_bars
        path = Path(args.plot_dir) / f"branch_m{spec.m}_n{spec.n}_a{p.a}_b{p.b}.png"
        branching_bars([{"label": f"({r['label'][0]},{r['label'][1]})", "dimension": r["dimension"],
                         "status": r["status"]} for r in rows],
                       f"osp({spec.m}|{spec.n}) components of V-hat({p.a},{p.b})", path)
    return rows, checks


def cmd_casimir(args) -> tuple[list, CheckList]:
    spec = _spec(args)
    results, checks = [], CheckList()
    labels = [getattr(args, x) for x in "cdef"]
    have_ab = args.a is not None or args.b is not None
    if not (have_ab or args.weight):
        raise InputError("give --a/--b, --lambda, or both")
    if args.weight:
        try:
            w = Weight.parse(spec, args.weight)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed weight {args.weight!r}: {exc}") from None
        results.append({"weight": str(w), "casimir": casimir_eigenvalue_osp(w, spec)})
    if have_ab:
        p = _labels(args)
        chi = casimir_closed_form(p.a, p.b, spec)
        via_weight = casimir_eigenvalue_osp(lambda_ab(p.a, p.b, spec), spec)
        results.append({"a": p.a, "b": p.b, "weight": str(lambda_ab(p.a, p.b, spec)), "casimir": chi})
        checks.add(f"closed form agrees with (lambda, lambda + 2 rho) at (a,b)=({p.a},{p.b})", chi == via_weight,
                   {"closed_form": chi, "from_weight": via_weight})
        if args.weight:
            same = Weight.parse(spec, args.weight) == lambda_ab(p.a, p.b, spec)
            if same:
                checks.add("weight and label entry paths agree", results[0]["casimir"] == chi)
        if any(x is not None for x in labels):
            if any(x is None for x in labels):
                raise InputError("the gap needs all of --c --d --e --f")
            c, d, e, f = labels
            try:
                gap = casimir_gap(c, d, e, f, p.a, p.b, spec)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            direct = casimir_eigenvalue_osp(weight_from_labels(c, d, e, f, spec), spec) - chi
            results.append({"labels": [c, d, e, f], "gap_first_form": gap_first_form(c, d, e, f, p.a, p.b, spec),
                            "gap_second_form": gap_second_form(c, d, e, f, p.a, p.b, spec), "gap": gap})
            checks.add("both gap forms agree with the direct difference", gap == direct, {"direct": direct})
        if args.scan:
            points = gap_scan(p.a, p.b, spec)
            zeros = [list(pt.labels) for pt in points if pt.gap == 0]
            results.append({"scan_points": len(points), "min_gap": min((pt.gap for pt in points), default=None),
                            "zeros": zeros})
            checks.add("gap non-negative over the scan", all(pt.gap >= 0 for pt in points))
            checks.add("gap vanishes only at the allowed weights",
                       all(allowed_zero(tuple(z), p.a, p.b, spec) for z in zeros), {"zeros": zeros})
            checks.add("gap forms agree over the scan",
                       all(pt.gap_first == pt.gap_second == pt.gap_direct for pt in points))
            if args.plot_dir:
                from .plots import gap_scan_plot
                gap_scan_plot(points, f"osp({spec.m}|{spec.n}) Casimir gap, (a,b)=({p.a},{p.b})",
                              Path(args.plot_dir) / f"gap_m{spec.m}_n{spec.n}_a{p.a}_b{p.b}.png")
    elif args.scan or any(x is not None for x in labels):
        raise InputError("the gap and the scan need --a and --b")
    return results, checks


def cmd_exceptional(args) -> tuple[list, CheckList]:
    if args.n is None:
        raise InputError("--n is required")
    if args.m is not None and args.m != args.n:
        raise InputError(f"the exceptional block needs m = n, got m={args.m}, n={args.n}")
    spec = make_spec(args.n, args.n)
    from .decompose import exceptional_composition_series
    report = exceptional_composition_series(spec, _algebra(args, spec))
    ex = report.extra
    results = [{"chain_dims": ex["chain_dims"], "factor_dims": ex["factor_dims"],
                "factor_weights": ex["factor_weights"], "membership": ex["membership"]}]
    return results, report.checks


COMMANDS = {"verify": cmd_verify, "branch": cmd_branch, "casimir": cmd_casimir, "exceptional": cmd_exceptional}


# --- output --------------------------------------------------------------------

def _config_record(args) -> dict:
    skip = {"config", "verbose", "format"}
    rec = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    rec["output_format"] = args.format
    return rec


def render_text(record: dict) -> str:
    cfg = record["config"]
    lines = [f"ospbranch {cfg['command']}: " + " ".join(f"{k}={v}" for k, v in cfg.items()
                                                        if k != "command" and v is not None and v is not False)]
    for r in record["results"]:
        lines.append("  " + "  ".join(f"{k}={_short(v)}" for k, v in sorted(r.items())))
    if record["checks"]:
        lines.append("checks:")
        for c in record["checks"]:
            lines.append(f"  [{c['status']}] {c['name']}")
    ok = all(c["status"] in ("pass", "expected-fail") for c in record["checks"])
    lines.append(f"{len(record['checks'])} checks, {'all passed' if ok else 'FAILURES present'}")
    return "\n".join(lines) + "\n"


def _short(v: Any) -> str:
    if isinstance(v, list) and len(v) > 6 and isinstance(v[0], dict):
        return f"<{len(v)} entries>"
    return str(v)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse, execute and render; returns (exit status, output text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        try:
            _apply_config(parser, sub, read_config_file(args.config))
        except (OSError, InputError) as exc:
            return EXIT_INPUT, f"error: {exc}\n"
        args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    if args.dim_cap is not None and args.dim_cap < 1:
        return EXIT_INPUT, "error: --dim-cap must be positive\n"
    try:
        results, checks = COMMANDS[args.command](args)
    except (SpecError, InputError) as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    except SectorTooLarge as exc:
        return EXIT_CAP, f"error: {exc}\n"
    record = {"config": _config_record(args), "results": exact(results),
              "checks": [c.to_json() for c in checks], "provenance": provenance()}
    text = dumps(record)
    cache = _cache(args)
    if cache is not None:
        cache.store_report(args.command, record["config"], text)
    out = text if args.format == "json" else render_text(record)
    return (EXIT_OK if checks.all_ok else EXIT_FAIL), out


def main(argv: list[str] | None = None) -> int:
    status, out = run(argv)
    (sys.stdout if status in (EXIT_OK, EXIT_FAIL) else sys.stderr).write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
