"""
Command line front end.

    threshold-codes construct --q 11 --lambda 1 -o code.txt
    threshold-codes verify code.txt --property threshold --s 4 --T 48
    threshold-codes bound --kind lower-tau --s 2 --tau 0.5
    threshold-codes table1
    threshold-codes simulate code.txt --s 4 --T 48 --trials 100000 --seed 1

Exit codes: 0 success/pass, 1 property fails, 2 usage or invalid
parameters, 3 I/O or file format error, 4 work budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import code_matrix as cm
from . import gt_simulator as gt
from . import ks_construction as ks
from . import rate_bounds as rb
from .exceptions import (
    BudgetExceeded,
    CodeFormatError,
    MemoryBudget,
    ThresholdCodesError,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4
BUDGET_ENV = "THRESHOLD_CODES_BUDGET"


class UsageError(Exception):
    pass


def _emit(obj, fmt: str, text: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV}={env!r} is not an integer")
    return cm.DEFAULT_BUDGET


def _params_row(p: ks.KsFamilyParams) -> str:
    d = p.to_dict()
    head = " ".join(f"{k:>8}" for k in ks.TABLE_COLUMNS)
    row = " ".join(f"{d[k]:>8}" for k in ("q", "t", "N", "w", "lambda", "s", "T", "T_prime"))
    return f"{head}\n{row}\nR = {p.R:.6f}"


def _load(path: str) -> cm.BinaryCode:
    try:
        return cm.load_code(path)
    except OSError as e:
        raise CodeFormatError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise CodeFormatError(f"{path} is not ASCII") from e


# --- subcommands -----------------------------------------------------------


def cmd_construct(args) -> int:
    p = ks.derive_params(args.q, args.lam)
    if args.out is not None:
        code = ks.build_code(p, memory_budget=args.memory_budget)
        out = Path(args.out)
        try:
            cm.save_code(code, out)
            out.with_suffix(".params.json").write_text(p.to_json(), encoding="ascii")
        except OSError as e:
            print(f"error: cannot write {out}: {e.strerror}", file=sys.stderr)
            return EXIT_IO
    _emit(p.to_dict(), args.format, _params_row(p))
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _load(args.code)
    kw = dict(budget=_budget(args), mode=args.mode, samples=args.samples, seed=args.seed)
    if args.property == "disjunctive":
        rep = cm.verify_disjunctive(code, args.s, **kw)
    else:
        if args.T is None:
            raise UsageError(f"--T is required for --property {args.property}")
        fn = cm.verify_threshold if args.property == "threshold" else cm.verify_bounded_weight
        rep = fn(code, args.s, args.T, **kw)
    d = rep.to_dict()
    lines = [f"property: {d['property']}  s={d['s']}  T={d['T']}",
             f"result: {'PASS' if rep.passed else 'FAIL'} ({d['note']})",
             f"subsets checked: {d['subsets_checked']}"]
    if not rep.passed:
        lines.append(f"witness: {d['witness']}  reason: {d['reason']}  "
                     f"union weight: {d['witness_weight']}"
                     + (f"  covers column {d['covered']}" if d["covered"] is not None else ""))
    _emit(d, args.format, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} needs " + ", ".join(f"--{n}" for n in missing))


def cmd_bound(args) -> int:
    kind = args.kind
    if kind == "lower-tau":
        _need(args, "s", "tau")
        res = rb.lower_rate_tau(args.s, args.tau)
    elif kind == "lower-thr":
        _need(args, "s")
        res = rb.lower_rate_thr(args.s)
    elif kind == "upper":
        _need(args, "s", "tau")
        res = rb.BoundResult(value=rb.bonis_upper(args.s, args.tau), argmax_tau=args.tau,
                             kind="upper")
    else:
        _need(args, "c", "d")
        res = rb.BoundResult(value=rb.asymptotic_objective(args.c, args.d), kind="theorem2-objective")
    d = res.to_dict()
    d.update(s=args.s, tau=args.tau, c=args.c, d=args.d)
    text = [f"{kind}: {res.value:.12g}"]
    for key in ("argmax_Q", "argmax_tau", "y1", "y2", "residual_y1", "residual_y2"):
        if d[key] is not None and kind in ("lower-tau", "lower-thr"):
            text.append(f"  {key} = {d[key]:.12g}")
    if kind in ("lower-tau", "lower-thr"):
        text.append(f"  iterations = {d['iterations']}  tolerance_met = {d['tolerance_met']}")
    _emit(d, args.format, "\n".join(text))
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = ks.published_table_rows()
    undocumented = [r for r in rows if set(r["mismatches"]) - set(r["documented_typos"])]
    lines = [" ".join(f"{k:>8}" for k in ks.TABLE_COLUMNS) + "  check"]
    for r in rows:
        cells = " ".join(f"{r['computed'][k]:>8}" for k in ks.TABLE_COLUMNS)
        flags = [f"{m}: printed {r['printed'][m]}"
                 + (" (inconsistent with t = q^(lambda+1))" if m in r["documented_typos"] else "")
                 for m in r["mismatches"]]
        lines.append(cells + "  " + ("; ".join(flags) if flags else "ok"))
    _emit({"rows": rows, "all_match_except_documented": not undocumented}, args.format,
          "\n".join(lines))
    return EXIT_OK if not undocumented else EXIT_FAIL


def _parse_sizes(spec: str) -> list[int]:
    out: list[int] = []
    try:
        for part in spec.split(","):
            if "-" in part:
                a, b = part.split("-")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse --sizes {spec!r} (use e.g. '0-3' or '1,2,5')")
    return out


def cmd_simulate(args) -> int:
    if args.seed is None:
        raise UsageError("simulate requires --seed")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    code = _load(args.code)
    sizes = _parse_sizes(args.sizes) if args.sizes else list(range(args.s + 2))
    rep = gt.random_trials(code, args.s, args.T, sizes, args.trials, args.seed)
    text = [f"trials: {rep['trials']}  seed: {rep['seed']}  accuracy: {rep['accuracy']:.6f}"]
    for k, v in rep["accuracy_by_size"].items():
        text.append(f"  |S|={k:>4}: {v['correct']}/{v['trials']}")
    _emit(rep, args.format, "\n".join(text))
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help=f"elementary-operation cap for exhaustive checks "
                             f"(default {cm.DEFAULT_BUDGET}, or ${BUDGET_ENV})")
    common.add_argument("--threads", type=int, default=1,
                        help="worker hint; results never depend on it")

    ap = argparse.ArgumentParser(prog="threshold-codes", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a Kautz-Singleton code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("-o", "--out", default=None, help="code file; params go to <out>.params.json")
    p.add_argument("--memory-budget", type=int, default=ks.DEFAULT_MEMORY_BUDGET,
                   help="cap on t*N bits")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a code property")
    p.add_argument("code")
    p.add_argument("--property", choices=("disjunctive", "threshold", "bounded"), required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--T", type=int, default=None)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=cm.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0, help="seed for --mode sampled")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="evaluate a rate bound")
    p.add_argument("--kind", choices=("lower-tau", "lower-thr", "upper", "theorem2-objective"),
                   required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--d", type=float, default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table1", parents=[common], help="recompute the parameter table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of the protocol")
    p.add_argument("code")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sizes", default=None, help="defect-set sizes, e.g. '0-3' (default 0..s+1)")
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CodeFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (BudgetExceeded, MemoryBudget) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ThresholdCodesError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
