"""Command line front end: ``hstree <command> ...``.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import asdict
from fractions import Fraction

from . import bounds, facets, harness
from .geom import DEFAULT_BUDGET, BudgetExceeded, DegenerateInputError
from .points import MODELS, format_points, load_points, moment_curve, random_pointset
from .tree import build_fringe_tree, build_hst, build_moment_hst, format_tree, stats


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    g.add_argument("--out", default=None, help="output path (default: standard output)")
    g.add_argument("--format", choices=("csv", "json"), default=None)
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration cap")
    return p


def _source_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", metavar="FILE", help="point file")
    g.add_argument("--moment", nargs=2, type=int, metavar=("N", "D"), help="moment curve")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hstree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a point set")
    p.add_argument("--kind", choices=("moment", "random"), default="moment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--model", choices=MODELS, default=MODELS[0])
    p.add_argument("--precision", type=int, default=32)

    p = sub.add_parser("build", parents=[common], help="build one tree")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", metavar="FILE")
    g.add_argument("--moment", nargs=2, type=int, metavar=("N", "D"),
                   help="combinatorial moment-curve tree")
    g.add_argument("--fringe", nargs=2, type=int, metavar=("N", "T"),
                   help="median-of-(2t+1) tree")
    p.add_argument("--stats", action="store_true", help="print statistics instead of the tree")

    p = sub.add_parser("census", parents=[common], help="k-facet census as k,count")
    _source_args(p)

    p = sub.add_parser("bounds", parents=[common], help="analytic constants and bounds")
    bsub = p.add_subparsers(dest="which", required=True)
    q = bsub.add_parser("lambda", parents=[common])
    q.add_argument("--t", type=int, required=True)
    q = bsub.add_parser("height-constant", parents=[common])
    q.add_argument("--t", type=int, required=True)
    q = bsub.add_parser("tail", parents=[common])
    q.add_argument("--kind", choices=("simplified", "balance", "wagner", "beta"), required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--n", type=int)
    q = bsub.add_parser("gamma", parents=[common])
    q.add_argument("--a", type=float)
    q.add_argument("--b", type=float)
    q.add_argument("--d", type=int)
    q = bsub.add_parser("mu", parents=[common])
    q.add_argument("--law", choices=("example2", "wagner"), required=True)
    q.add_argument("--d", type=int, required=True)

    p = sub.add_parser("experiment", parents=[common], help="seeded Monte Carlo trials")
    p.add_argument("--config", metavar="JSON", help="ExperimentConfig file")
    p.add_argument("--source", choices=("moment", "random", "file"))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--model", choices=MODELS, default=MODELS[0])
    p.add_argument("--points", metavar="FILE")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--mode", choices=("geometric", "combinatorial"), default="geometric")
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte identity)")

    p = sub.add_parser("verify", parents=[common], help="theorem checks")
    p.add_argument("--lemmas", action="store_true")
    p.add_argument("--domination", action="store_true")
    p.add_argument("--equivalence", action="store_true")
    p.add_argument("--d-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--sets", type=int, default=20)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--trials", type=int, default=10_000)

    p = sub.add_parser("report", parents=[common], help="summarise an experiment CSV")
    p.add_argument("--in", dest="infile", required=True)
    return parser


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _result_json(r: bounds.BoundResult) -> str:
    val = r.value if math.isfinite(r.value) else None
    return json.dumps(
        {"value": val, "log_base": r.log_base, "valid": r.valid, "residual": r.residual}
    )


def _cmd_gen(a) -> int:
    if a.kind == "moment":
        ps = moment_curve(a.n, a.d)
    else:
        ps = random_pointset(a.n, a.d, a.model, a.seed, a.precision, a.budget)
    with _output(a.out) as fh:
        if a.format == "json":
            json.dump({"d": ps.d, "n": ps.n, "label": ps.label,
                       "points": [[str(c) for c in p] for p in ps.points]}, fh)
            fh.write("\n")
        else:
            fh.write(format_points(ps))
    return 0


def _cmd_build(a) -> int:
    if a.points:
        tree = build_hst(load_points(a.points), a.seed)
    elif a.moment:
        tree = build_moment_hst(*a.moment, a.seed)
    else:
        tree = build_fringe_tree(*a.fringe, a.seed)
    with _output(a.out) as fh:
        if a.stats:
            st = stats(tree)
            json.dump({"n": st.n, "height": st.height, "mean_depth": str(st.mean_depth),
                       "root_split": list(st.root_split)}, fh)
            fh.write("\n")
        else:
            fh.write(format_tree(tree))
    return 0


def _cmd_census(a) -> int:
    ps = load_points(a.points) if a.points else moment_curve(*a.moment)
    cs = facets.census(ps, a.budget)
    with _output(a.out) as fh:
        if a.format == "json":
            json.dump({"n": cs.n, "d": cs.d, "table": list(cs.table)}, fh)
            fh.write("\n")
        else:
            fh.write("k,count\n")
            for k, c in enumerate(cs.table):
                fh.write(f"{k},{c}\n")
    return 0


def _cmd_bounds(a) -> int:
    if a.which == "lambda":
        r = bounds.lambda_poblete(a.t)
    elif a.which == "height-constant":
        r = bounds.height_constant(a.t)
    elif a.which == "tail":
        if a.kind == "simplified":
            r = bounds.simplified_balance_bound(a.d, a.x)
        elif a.kind == "balance":
            if a.n is None:
                raise UsageError("tail --kind balance needs --n")
            r = bounds.balance_bound(a.n, a.d, a.x)
        elif a.kind == "wagner":
            r = bounds.wagner_hoeffding_tail(a.d, a.x)
        else:
            r = bounds.beta_tail_exact(a.d, a.x)
    elif a.which == "gamma":
        if a.d is not None:
            law = bounds.theorem_height_law(a.d)
        elif a.a is not None and a.b is not None:
            law = bounds.SplitLaw.explicit(a.a, a.b)
        else:
            raise UsageError("gamma needs --d or both --a and --b")
        r = bounds.dominated_height_gamma(law)
    else:
        law = bounds.SplitLaw.example2(a.d) if a.law == "example2" else bounds.SplitLaw.wagner(a.d)
        r = bounds.log_moment_lower(law)
    with _output(a.out) as fh:
        fh.write(_result_json(r) + "\n")
    return 0


def _experiment_config(a) -> harness.ExperimentConfig:
    if a.config:
        with open(a.config, encoding="utf-8") as fh:
            return harness.ExperimentConfig.from_json(fh.read())
    if a.source is None:
        raise UsageError("experiment needs --config or --source")
    if a.source == "file":
        if not a.points:
            raise UsageError("--source file needs --points")
        src = {"kind": "file", "path": a.points}
    else:
        if a.n is None or a.d is None:
            raise UsageError(f"--source {a.source} needs --n and --d")
        src = {"kind": a.source, "n": a.n, "d": a.d}
        if a.source == "random":
            src["model"] = a.model
    return harness.ExperimentConfig(
        source=src, trials=a.trials, base_seed=a.seed, mode=a.mode, outputs=a.out,
        budget=a.budget, timing=a.timing,
    )


def _cmd_experiment(a) -> int:
    cfg = _experiment_config(a)
    out = a.out if a.out is not None else cfg.outputs
    records = harness.run_experiment(cfg, threads=a.threads)
    with _output(out) as fh:
        if a.format == "json":
            for r in records:
                row = asdict(r)
                row["mean_depth"] = harness._decimal(r.mean_depth)
                fh.write(json.dumps(row) + "\n")
        else:
            harness.write_records(records, fh)
    return 0


def _cmd_verify(a) -> int:
    if not (a.lemmas or a.domination or a.equivalence):
        raise UsageError("verify needs at least one of --lemmas, --domination, --equivalence")
    report = {}
    ok = True
    if a.lemmas:
        rep = harness.verify_lemmas(a.d_max, a.n_max, a.sets, a.seed, a.budget)
        report["lemmas"] = {"cases": rep.cases, "checks": rep.checks,
                            "violations": rep.violations, "equality_cases": rep.equality_cases}
        ok &= rep.passed
    if a.equivalence:
        rep = harness.verify_model_equivalence(a.d_max, a.n_max)
        report["equivalence"] = {"cases": rep.cases, "checks": rep.checks,
                                 "violations": rep.violations}
        ok &= rep.passed
    if a.domination:
        rep = harness.verify_domination(a.d, a.n, a.trials, a.seed)
        report["domination"] = {"d": rep.d, "n": rep.n, "trials": rep.trials, "slack": rep.slack,
                                "max_excess": rep.max_excess, "passed": rep.passed,
                                "grid": rep.grid}
        ok &= rep.ok
    report["passed"] = bool(ok)
    with _output(a.out) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return 0 if ok else 1


def _cmd_report(a) -> int:
    with open(a.infile, encoding="utf-8") as fh:
        records = harness.read_records(fh)
    r = harness.estimate_ratios(records)
    with _output(a.out) as fh:
        json.dump(asdict(r), fh, indent=2)
        fh.write("\n")
    return 0


COMMANDS = {
    "gen": _cmd_gen,
    "build": _cmd_build,
    "census": _cmd_census,
    "bounds": _cmd_bounds,
    "experiment": _cmd_experiment,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hstree: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, BudgetExceeded, DegenerateInputError) as exc:
        print(f"hstree: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
