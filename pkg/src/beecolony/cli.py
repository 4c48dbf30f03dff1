"""Command-line interface.

Exit codes: 0 success, 1 runtime failure (I/O, failed registry check),
2 usage error.
"""

import argparse
from dataclasses import dataclass
import fnmatch
import os
import sys

from . import benchmarks, harness
from .colony import DEFAULT_BUDGET, VariantConfig
from .exceptions import BeeColonyError, UnknownVariant
from .validation import check_variant

COMMANDS = ("run", "list-problems", "verify-registry", "compare")


@dataclass
class CliConfig:
    command: str
    problem: str = "*"
    variant: str = "ioabc"
    runs: int = 100
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    colony_size: int = 60
    limit: int = 1500
    workers: int = None
    output_path: str = "-"
    format: str = "csv"
    inputs: tuple = ()
    baseline: str = "abc"
    challenger: str = "ioabc"

    def problems(self):
        patterns = [p.strip().lower() for p in self.problem.split(",") if p.strip()]
        return [p.name for p in benchmarks.registry()
                if any(fnmatch.fnmatchcase(p.name, pat) or fnmatch.fnmatchcase(p.key, pat) for pat in patterns)]

    def variants(self):
        return [check_variant(v) for v in self.variant.split(",") if v.strip()]


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _even_int(text):
    value = _positive_int(text)
    if value < 4 or value % 2:
        raise argparse.ArgumentTypeError(f"must be an even integer >= 4, got {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="beecolony", description="Bee colony optimisation experiments.")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    sub.required = True

    run = sub.add_parser("run", help="run seeded experiments and report statistics")
    run.add_argument("--problem", default="*", help="name/key glob, comma-separated (default: all)")
    run.add_argument("--variant", default="ioabc", help="abc, meabc, ioabc; comma-separated for several")
    run.add_argument("--runs", type=_positive_int, default=100)
    run.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="evaluations per run")
    run.add_argument("--seed", type=int, default=0, help="base seed; run r uses seed + r")
    run.add_argument("--colony-size", type=_even_int, default=60)
    run.add_argument("--limit", type=_positive_int, default=1500)
    run.add_argument("--workers", type=_positive_int, default=None, help="worker processes (default: CPU count)")
    run.add_argument("--output", default="-", help="output file, '-' for stdout")
    run.add_argument("--format", choices=("csv", "table"), default="csv")

    lst = sub.add_parser("list-problems", help="print the problem catalogue")
    lst.add_argument("--problem", default="*")
    lst.add_argument("--output", default="-")

    ver = sub.add_parser("verify-registry", help="evaluate every recorded optimiser")
    ver.add_argument("--output", default="-")

    cmp_ = sub.add_parser("compare", help="'+'/'-' summary from result CSV files")
    cmp_.add_argument("inputs", nargs="+", metavar="RESULTS.csv")
    cmp_.add_argument("--baseline", default="abc", help="comma-separated baseline variants")
    cmp_.add_argument("--challenger", default="ioabc")
    cmp_.add_argument("--output", default="-")
    return parser


def parse_args(argv=None):
    """Parse ``argv`` into a :class:`CliConfig`; usage errors exit with status 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = CliConfig(command=ns.command, output_path=ns.output)
    for name in ("problem", "variant", "runs", "budget", "seed", "colony_size", "limit",
                 "workers", "format", "baseline", "challenger"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "inputs"):
        cfg.inputs = tuple(ns.inputs)
    try:
        if cfg.command in ("run", "list-problems") and not cfg.problems():
            parser.error(f"argument --problem: no problem matches {cfg.problem!r}")
        if cfg.command == "run":
            cfg.variants()
        if cfg.command == "compare":
            check_variant(cfg.challenger)
            [check_variant(b) for b in cfg.baseline.split(",")]
    except UnknownVariant as exc:
        flag = "--variant" if cfg.command == "run" else "--baseline/--challenger"
        parser.error(f"argument {flag}: {exc}")
    return cfg


def _open_output(path):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _cmd_run(cfg, out):
    variants = [VariantConfig(variant=v, colony_size=cfg.colony_size, limit=cfg.limit) for v in cfg.variants()]
    plan = harness.ExperimentPlan(problems=tuple(cfg.problems()), variants=tuple(variants),
                                  runs=cfg.runs, base_seed=cfg.seed, budget=cfg.budget)
    stats = harness.execute(plan, workers=cfg.workers or os.cpu_count() or 1)
    if cfg.format == "csv":
        harness.write_csv(stats, out, plan)
    else:
        out.write(harness.format_table(stats))
    return 0


def _cmd_list(cfg, out):
    wanted = set(cfg.problems())
    out.write(benchmarks.catalogue([p for p in benchmarks.registry() if p.name in wanted]))
    return 0


def _cmd_verify(cfg, out):
    failures = 0
    for p in benchmarks.registry():
        check = benchmarks.verify_optimum(p)
        if check is None:
            continue
        value, ok = check
        failures += not ok
        point = ", ".join(f"{v:g}" for v in p.optimizer)
        out.write(f"{'ok  ' if ok else 'FAIL'} {p.key:<4} {p.name:<20} f({point}) = {value:.6g}"
                  f" (expected {p.optimum_value:g})\n")
    return 1 if failures else 0


def _cmd_compare(cfg, out):
    results = {}
    for path in cfg.inputs:
        with open(path, encoding="utf-8", newline="") as fh:
            results.update(harness.read_csv(fh))
    baselines = [b.strip() for b in cfg.baseline.split(",") if b.strip()]
    out.write(harness.format_comparison(results, cfg.challenger, baselines))
    return 0


_DISPATCH = {"run": _cmd_run, "list-problems": _cmd_list, "verify-registry": _cmd_verify,
             "compare": _cmd_compare}


def run_cli(cfg):
    try:
        out, close = _open_output(cfg.output_path)
    except OSError as exc:
        print(f"beecolony: cannot open output {cfg.output_path!r}: {exc}", file=sys.stderr)
        return 1
    try:
        return _DISPATCH[cfg.command](cfg, out)
    except (OSError, ValueError, BeeColonyError) as exc:
        print(f"beecolony {cfg.command}: {exc}", file=sys.stderr)
        return 1
    finally:
        if close:
            out.close()


def main(argv=None):
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return run_cli(cfg)
