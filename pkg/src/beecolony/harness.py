"""Repeated seeded runs, per-problem statistics and pairwise comparison tables.

Run ``r`` of a plan uses seed ``base_seed + r``. Runs may be fanned out to
worker processes; results are always reduced in (problem, variant, run)
order, so the output does not depend on the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass
import io
import os

import numpy as np

from .benchmarks import get_problem
from .colony import DEFAULT_BUDGET, VariantConfig, run
from .exceptions import MissingVariant
from .validation import check_variant

CSV_COLUMNS = ("name", "variant", "mfv", "sd", "me", "afe", "sr", "runs", "budget", "base_seed")


@dataclass(frozen=True)
class ExperimentPlan:
    problems: tuple
    variants: tuple
    runs: int = 100
    base_seed: int = 0
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        problems = tuple(get_problem(p).name for p in self.problems)
        variants = tuple(v if isinstance(v, VariantConfig) else VariantConfig(variant=check_variant(v))
                         for v in self.variants)
        names = [v.variant for v in variants]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variants in plan: {names}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        object.__setattr__(self, "problems", problems)
        object.__setattr__(self, "variants", variants)

    def seeds(self):
        return [self.base_seed + r for r in range(self.runs)]


@dataclass(frozen=True)
class RunStatistics:
    mfv: float
    sd: float
    me: float
    afe: float
    sr: int
    runs: int


def success_of(result, problem):
    return abs(result.best_objective - problem.optimum_value) <= problem.acceptable_error


def summarize(results, problem, ddof=0):
    """Aggregate runs of one (problem, variant) pair.

    SD is the population standard deviation by default (``ddof=0``); ME is the
    mean absolute error to the known optimum; AFE is the mean evaluation count.
    """
    best = np.array([r.best_objective for r in results], dtype=float)
    evals = np.array([r.evaluations for r in results], dtype=float)
    return RunStatistics(
        mfv=float(best.mean()),
        sd=float(best.std(ddof=ddof)) if len(best) > ddof else 0.0,
        me=float(np.abs(best - problem.optimum_value).mean()),
        afe=float(evals.mean()),
        sr=sum(1 for r in results if success_of(r, problem)),
        runs=len(results),
    )


def _run_task(task):
    name, config, seed, budget = task
    return run(get_problem(name), config, seed=seed, max_evaluations=budget)


def run_plan(plan, workers=1):
    """Execute every run of ``plan``; returns ``{(problem, variant): [RunResult, ...]}``."""
    tasks = [(p, v, s, plan.budget) for p in plan.problems for v in plan.variants for s in plan.seeds()]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        flat = [_run_task(t) for t in tasks]
    out = {}
    for (p, v, _, _), res in zip(tasks, flat):
        out.setdefault((p, v.variant), []).append(res)
    return out


def execute(plan, workers=1, ddof=0):
    """Run the plan and return ``{(problem, variant): RunStatistics}`` in plan order."""
    raw = run_plan(plan, workers)
    return {key: summarize(runs, get_problem(key[0]), ddof=ddof) for key, runs in raw.items()}


def challenger_better(challenger, baseline):
    """Higher SR wins; ties go to lower AFE, then lower ME. Exact ties are not a win."""
    return (challenger.sr, -challenger.afe, -challenger.me) > (baseline.sr, -baseline.afe, -baseline.me)


def compare(results, baseline, challenger, better=challenger_better):
    """Per-problem '+' (challenger better) / '-' rows plus the count of '+'.

    ``results`` maps ``(problem, variant)`` to :class:`RunStatistics`.
    """
    baseline, challenger = check_variant(baseline), check_variant(challenger)
    problems = []
    for name, _ in results:
        if name not in problems:
            problems.append(name)
    rows = []
    for name in problems:
        for v in (baseline, challenger):
            if (name, v) not in results:
                raise MissingVariant(f"no {v} results for {name}")
        sign = "+" if better(results[(name, challenger)], results[(name, baseline)]) else "-"
        rows.append((name, sign))
    return rows, sum(1 for _, s in rows if s == "+")


# -- serialisation ---------------------------------------------------------------

def _sci(x):
    return f"{x:.5E}"


def write_csv(stats, stream, plan):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for (name, variant), s in stats.items():
        writer.writerow([name, variant, _sci(s.mfv), _sci(s.sd), _sci(s.me), _sci(s.afe),
                         s.sr, s.runs, plan.budget, plan.base_seed])


def to_csv(stats, plan):
    buf = io.StringIO()
    write_csv(stats, buf, plan)
    return buf.getvalue()


def read_csv(stream):
    """Inverse of :func:`write_csv` (budget and seed columns are dropped)."""
    out = {}
    reader = csv.DictReader(stream)
    missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"results file lacks columns: {', '.join(sorted(missing))}")
    for row in reader:
        out[(row["name"], check_variant(row["variant"]))] = RunStatistics(
            mfv=float(row["mfv"]), sd=float(row["sd"]), me=float(row["me"]),
            afe=float(row["afe"]), sr=int(row["sr"]), runs=int(row["runs"]),
        )
    return out


_LABELS = {"abc": "ABC", "meabc": "MeABC", "ioabc": "IoABC"}


def format_table(stats):
    """Aligned text table: one block per problem, one line per variant."""
    header = ("Test Problem", "Algorithm", "MFV", "SD", "ME", "AFE", "SR")
    lines = []
    last = None
    for (name, variant), s in stats.items():
        lines.append((name if name != last else "", _LABELS.get(variant, variant),
                      f"{s.mfv:.2E}", f"{s.sd:.2E}", f"{s.me:.2E}", f"{s.afe:.2f}", str(s.sr)))
        last = name
    widths = [max(len(r[c]) for r in [header, *lines]) for c in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) if k < 2 else c.rjust(w) for k, (c, w) in enumerate(zip(r, widths)))
    return "\n".join([fmt(header), "  ".join("-" * w for w in widths), *map(fmt, lines)]) + "\n"


def format_comparison(results, challenger, baselines):
    """Text table of '+'/'-' signs, challenger against each baseline, with a totals row."""
    columns = []
    for b in baselines:
        rows, total = compare(results, b, challenger)
        columns.append((f"{_LABELS.get(check_variant(challenger))} vs. {_LABELS.get(check_variant(b))}", rows, total))
    names = [n for n, _ in columns[0][1]]
    label_w = max(len("Total Number of + Sign"), *(len(n) for n in names))
    out = ["Test Problem".ljust(label_w) + "".join(f"  {c[0]}" for c in columns)]
    for r, name in enumerate(names):
        out.append(name.ljust(label_w) + "".join(f"  {c[1][r][1].center(len(c[0]))}" for c in columns))
    out.append("Total Number of + Sign".ljust(label_w) + "".join(f"  {str(c[2]).center(len(c[0]))}" for c in columns))
    return "\n".join(out) + "\n"

