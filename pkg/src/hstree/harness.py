"""Seeded experiments, statistical checks and exhaustive lemma verification."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import bounds, facets
from .geom import DEFAULT_BUDGET, PointSet, classify_split, in_convex_position
from .points import load_points, moment_curve, random_pointset
from .rng import SplitMix64, derive_seed
from .tree import (
    build_hst,
    build_moment_hst,
    depth_profile,
    fringe_root_split_distribution,
    moment_root_split_distribution,
    moment_tree_stats,
    root_split_distribution,
    simulate_moment_split,
    stats,
)

SCHEMA = 1
CSV_COLUMNS = ("trial", "seed", "n", "d", "height", "mean_depth", "root_left", "root_right", "wall_ms")
DECIMALS = 12


@dataclass(frozen=True)
class ExperimentConfig:
    """Field-for-field mirror of the JSON config.

    ``source`` is one of ``{"kind": "moment", "n", "d"}``,
    ``{"kind": "random", "model", "n", "d", "precision"?}`` or
    ``{"kind": "file", "path"}``.
    """

    source: dict
    trials: int = 1
    base_seed: int = 0
    mode: str = "geometric"
    outputs: str | None = None
    budget: int = DEFAULT_BUDGET
    timing: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        kind = self.source.get("kind")
        if kind not in ("moment", "random", "file"):
            raise ValueError(f"unknown source kind {kind!r}")
        if self.mode not in ("geometric", "combinatorial"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "combinatorial" and kind != "moment":
            raise ValueError("combinatorial mode needs a moment source")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls(**json.loads(text))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    seed: int
    n: int
    d: int
    height: int
    mean_depth: Fraction
    root_left: int
    root_right: int
    wall_time: float = 0.0


def trial_seed(base_seed: int, i: int) -> int:
    return derive_seed(base_seed, i)


def _pointset(cfg: ExperimentConfig) -> PointSet:
    src = cfg.source
    if src["kind"] == "moment":
        return moment_curve(src["n"], src["d"])
    if src["kind"] == "random":
        return random_pointset(
            src["n"], src["d"], src["model"], cfg.base_seed, src.get("precision", 32), cfg.budget
        )
    return load_points(src["path"])


def _run_trial(args) -> TrialRecord:
    cfg, ps, i = args
    seed = trial_seed(cfg.base_seed, i)
    t0 = time.perf_counter()
    if cfg.mode == "combinatorial":
        n, d = cfg.source["n"], cfg.source["d"]
        st = moment_tree_stats(n, d, seed)
    else:
        n, d = ps.n, ps.d
        st = stats(build_hst(ps, seed))
    wall = (time.perf_counter() - t0) if cfg.timing else 0.0
    return TrialRecord(i, seed, n, d, st.height, st.mean_depth, *st.root_split, wall_time=wall)


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> Iterator[TrialRecord]:
    """Yield one record per trial, in trial order.

    Trial ``i`` uses ``derive_seed(base_seed, i)``.  Random point sets are
    drawn once from ``base_seed`` and shared by all trials.  ``threads > 1``
    farms trials out to worker processes; output is unchanged.
    """
    ps = None if cfg.mode == "combinatorial" else _pointset(cfg)
    jobs = ((cfg, ps, i) for i in range(cfg.trials))
    if threads <= 1:
        yield from map(_run_trial, jobs)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(_run_trial, jobs, chunksize=max(1, cfg.trials // (4 * threads)))


def _decimal(x: Fraction) -> str:
    q = round(x * 10**DECIMALS)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 10**DECIMALS}.{q % 10**DECIMALS:0{DECIMALS}d}"


def write_records(records: Iterable[TrialRecord], fh) -> None:
    fh.write(f"# schema={SCHEMA}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(
            [
                r.trial_index,
                r.seed,
                r.n,
                r.d,
                r.height,
                _decimal(r.mean_depth),
                r.root_left,
                r.root_right,
                f"{r.wall_time * 1000:.3f}",
            ]
        )


def read_records(fh) -> list[TrialRecord]:
    first = fh.readline().strip()
    if first != f"# schema={SCHEMA}":
        raise ValueError(f"unsupported CSV schema line {first!r}")
    rows = csv.DictReader(fh)
    if tuple(rows.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected columns {rows.fieldnames}")
    return [
        TrialRecord(
            int(r["trial"]),
            int(r["seed"]),
            int(r["n"]),
            int(r["d"]),
            int(r["height"]),
            Fraction(r["mean_depth"]),
            int(r["root_left"]),
            int(r["root_right"]),
            float(r["wall_ms"]) / 1000,
        )
        for r in rows
    ]


def records_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# summaries


QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class RatioSummary:
    mean: float
    sd: float
    quantiles: dict


@dataclass(frozen=True)
class Ratios:
    n: int
    trials: int
    height: RatioSummary
    mean_depth: RatioSummary


def _summary(values: np.ndarray, mean: float) -> RatioSummary:
    q = np.quantile(values, QUANTILES)
    return RatioSummary(mean, float(np.std(values, ddof=1)), dict(zip(QUANTILES, map(float, q))))


def estimate_ratios(records: Sequence[TrialRecord], n: int | None = None) -> Ratios:
    """Summaries of ``height / ln n`` and ``mean_depth / ln n``.

    Mean depths are averaged exactly before the division.
    """
    if len(records) < 2:
        raise ValueError("need at least two records")
    ns = {r.n for r in records}
    if len(ns) != 1:
        raise ValueError(f"records mix point counts {sorted(ns)}")
    if n is not None and ns != {n}:
        raise ValueError(f"records have n={ns.pop()}, expected {n}")
    n = ns.pop()
    ln = math.log(n)
    h = np.array([r.height for r in records], dtype=float) / ln
    md = np.array([float(r.mean_depth) for r in records]) / ln
    exact_md = sum((r.mean_depth for r in records), Fraction(0)) / len(records)
    return Ratios(
        n,
        len(records),
        _summary(h, float(np.mean(h))),
        _summary(md, float(exact_md) / ln),
    )


# ---------------------------------------------------------------------------
# limiting beta law of the root split


def ks_critical(alpha: float) -> float:
    """Asymptotic Kolmogorov critical value ``sqrt(-ln(alpha/2)/2)``."""
    return math.sqrt(-0.5 * math.log(alpha / 2.0))


def folded_beta_cdf(y: float, d: int) -> float:
    """``P(max(B, 1-B) <= y)`` for ``B ~ beta(ceil(d/2), ceil(d/2))``."""
    if y < 0.5:
        return 0.0
    if y >= 1.0:
        return 1.0
    return 1.0 - 2.0 * float(bounds.beta_tail_fraction(d, Fraction(y)))


@dataclass(frozen=True)
class KsResult:
    statistic: float
    threshold: float
    passed: bool
    samples: int


def ks_split_vs_beta(
    fractions: Sequence[float], d: int, n: int | None = None, alpha: float = 0.01
) -> KsResult:
    """One-sample KS test of larger-side fractions against the folded beta.

    Threshold is ``c(alpha)/sqrt(m)`` plus the finite-n slack ``2d/n`` when
    ``n`` is given.
    """
    x = np.sort(np.asarray(fractions, dtype=float))
    m = len(x)
    if m < 100:
        raise ValueError(f"need at least 100 samples, got {m}")
    cache: dict = {}
    g = np.array([cache.setdefault(v, folded_beta_cdf(v, d)) for v in x.tolist()])
    i = np.arange(1, m + 1)
    stat = float(max(np.max(i / m - g), np.max(g - (i - 1) / m)))
    thr = ks_critical(alpha) / math.sqrt(m) + (2.0 * d / n if n else 0.0)
    return KsResult(stat, thr, stat <= thr, m)


def root_split_samples(n: int, d: int, trials: int, seed: int) -> np.ndarray:
    """Larger root side sizes of the moment-curve model; trial i uses derive_seed(seed, i)."""
    out = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        a, b = simulate_moment_split(n, d, SplitMix64(trial_seed(seed, i)))
        out[i] = max(a, b)
    return out


def root_split_samples_geometric(ps: PointSet, trials: int, seed: int) -> np.ndarray:
    out = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        rng = SplitMix64(trial_seed(seed, i))
        piv = rng.sample(ps.n, ps.d)
        left, right = classify_split(ps, piv)
        out[i] = max(len(left), len(right))
    return out


# ---------------------------------------------------------------------------
# exhaustive lemma verification


@dataclass
class LemmaReport:
    cases: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)
    equality_cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "LemmaReport") -> None:
        self.cases += other.cases
        self.checks += other.checks
        self.violations += other.violations
        self.equality_cases += other.equality_cases


def _points_repr(ps: PointSet) -> list:
    return [[str(c) for c in p] for p in ps.points]


def case_seed(seed: int, d: int, n: int, j: int) -> int:
    return derive_seed(derive_seed(derive_seed(seed, d), n), j)


def lemma_pointsets(d: int, n: int, sets: int, seed: int) -> list[PointSet]:
    """Moment-curve set plus ``sets`` seeded random sets (cube and sphere alternating)."""
    out = [moment_curve(n, d)]
    for j in range(sets):
        model = "unit-cube-rational" if j % 2 == 0 or d == 1 else "sphere-rational"
        out.append(random_pointset(n, d, model, case_seed(seed, d, n, j)))
    return out


def check_small_balance(ps: PointSet) -> LemmaReport:
    rep = LemmaReport(cases=1)
    d = ps.d
    p = facets.same_side_probability(ps)
    cap = facets.small_balance_cap(d)
    convex = in_convex_position(ps)
    allowed = facets.convex_same_side_values(d) if convex else {facets.small_balance_value(d, False)}
    rep.checks += 2
    if p > cap:
        rep.violations.append(
            {"lemma": "small balance", "d": d, "value": str(p), "cap": str(cap), "points": _points_repr(ps)}
        )
    if p not in allowed:
        rep.violations.append(
            {
                "lemma": "small balance (closed form)",
                "d": d,
                "convex": convex,
                "value": str(p),
                "expected": sorted(map(str, allowed)),
                "points": _points_repr(ps),
            }
        )
    if p == cap:
        rep.equality_cases.append({"lemma": "small balance", "d": d, "value": str(p), "label": ps.label})
    return rep


def check_balance(ps: PointSet, budget: int = DEFAULT_BUDGET) -> LemmaReport:
    """Balance and simplified-balance bounds at every integer threshold, exactly."""
    rep = LemmaReport(cases=1)
    n, d = ps.n, ps.d
    cs = facets.census(ps, budget)
    m = n - d
    half = Fraction(m, 2)
    for k in range(m + 1):
        tail = facets.larger_side_tail(cs, k, "randomized")
        if k >= half:
            x = k - half
            bound = bounds.balance_bound_exact(n, d, x)
            rep.checks += 1
            if tail > bound:
                rep.violations.append(
                    {"lemma": "balance", "n": n, "d": d, "k": k, "tail": str(tail),
                     "bound": str(bound), "points": _points_repr(ps)}
                )
        if Fraction(k, n) > Fraction(1, 2):
            bound = bounds.simplified_balance_exact(d, Fraction(k, n))
            rep.checks += 1
            if tail > bound:
                rep.violations.append(
                    {"lemma": "simplified balance", "n": n, "d": d, "k": k, "tail": str(tail),
                     "bound": str(bound), "points": _points_repr(ps)}
                )
    ubt = facets.cyclic_facet_count(n, d)
    rep.checks += 1
    if cs.table[0] > ubt:
        rep.violations.append(
            {"lemma": "upper bound theorem", "n": n, "d": d, "facets": cs.table[0],
             "cyclic": ubt, "points": _points_repr(ps)}
        )
    return rep


def verify_lemmas(d_max: int, n_max: int, sets_per_case: int, seed: int,
                  budget: int = DEFAULT_BUDGET) -> LemmaReport:
    """Exact check of the three balance lemmas over seeded and moment-curve sets.

    Any violation is an implementation bug: the lemmas are theorems.
    """
    rep = LemmaReport()
    for d in range(1, d_max + 1):
        for n in range(d + 1, n_max + 1):
            for ps in lemma_pointsets(d, n, sets_per_case, seed):
                rep.merge(check_balance(ps, budget))
                if n == d + 2:
                    rep.merge(check_small_balance(ps))
    return rep


def verify_model_equivalence(d_max: int = 3, n_max: int = 8) -> LemmaReport:
    """Root split laws: geometric moment curve vs interval model vs fringe tree."""
    rep = LemmaReport()
    for d in range(1, d_max + 1):
        for n in range(d, n_max + 1):
            rep.cases += 1
            geo = root_split_distribution(moment_curve(n, d))
            comb = moment_root_split_distribution(n, d)
            rep.checks += 1
            if geo != comb:
                rep.violations.append({"check": "geometric vs interval", "n": n, "d": d})
            if d % 2:
                rep.checks += 1
                if fringe_root_split_distribution(n, (d - 1) // 2) != geo:
                    rep.violations.append({"check": "geometric vs fringe", "n": n, "d": d})
    return rep


# ---------------------------------------------------------------------------
# domination by analytic split laws


def dkw_slack(m: int, alpha: float = 0.01) -> float:
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * m))


@dataclass(frozen=True)
class DominationReport:
    d: int
    n: int
    trials: int
    slack: float
    max_excess: dict
    passed: dict
    grid: list

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def verify_domination(d: int, n: int, trials: int, seed: int, alpha: float = 0.01,
                      ps: PointSet | None = None) -> DominationReport:
    """Empirical tail of ``N/n`` (N = larger root side) against analytic tails.

    Tails: the Example-2 law ``W`` (from the simplified balance lemma) and
    ``4 exp(-2d(x-1/2)^2)``.  Passes when the empirical tail never exceeds a
    tail by more than the DKW slack, over x > 1/2.  ``ps`` switches from the
    moment-curve model to geometric splits of a given set.
    """
    if ps is None:
        larger = root_split_samples(n, d, trials, seed)
    else:
        if (ps.n, ps.d) != (n, d):
            raise ValueError("point set does not match (n, d)")
        larger = root_split_samples_geometric(ps, trials, seed)
    frac = np.sort(larger / n)
    slack = dkw_slack(trials, alpha)
    laws = {"example2": bounds.SplitLaw.example2(d), "wagner": bounds.SplitLaw.wagner(d)}
    xs = np.unique(np.concatenate([frac[frac > 0.5], np.linspace(0.5, 1.0, 201)[1:]]))
    emp = 1.0 - np.searchsorted(frac, xs, side="left") / trials
    excess = {}
    for name, law in laws.items():
        tails = np.array([law.tail(float(x)) for x in xs])
        excess[name] = float(np.max(emp - tails))
    grid = []
    for x in np.linspace(0.55, 1.0, 10):
        w = laws["example2"].tail(float(x))
        h = laws["wagner"].tail(float(x))
        grid.append({"x": round(float(x), 4), "example2": w, "wagner": h,
                     "empirical": float(1.0 - np.searchsorted(frac, x, side="left") / trials)})
    passed = {k: v <= slack for k, v in excess.items()}
    return DominationReport(d, n, trials, slack, excess, passed, grid)


def depth_tail_empirical(n: int, d: int, trials: int, seed: int) -> np.ndarray:
    """``P(depth of a uniform random data point >= t)`` for t = 0, 1, ...

    Averaged over ``trials`` moment-curve trees.
    """
    profiles = [depth_profile(build_moment_hst(n, d, trial_seed(seed, i))) for i in range(trials)]
    width = max(map(len, profiles))
    acc = np.zeros(width)
    for p in profiles:
        acc[: len(p)] += p
    acc /= trials * n
    return acc[::-1].cumsum()[::-1]
