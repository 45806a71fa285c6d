"""Seeded replication driver, distribution statistics, and the BKV registry.

A distribution run executes one greedy solver over a block of seeds and
aggregates the value histogram plus five-number statistics (min, median,
mean, standard deviation, max). When a best-known value is available the
same statistics are reported normalized by it.
"""

from __future__ import annotations

import json
import os
import statistics
from dataclasses import dataclass

from . import cover
from .formatting import fmt_fixed, fmt_number
from .generators import isomorph_permutation, seeded_rng
from .instances import UNIT, BigraphInstance

SOLVERS = ("stoc", "iso")
SEED_MODES = ("consecutive", "random")

BKV_REGISTRY_ENV = "BGLAB_BKV_REGISTRY"


@dataclass(frozen=True)
class Stats:
    """Five-number summary: min, median, mean, sample sd, max.

    The median of an even-count sample is the lower-middle value, so medians
    stay achievable cover values; the standard deviation uses the n-1
    denominator.
    """

    min: float
    median: float
    mean: float
    sd: float
    max: float

    @classmethod
    def from_values(cls, values) -> "Stats":
        values = list(values)
        if not values:
            raise ValueError("empty sample")
        sd = statistics.stdev(values) if len(values) > 1 else 0.0
        return cls(min=min(values), median=statistics.median_low(values),
                   mean=statistics.mean(values), sd=sd, max=max(values))

    def scaled(self, divisor: float) -> "Stats":
        return Stats(min=self.min / divisor, median=self.median / divisor,
                     mean=self.mean / divisor, sd=self.sd / divisor,
                     max=self.max / divisor)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.min, self.median, self.mean, self.sd, self.max)


@dataclass(frozen=True)
class DistributionSummary:
    """Aggregate of one seeded replication block on one instance."""

    instance_name: str
    num_seeds: int
    solver: str
    value_histogram: dict[float, int]
    stats: Stats
    bkv: float | None
    ratio_stats: Stats | None


class BkvRegistry:
    """Best-known cover values keyed by instance file name."""

    def __init__(self, entries: dict[str, tuple[float, str]] | None = None):
        self._entries: dict[str, tuple[float, str]] = dict(entries or {})

    def register(self, name: str, value: float, note: str = "") -> None:
        if not value > 0:
            raise ValueError(f"{name}: bkv must be positive")
        self._entries[name] = (float(value), note)

    def get(self, name: str) -> float | None:
        entry = self._entries.get(name)
        return entry[0] if entry else None

    def note(self, name: str) -> str | None:
        entry = self._entries.get(name)
        return entry[1] if entry else None

    def lookup_instance(self, instance: BigraphInstance) -> float | None:
        """Try `<name>.cnfU` / `<name>.cnfW` per weight kind, then the name."""
        ext = ".cnfU" if instance.weight_kind == UNIT else ".cnfW"
        for key in (instance.name + ext, instance.name):
            value = self.get(key)
            if value is not None:
                return value
        return None

    def load_file(self, path: str) -> None:
        """Overlay entries from a JSON file: {name: value} or
        {name: {"value": v, "note": s}}."""
        with open(path) as fh:
            data = json.load(fh)
        for name, entry in data.items():
            if isinstance(entry, dict):
                self.register(name, float(entry["value"]),
                              str(entry.get("note", "")))
            else:
                self.register(name, float(entry))

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)


# Best published cover values for the bundled benchmark families.
_DEFAULT_BKVS: dict[str, tuple[float, str]] = {
    "s3_027_117.cnfU": (18, "steiner3"),
    "s3_045_330.cnfU": (30, "steiner3"),
    "s3_081_1080.cnfU": (61, "steiner3"),
    "s3_135_3015.cnfU": (103, "steiner3"),
    "s3_243_9801.cnfU": (198, "steiner3"),
    "s3_405_27270.cnfU": (335, "steiner3"),
    "s3_729_88452.cnfU": (617, "steiner3"),
    "scpb1.cnfU": (22, "or-library, unit weights"),
    "scpc1.cnfU": (44, "or-library, unit weights"),
    "scpd1.cnfU": (25, "or-library, unit weights"),
    "scpb1.cnfW": (69, "or-library"),
    "scpc1.cnfW": (227, "or-library"),
    "scpd1.cnfW": (60, "or-library"),
    "scp41.cnfW": (429, "or-library"),
    "scp42.cnfW": (512, "or-library"),
    "scp43.cnfW": (516, "or-library"),
    "scp44.cnfW": (494, "or-library"),
    "scp45.cnfW": (512, "or-library"),
    "scp46.cnfW": (560, "or-library"),
    "scp47.cnfW": (430, "or-library"),
    "scp48.cnfW": (492, "or-library"),
    "scp49.cnfW": (641, "or-library"),
    "scp51.cnfW": (253, "or-library"),
    "scp61.cnfW": (138, "or-library"),
    "scpa1.cnfW": (253, "or-library"),
    "m100_50_10_10.cnfU": (8, "random suite"),
    "m100_100_10_10.cnfU": (12, "random suite"),
    "m100_100_10_15.cnfU": (10, "random suite"),
    "m100_100_10_30.cnfU": (9, "random suite"),
    "m100_100_30_30.cnfU": (6, "random suite"),
    "m200_100_10_30.cnfU": (11, "random suite"),
    "m200_100_30_50.cnfU": (6, "random suite"),
    "chvatal_6_5.cnfW": (1.1, "worst-case construction"),
    "chvatal_19_18.cnfW": (0.5, "worst-case construction, scaled"),
    "school_9_11__0.cnfU": (4, "school example"),
    "school_9_11.cnfU": (4, "school example"),
    "school_9_16.cnfU": (5, "school example"),
    "school_9_16.cnfW": (10, "school example"),
    "school_19_20.cnfU": (6, "school example"),
    "school_19_20.cnfW": (11.5, "school example"),
    "school_19_20_1.cnfW": (3.833, "school example, reweighted"),
    "school_19_20_5.cnfW": (16.1, "school example, reweighted"),
    "school_5_5_ref.cnfU": (2, "school example, scaled down"),
    "school_5_5_iso.cnfU": (2, "school example, scaled down"),
}

_default_registry: BkvRegistry | None = None


def default_registry() -> BkvRegistry:
    """Registry preloaded with the bundled suite; the path in the
    BGLAB_BKV_REGISTRY environment variable, if set, is overlaid on top."""
    global _default_registry
    if _default_registry is None:
        registry = BkvRegistry(_DEFAULT_BKVS)
        override = os.environ.get(BKV_REGISTRY_ENV)
        if override:
            registry.load_file(override)
        _default_registry = registry
    return _default_registry


def ratio_stats(values, bkv: float) -> Stats:
    """Five-number summary of values / bkv (full precision)."""
    if not values:
        raise ValueError("empty sample")
    if not bkv > 0:
        raise ValueError("bkv must be positive")
    return Stats.from_values([v / bkv for v in values])


def run_cover_distribution(instance: BigraphInstance, num_seeds: int,
                           solver: str = "stoc",
                           seed_mode: str = "consecutive",
                           bkv: float | None = None,
                           registry: BkvRegistry | None = None,
                           meta_seed: int = 0,
                           tie_tol: float = 0.0) -> DistributionSummary:
    """Run `num_seeds` replicas of one stochastic solver and aggregate.

    Consecutive mode runs replica ids 1..num_seeds; random mode draws
    num_seeds six-digit seeds from a generator keyed by meta_seed. Ratio
    statistics appear when a best-known value is supplied or registered.
    """
    if num_seeds < 1:
        raise ValueError("num_seeds must be >= 1")
    if solver not in SOLVERS:
        raise ValueError(f"solver must be one of {SOLVERS}")
    if seed_mode not in SEED_MODES:
        raise ValueError(f"seed_mode must be one of {SEED_MODES}")
    if seed_mode == "consecutive":
        seeds = range(1, num_seeds + 1)
    else:
        meta = seeded_rng(meta_seed)
        seeds = [int(s) for s in meta.integers(0, 10**6, size=num_seeds)]

    engine = cover._Engine(instance)
    values: list[float] = []
    histogram: dict[float, int] = {}
    for rid in seeds:
        try:
            if solver == "stoc":
                sol = cover._greedy_stoc_run(engine, rid, tie_tol)
            else:
                perm = isomorph_permutation(instance.n_cols, rid)
                sol = cover._greedy_iso_run(engine, perm, rid, tie_tol)
        except Exception as exc:
            raise RuntimeError(
                f"{instance.name}: solver {solver} failed on replica "
                f"{rid}: {exc}") from exc
        values.append(sol.value)
        histogram[sol.value] = histogram.get(sol.value, 0) + 1

    stats = Stats.from_values(values)
    if bkv is None:
        bkv = (registry or default_registry()).lookup_instance(instance)
    ratios = stats.scaled(bkv) if bkv is not None else None
    return DistributionSummary(instance_name=instance.name,
                               num_seeds=num_seeds, solver=solver,
                               value_histogram=histogram, stats=stats,
                               bkv=bkv, ratio_stats=ratios)


def converge_check(instance: BigraphInstance, seed_counts, solver: str,
                   seed_mode: str = "consecutive",
                   bkv: float | None = None,
                   registry: BkvRegistry | None = None,
                   meta_seed: int = 0) -> list[DistributionSummary]:
    """One distribution summary per seed count (counts must ascend)."""
    counts = list(seed_counts)
    if not counts:
        raise ValueError("seed_counts must be nonempty")
    if counts != sorted(counts):
        raise ValueError("seed_counts must be ascending")
    return [run_cover_distribution(instance, count, solver, seed_mode,
                                   bkv=bkv, registry=registry,
                                   meta_seed=meta_seed)
            for count in counts]


def ratio_bucket_report(summaries) -> tuple[int, int, int]:
    """Counts of instances by best (minimum) observed ratio.

    Bands: exactly 1.0; within (1.0, 1.1]; above 1.1. Every summary needs
    ratio statistics, i.e. a registered best-known value.
    """
    eps = 1e-9
    at_opt = within_10 = above = 0
    for summary in summaries:
        if summary.ratio_stats is None:
            raise ValueError(f"{summary.instance_name}: no bkv registered")
        best = summary.ratio_stats.min
        if best <= 1.0 + eps:
            at_opt += 1
        elif best <= 1.1 + eps:
            within_10 += 1
        else:
            above += 1
    return at_opt, within_10, above


def stats_string(stats: Stats) -> str:
    """Comma-joined min,median,mean,sd,max with table-style rounding."""
    return ",".join(fmt_number(v, 2) for v in stats.as_tuple())


def ratio_string(value_stats: Stats, bkv: float) -> str:
    """Ratio statistics string derived from the displayed value statistics.

    Each component is the two-decimal rounded value statistic divided by the
    best-known value, printed with a fixed two decimals.
    """
    if not bkv > 0:
        raise ValueError("bkv must be positive")
    return ",".join(fmt_fixed(round(v, 2) / bkv, 2)
                    for v in value_stats.as_tuple())


def summary_rows(summary: DistributionSummary
                 ) -> list[tuple[str, int, float, int]]:
    """Histogram as (instance, num_seeds, value, count) rows, ascending."""
    return [(summary.instance_name, summary.num_seeds, value, count)
            for value, count in sorted(summary.value_histogram.items())]
