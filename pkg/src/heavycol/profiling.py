"""Recursion-cost measurement for the certificate procedures.

Growth tables record exact call counts for plain and memoized runs across
matrix families; counts are a pure function of (algorithm, matrix, config),
so they double as behavioral regression gates.  Wall times are carried for
context but never asserted.

Families:
  * full_cube     - all 2^n rows; the classic blow-up case for plain runs.
  * random_half   - a seeded half-of-the-cube sample per n.
  * worst_found   - the highest-call-count matrix of each small exhaustive
                    universe, harvested once and persisted to the store.

A run that outlives its wall-clock budget is marked (empty metrics) and the
table is still emitted.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .algorithms import BudgetExceeded, run_a1, run_a2, run_memoized
from .matrix import BinaryMatrix, matrix_to_text, parse_matrix
from .verification import UniverseSpec, enumerate_universe

CSV_HEADER = ["n", "family", "m", "algo", "variant", "calls", "cache_hits", "max_depth", "elapsed_ns"]
DEFAULT_BUDGET_NS = 2_000_000_000

FULL_CUBE_MAX_N = 10
OTHER_MAX_N = 16


class MissingBaseline(Exception):
    """No stored baseline (or baseline row) matches the current run."""


@dataclass(frozen=True)
class GrowthRow:
    """One (matrix, algorithm, variant) measurement; None metrics = timed out."""

    n: int
    family: str
    m: int
    algo: str
    variant: str
    calls: int | None
    cache_hits: int | None
    max_depth: int | None
    elapsed_ns: int | None

    @property
    def timed_out(self) -> bool:
        return self.calls is None

    def key(self) -> tuple:
        return (self.family, self.n, self.algo, self.variant)


@dataclass(frozen=True)
class GrowthTable:
    rows: tuple[GrowthRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([
                r.n, r.family, r.m, r.algo, r.variant,
                "" if r.calls is None else r.calls,
                "" if r.cache_hits is None else r.cache_hits,
                "" if r.max_depth is None else r.max_depth,
                "" if r.elapsed_ns is None else r.elapsed_ns,
            ])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GrowthTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected growth CSV header: {header}")
        rows = []
        for rec in reader:
            if not rec:
                continue
            n, family, m, algo, variant, calls, hits, depth, elapsed = rec
            rows.append(GrowthRow(
                n=int(n), family=family, m=int(m), algo=algo, variant=variant,
                calls=int(calls) if calls else None,
                cache_hits=int(hits) if hits else None,
                max_depth=int(depth) if depth else None,
                elapsed_ns=int(elapsed) if elapsed else None,
            ))
        return cls(tuple(rows))

    def to_dict(self) -> dict:
        return {"rows": [vars_row(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def key_map(self) -> dict[tuple, GrowthRow]:
        return {r.key(): r for r in self.rows}


def vars_row(r: GrowthRow) -> dict:
    return {
        "n": r.n, "family": r.family, "m": r.m, "algo": r.algo, "variant": r.variant,
        "calls": r.calls, "cache_hits": r.cache_hits,
        "max_depth": r.max_depth, "elapsed_ns": r.elapsed_ns,
    }


def family_label(family) -> str:
    if isinstance(family, tuple):
        kind, seed = family
        return f"{kind}:{seed}"
    return family


def _family_matrix(family, n: int, algo: str, store: Path | None) -> BinaryMatrix:
    if family == "full_cube":
        return BinaryMatrix(tuple(range(2**n)), n)
    if isinstance(family, tuple) and family[0] == "random_half":
        seed = family[1]
        m = max(1, 2 ** (n - 1))
        rng = random.Random(f"{seed}:{n}")
        return BinaryMatrix(tuple(sorted(rng.sample(range(2**n), m))), n)
    if family == "worst_found":
        return _worst_specimen(n, algo, store)
    raise ValueError(f"unknown family {family!r}")


def harvest_worst(n: int, algo: str) -> BinaryMatrix:
    """Exhaustively find the matrix with the highest plain call count."""
    run = run_a1 if algo == "a1" else run_a2
    best = None
    best_calls = -1
    for matrix in enumerate_universe(UniverseSpec(n=n)):
        calls = run(matrix).stats.calls
        if calls > best_calls:
            best, best_calls = matrix, calls
    return best


def _worst_specimen(n: int, algo: str, store: Path | None) -> BinaryMatrix:
    if store is not None:
        path = Path(store) / f"worst_{algo}_n{n}.txt"
        if path.exists():
            return parse_matrix(path.read_text())
    matrix = harvest_worst(n, algo)
    if store is not None:
        path = Path(store) / f"worst_{algo}_n{n}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(matrix_to_text(matrix) + "\n")
    return matrix


def _measure(algo: str, matrix: BinaryMatrix, memoize: bool, budget_ns: int | None):
    try:
        if memoize:
            verdict = run_memoized(algo, matrix, budget_ns=budget_ns)
        elif algo == "a1":
            verdict = run_a1(matrix, budget_ns=budget_ns)
        else:
            verdict = run_a2(matrix, budget_ns=budget_ns)
    except BudgetExceeded:
        return None
    return verdict.stats


def profile_family(
    family,
    n_range,
    *,
    algos: tuple[str, ...] = ("a1", "a2"),
    budget_ns: int | None = DEFAULT_BUDGET_NS,
    store: Path | None = None,
) -> GrowthTable:
    """Run plain and memoized variants over one family, one row per variant.

    `family` is "full_cube", ("random_half", seed), or "worst_found";
    n_range is any iterable of column counts.
    """
    label = family_label(family)
    rows = []
    for n in n_range:
        cap = FULL_CUBE_MAX_N if family == "full_cube" else OTHER_MAX_N
        if not 1 <= n <= cap:
            raise ValueError(f"n={n} outside 1..{cap} for family {label}")
        for algo in algos:
            matrix = _family_matrix(family, n, algo, store)
            for variant, memoize in (("plain", False), ("memoized", True)):
                stats = _measure(algo, matrix, memoize, budget_ns)
                if stats is None:
                    rows.append(GrowthRow(n, label, matrix.m, algo, variant,
                                          None, None, None, None))
                else:
                    rows.append(GrowthRow(n, label, matrix.m, algo, variant,
                                          stats.calls, stats.cache_hits,
                                          stats.max_depth, stats.elapsed_ns))
    return GrowthTable(tuple(rows))


# --- baseline store and regression diffs ------------------------------------


def config_digest(family, n_range, algos: tuple[str, ...]) -> str:
    ns = list(n_range)
    text = f"{family_label(family)}|{min(ns)}-{max(ns)}|{','.join(algos)}"
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def baseline_path(store: Path, family, n_range, algos: tuple[str, ...]) -> Path:
    return Path(store) / f"growth_{config_digest(family, n_range, algos)}.csv"


def save_baseline(table: GrowthTable, store: Path, family, n_range, algos) -> Path:
    path = baseline_path(store, family, n_range, algos)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(table.to_csv())
    return path


def load_baseline(store: Path, family, n_range, algos) -> GrowthTable:
    path = baseline_path(store, family, n_range, algos)
    if not path.exists():
        raise MissingBaseline(f"no baseline at {path}")
    return GrowthTable.from_csv(path.read_text())


@dataclass(frozen=True)
class DiffEntry:
    key: tuple
    field: str
    baseline: int | None
    current: int | None


@dataclass(frozen=True)
class DiffReport:
    """Behavioral changes (call counts and friends) vs time-only drift."""

    behavioral: tuple[DiffEntry, ...]
    informational: tuple[DiffEntry, ...]

    @property
    def clean(self) -> bool:
        return not self.behavioral

    def to_dict(self) -> dict:
        def entries(items):
            return [
                {"key": list(e.key), "field": e.field,
                 "baseline": e.baseline, "current": e.current}
                for e in items
            ]
        return {
            "behavioral": entries(self.behavioral),
            "informational": entries(self.informational),
            "clean": self.clean,
        }


_BEHAVIORAL_FIELDS = ("m", "calls", "cache_hits", "max_depth")


def snapshot_compare(current: GrowthTable, baseline: GrowthTable) -> DiffReport:
    """Diff a fresh table against a stored one, row-matched by key."""
    base = baseline.key_map()
    behavioral = []
    informational = []
    for row in current.rows:
        old = base.get(row.key())
        if old is None:
            raise MissingBaseline(f"baseline has no row for {row.key()}")
        for fld in _BEHAVIORAL_FIELDS:
            a, b = getattr(old, fld), getattr(row, fld)
            if a != b:
                behavioral.append(DiffEntry(row.key(), fld, a, b))
        if old.elapsed_ns != row.elapsed_ns:
            informational.append(DiffEntry(row.key(), "elapsed_ns", old.elapsed_ns, row.elapsed_ns))
    return DiffReport(tuple(behavioral), tuple(informational))
