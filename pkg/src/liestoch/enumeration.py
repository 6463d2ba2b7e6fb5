"""Brute-force count tables.

Each family classifies every element (or pair of elements) of a finite set
of permutations or matchings by a partition label and by an orbit count, and
tallies the result in a table with rows indexed by the orbit count ``m``
(``(m, k)`` pairs for the two-sided ``G`` families) and columns by partitions
in :func:`~liestoch.symmfunc.partitions` order.

The search space is split into shards by the image of the first point; shards
are independent and their tables are summed in shard order, so serial and
parallel runs agree exactly.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import factorial, prod

import numpy as np

from . import _batch
from .permcore import Partition, special_permutation
from .symmfunc import class_size, partitions

__all__ = [
    "FAMILIES",
    "BudgetExceeded",
    "CountTable",
    "enumerate_table",
    "estimated_cost",
    "golden_table",
    "golden_tables",
    "table_checksums",
]

FAMILIES = ("FU", "GU", "FO", "GO", "FAI", "FAII", "FAIII", "FBDI")

# largest n enumerated without an explicit budget
DEFAULT_MAX_N = {"FU": 5, "FAI": 5, "FAII": 5, "FAIII": 5, "FO": 5, "FBDI": 4, "GU": 3, "GO": 3}

_PAIR_CHUNK = 1 << 18


class BudgetExceeded(RuntimeError):
    """Raised instead of starting an enumeration that is too expensive."""

    def __init__(self, family: str, n: int, cost: int, limit):
        self.family, self.n, self.cost, self.limit = family, n, cost, limit
        super().__init__(
            f"{family} at n={n} needs about {cost:.3g} classifications (limit: {limit})"
        )


def _double_factorial_odd(m: int) -> int:
    return prod(range(1, 2 * m, 2))


def estimated_cost(family: str, n: int) -> int:
    """Number of elements or pairs the enumeration classifies."""
    _check_family(family)
    return {
        "FU": factorial(n) ** 2,
        "FO": _double_factorial_odd(n) ** 2,
        "FAI": factorial(2 * n),
        "FAII": factorial(2 * n),
        "FAIII": factorial(2 * n),
        "FBDI": _double_factorial_odd(2 * n),
        "GU": factorial(2 * n) ** 2,
        "GO": _double_factorial_odd(2 * n) ** 2,
    }[family]


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# table type

@dataclass(frozen=True)
class CountTable:
    family: str
    n: int
    row_labels: tuple
    columns: tuple
    entries: tuple

    @property
    def two_sided(self) -> bool:
        return self.family in ("GU", "GO")

    def as_lists(self) -> list:
        return [list(r) for r in self.entries]

    def cell(self, row, lam) -> int:
        return self.entries[self.row_labels.index(row)][self.columns.index(Partition(lam))]

    def items(self):
        """Non-zero cells as ``(row_label, partition, count)``."""
        for label, row in zip(self.row_labels, self.entries):
            for lam, c in zip(self.columns, row):
                if c:
                    yield label, lam, c

    def total(self) -> int:
        return sum(sum(r) for r in self.entries)

    def column_sums(self) -> list:
        return [sum(col) for col in zip(*self.entries)]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "row_labels": [list(r) if isinstance(r, tuple) else r for r in self.row_labels],
            "col_partitions": [str(c) for c in self.columns],
            "entries": self.as_lists(),
        }


# ---------------------------------------------------------------------------
# per-family layout

def _layout(family: str, n: int):
    """Row labels and column partitions."""
    if family in ("FU", "FO", "FAI", "FAII"):
        return tuple(range(1, n + 1)), tuple(partitions(n))
    if family == "FAIII":
        return tuple(range(1, n + 1)), tuple(partitions(2 * n))
    if family == "FBDI":
        return tuple(range(1, 2 * n + 1)), tuple(partitions(2 * n))
    labels = tuple((m, k) for m in range(1, n + 1) for k in range(1, n + 1))
    return labels, tuple(partitions(2 * n))


def _shards(family: str, n: int) -> list:
    if family == "FU":
        return list(range(n))
    if family in ("FO", "FBDI", "GO"):
        pts = 2 * n if family == "FO" else 4 * n
        return list(range(1, pts))
    return list(range(2 * n))


def _tally(rows: np.ndarray, cols: np.ndarray, nrows: int, ncols: int, weights=None) -> np.ndarray:
    if rows.size and (rows.min() < 0 or rows.max() >= nrows):
        raise AssertionError("orbit count outside the table range")
    flat = np.bincount(rows * ncols + cols, weights=weights, minlength=nrows * ncols)
    return np.rint(flat).astype(np.int64).reshape(nrows, ncols)


def _pairs(first: np.ndarray, second: np.ndarray):
    """Chunks of the cartesian product ``first x second`` as row-index arrays."""
    step = max(1, _PAIR_CHUNK // max(1, second.shape[0]))
    for s in range(0, first.shape[0], step):
        i = np.repeat(np.arange(s, min(s + step, first.shape[0])), second.shape[0])
        j = np.tile(np.arange(second.shape[0]), min(step, first.shape[0] - s))
        yield i, j


def _z(p: np.ndarray) -> np.ndarray:
    return np.asarray(p, dtype=_batch.DTYPE)


def _shard_fu(n, shard):
    cols = partitions(n)
    pi = _z(special_permutation("pi_U", n).zero_based)
    pi_inv = _batch.inverse(pi)[0]
    sigmas = _batch.all_permutations(n, shard)
    taus = _batch.all_permutations(n)
    out = np.zeros((n, len(cols)), dtype=np.int64)
    for i, j in _pairs(sigmas, taus):
        s, t = sigmas[i], taus[j]
        prod_ = _batch.compose(_batch.compose(_batch.compose(pi_inv, _batch.inverse(s)), pi), t)
        lam = _batch.keys_to_index(_batch.cycle_type_keys(prod_), n)
        m = _batch.orbit_counts([t, s], n)
        out += _tally(m - 1, lam, n, len(cols))
    return out


def _shard_fo(n, shard):
    cols = partitions(n)
    k = 2 * n
    pi = _z(special_permutation("pi_O", n).zero_based)
    phi = _z(special_permutation("phi_U", n).zero_based)
    first = _batch.all_matchings(k, shard)
    everything = _batch.all_matchings(k)
    out = np.zeros((n, len(cols)), dtype=np.int64)
    for i, j in _pairs(first, everything):
        s, t = first[i], everything[j]
        lam = _batch.keys_to_index(_batch.coset_type_keys(s, t), n)
        m = _batch.orbit_counts([t, _batch.conjugate_involution(pi, s), phi], k)
        out += _tally(m - 1, lam, n, len(cols))
    return out


def _shard_fai(n, shard, signed=False):
    cols = partitions(n)
    k = 2 * n
    varphi = _z(special_permutation("varphi_U", n).zero_based)
    trivial = _z([x ^ 1 for x in range(k)])
    sigmas = _batch.all_permutations(k, shard)
    image = _batch.conjugate_involution(sigmas, trivial)
    lam = _batch.keys_to_index(_batch.coset_type_keys(np.broadcast_to(trivial, image.shape), image), n)
    m = _batch.orbit_counts([sigmas, varphi], k)
    weights = _batch.signs(sigmas).astype(np.float64) if signed else None
    return _tally(m - 1, lam, n, len(cols), weights)


def _shard_faiii(n, shard):
    k = 2 * n
    cols = partitions(k)
    phi = _z(special_permutation("phi_U", n).zero_based)
    varphi = _z(special_permutation("varphi_U", n).zero_based)
    sigmas = _batch.all_permutations(k, shard)
    lam = _batch.keys_to_index(_batch.cycle_type_keys(sigmas), k)
    m = _batch.orbit_counts([_batch.compose(sigmas, phi), varphi], k)
    return _tally(m - 1, lam, n, len(cols))


def _shard_fbdi(n, shard):
    k = 4 * n
    cols = partitions(2 * n)
    pi = _z(special_permutation("pi_BDI", n).zero_based)
    trivial = _z([x ^ 1 for x in range(k)])
    ms = _batch.all_matchings(k, shard)
    lam = _batch.keys_to_index(_batch.coset_type_keys(np.broadcast_to(trivial, ms.shape), ms), 2 * n)
    m = _batch.orbit_counts([ms, pi], k)
    return _tally(m - 1, lam, 2 * n, len(cols))


def _shard_two_sided(family, n, shard):
    k = 2 * n if family == "GU" else 4 * n
    cols = partitions(2 * n)
    if family == "GU":
        left = _z(special_permutation("phi_U", n).zero_based)
        right = _z(special_permutation("varphi_U", n).zero_based)
        first = _batch.all_permutations(k, shard)
        everything = _batch.all_permutations(k)
    else:
        left = _z(special_permutation("phi_O", n).zero_based)
        right = _z(special_permutation("varphi_O", n).zero_based)
        first = _batch.all_matchings(k, shard)
        everything = _batch.all_matchings(k)
    # orbit counts depend on one side only
    m_first = _batch.orbit_counts([first, left], k)
    k_all = _batch.orbit_counts([everything, right], k)
    out = np.zeros((n * n, len(cols)), dtype=np.int64)
    for i, j in _pairs(first, everything):
        s, t = first[i], everything[j]
        if family == "GU":
            lam = _batch.keys_to_index(_batch.cycle_type_keys(_batch.compose(_batch.inverse(s), t)), 2 * n)
        else:
            lam = _batch.keys_to_index(_batch.coset_type_keys(s, t), 2 * n)
        row = (m_first[i] - 1) * n + (k_all[j] - 1)
        out += _tally(row, lam, n * n, len(cols))
    return out


def _run_shard(family: str, n: int, shard: int) -> np.ndarray:
    if family == "FU":
        return _shard_fu(n, shard)
    if family == "FO":
        return _shard_fo(n, shard)
    if family == "FAI":
        return _shard_fai(n, shard)
    if family == "FAII":
        return _shard_fai(n, shard, signed=True)
    if family == "FAIII":
        return _shard_faiii(n, shard)
    if family == "FBDI":
        return _shard_fbdi(n, shard)
    return _shard_two_sided(family, n, shard)


def enumerate_table(family: str, n: int, workers: int = 1, budget: int | None = None) -> CountTable:
    """Count table of ``family`` at order ``n``.

    ``budget`` caps the number of classified elements; without it the
    per-family default ceiling on ``n`` applies.  ``workers > 1`` runs shards
    in a process pool.
    """
    _check_family(family)
    if n < 1:
        raise ValueError("n must be >= 1")
    cost = estimated_cost(family, n)
    if budget is not None:
        if cost > budget:
            raise BudgetExceeded(family, n, cost, budget)
    elif n > DEFAULT_MAX_N[family]:
        raise BudgetExceeded(family, n, cost, f"n <= {DEFAULT_MAX_N[family]}")
    labels, cols = _layout(family, n)
    shards = _shards(family, n)
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, [family] * len(shards), [n] * len(shards), shards))
    else:
        parts = [_run_shard(family, n, s) for s in shards]
    total = np.zeros((len(labels), len(cols)), dtype=np.int64)
    for p in parts:
        total += p
    entries = tuple(tuple(int(x) for x in row) for row in total)
    return CountTable(family, n, labels, cols, entries)


# ---------------------------------------------------------------------------
# checksums

def _z2(lam: Partition) -> int:
    return prod((2 * i) ** a * factorial(a) for i, a in lam.multiplicities().items())


def _matchings_of_type(lam: Partition) -> int:
    """Matchings whose union with the trivial one has coset type ``lam``."""
    n = lam.weight
    return 2 ** n * factorial(n) // _z2(lam)


def _expected_columns(family: str, n: int, cols) -> list:
    if family == "FU":
        return [factorial(n) * class_size(c) for c in cols]
    if family == "FO":
        return [_double_factorial_odd(n) * _matchings_of_type(c) for c in cols]
    if family == "FAI":
        return [2 ** n * factorial(n) * _matchings_of_type(c) for c in cols]
    if family == "FAII":
        # (1 2) lies in the hyperoctahedral group, so signs cancel on each double coset
        return [0 for _ in cols]
    if family == "FAIII":
        return [class_size(c) for c in cols]
    if family == "FBDI":
        return [_matchings_of_type(c) for c in cols]
    if family == "GU":
        return [factorial(2 * n) * class_size(c) for c in cols]
    return [_double_factorial_odd(2 * n) * _matchings_of_type(c) for c in cols]


def _expected_total(family: str, n: int) -> int:
    if family == "FAII":
        return 0
    return estimated_cost(family, n)


def table_checksums(t: CountTable) -> dict:
    """Compare totals and column sums with closed-form counts.

    Returns a report with ``ok`` and, on failure, ``failures`` naming the
    offending columns.
    """
    failures = []
    total_expected = _expected_total(t.family, t.n)
    if t.total() != total_expected:
        failures.append(f"total {t.total()} != {total_expected}")
    for lam, got, want in zip(t.columns, t.column_sums(), _expected_columns(t.family, t.n, t.columns)):
        if got != want:
            failures.append(f"column {lam}: sum {got} != {want}")
    if t.family == "FU":
        anchor = t.cell(t.n, Partition([1] * t.n))
        if anchor != 1:
            failures.append(f"cell (m={t.n}, {Partition([1] * t.n)}) = {anchor} != 1")
    return {
        "family": t.family,
        "n": t.n,
        "total": t.total(),
        "expected_total": total_expected,
        "ok": not failures,
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# golden tables

@lru_cache(maxsize=None)
def golden_tables() -> dict:
    """Stored reference tables keyed by ``(family, n)`` as lists of rows."""
    text = resources.files("liestoch").joinpath("data/golden_tables.json").read_text()
    raw = json.loads(text)
    return {(fam, int(n)): rows for fam, by_n in raw.items() for n, rows in by_n.items()}


def golden_table(family: str, n: int):
    return golden_tables().get((family, n))
