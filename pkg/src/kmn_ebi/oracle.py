"""Exact edge-balanced index sets of small K_{m,n} by exhaustive search.

Two independent enumerators:

* :func:`naive_enumerate` scans every placement of the 1-edges over the
  ``m*n`` cells (vectorised with numpy, hard-limited to ``m*n <= 24``);
* :func:`canonical_enumerate` walks multisets of A-row patterns in
  nondecreasing order, which is exact because permuting the rows of A
  permutes vertices inside one part and leaves every degree unchanged.

Both accept any positive (m, n), not just the odd/even class.
"""

from __future__ import annotations

import time
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .core import EdgeLabeling, ebi_index
from .theorem import IndexSet

NAIVE_MAX_CELLS = 24


class StateCapExceeded(RuntimeError):
    def __init__(self, visited: int, cap: int) -> None:
        super().__init__(f"state cap {cap} exceeded after {visited} visited assignments")
        self.visited = visited
        self.cap = cap

    def __reduce__(self):
        return (StateCapExceeded, (self.visited, self.cap))


@dataclass(frozen=True)
class SearchConfig:
    """``state_cap`` bounds visited assignments (partial and complete).

    With ``both_parities`` an odd ``m*n`` is searched at both
    e1 = floor(mn/2) and ceil(mn/2); otherwise only the floor. ``orient``
    lets the canonical search put the larger part on the rows.
    """

    state_cap: int = 50_000_000
    both_parities: bool = True
    threads: int = 1
    orient: bool = True

    def __post_init__(self) -> None:
        if self.state_cap <= 0:
            raise ValueError("state_cap must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class SearchResult:
    indices: IndexSet
    method: str
    states_visited: int
    leaves: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "indices": self.indices.to_list(),
            "states_visited": self.states_visited,
            "leaves": self.leaves,
            "elapsed_s": round(self.elapsed, 6),
        }


def _check_size(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"part sizes must be positive, got ({m}, {n})")
    if m * n < 2:
        # a single edge cannot carry both labels, so no labeling is surjective
        raise ValueError("K_{1,1} has no surjective edge labeling")


def one_counts(m: int, n: int, cfg: SearchConfig) -> list[int]:
    """Admissible numbers of 1-edges for an edge-friendly labeling."""
    cells = m * n
    if cells % 2 == 0:
        return [cells // 2]
    if cfg.both_parities:
        return [cells // 2, cells // 2 + 1]
    return [cells // 2]


# -- naive ----------------------------------------------------------------


def _naive_chunk(words: np.ndarray, m: int, n: int) -> set[int]:
    row_mask = np.uint64((1 << n) - 1)
    diff = np.zeros(words.shape, dtype=np.int64)
    col = np.zeros((n,) + words.shape, dtype=np.int64)
    for r in range(m):
        row = (words >> np.uint64(r * n)) & row_mask
        w = np.bitwise_count(row).astype(np.int64)
        diff += np.sign(2 * w - n)
        for c in range(n):
            col[c] += ((row >> np.uint64(c)) & np.uint64(1)).astype(np.int64)
    for c in range(n):
        diff += np.sign(2 * col[c] - m)
    return set(np.unique(np.abs(diff)).tolist())


def naive_search(m: int, n: int, cfg: SearchConfig = SearchConfig(), chunk: int = 1 << 20) -> SearchResult:
    _check_size(m, n)
    cells = m * n
    if cells > NAIVE_MAX_CELLS:
        raise ValueError(f"naive enumeration needs m*n <= {NAIVE_MAX_CELLS}, got {cells}")
    targets = one_counts(m, n, cfg)
    total = sum(comb(cells, t) for t in targets)
    if total > cfg.state_cap:
        raise StateCapExceeded(total, cfg.state_cap)
    t0 = time.perf_counter()
    found: set[int] = set()
    wanted = np.array(targets)
    for lo in range(0, 1 << cells, chunk):
        words = np.arange(lo, min(lo + chunk, 1 << cells), dtype=np.uint64)
        words = words[np.isin(np.bitwise_count(words), wanted)]
        if words.size:
            found |= _naive_chunk(words, m, n)
    return SearchResult(IndexSet(found), "naive", total, total, time.perf_counter() - t0)


def naive_enumerate(m: int, n: int, cfg: SearchConfig = SearchConfig()) -> IndexSet:
    return naive_search(m, n, cfg).indices


# -- canonical --------------------------------------------------------------


class _Canonical:
    """Row-multiset search with column tallies packed into one integer.

    Column c owns bits [c*b, (c+1)*b). Adding a row pattern adds its
    "spread" (a 1 in the low bit of each chosen field). A column is a
    1-vertex when its tally is at least ``m//2 + 1``; adding a bias of
    ``2**(b-1) - threshold`` to every field turns that test into the top
    bit of the field, so a popcount counts such columns at once.

    Patterns are ordered by weight, then lexicographically by support,
    and generated per weight on first use.
    """

    def __init__(self, m: int, n: int, cap: int) -> None:
        self.m, self.n, self.cap = m, n, cap
        self.b = b = m.bit_length() + 1
        self.start = [0] * (n + 2)
        for k in range(n + 1):
            self.start[k + 1] = self.start[k] + comb(n, k)
        self._by_weight: dict[int, list[int]] = {}
        self.row_sign = [(2 * k > n) - (2 * k < n) for k in range(n + 1)]
        half_top = 1 << (b - 1)
        self.top = sum(half_top << (c * b) for c in range(n))
        # tally >= m//2 + 1  <=> 1-vertex; tally >= ceil(m/2) <=> not a 0-vertex
        self.bias_one = sum((half_top - (m // 2 + 1)) << (c * b) for c in range(n))
        self.bias_not_zero = sum((half_top - (m + 1) // 2) << (c * b) for c in range(n))
        self.found: set[int] = set()
        self.seen: set[tuple[int, int, int, int]] = set()
        self.visited = 0
        self.leaves = 0

    def spreads(self, k: int) -> list[int]:
        out = self._by_weight.get(k)
        if out is None:
            b = self.b
            out = [sum(1 << (c * b) for c in support) for support in combinations(range(self.n), k)]
            self._by_weight[k] = out
        return out

    def weight_of(self, idx: int) -> int:
        return bisect_right(self.start, idx) - 1

    def _bump(self, k: int) -> None:
        self.visited += k
        if self.visited > self.cap:
            raise StateCapExceeded(self.visited, self.cap)

    def _evaluate(self, tally: int, diff: int) -> int:
        return abs(diff + ((tally + self.bias_one) & self.top).bit_count()
                   + ((tally + self.bias_not_zero) & self.top).bit_count() - self.n)

    def _finish(self, spreads: list[int], lo: int, tally: int, diff: int) -> None:
        """All completions that place the last row at a pattern spreads[lo:]."""
        top, b1, b0, n = self.top, self.bias_one, self.bias_not_zero, self.n
        found = self.found
        count = len(spreads) - lo
        self._bump(count)
        for sp in spreads[lo:]:
            t = tally + sp
            found.add(abs(diff + ((t + b1) & top).bit_count() + ((t + b0) & top).bit_count() - n))
        self.leaves += count

    def descend(self, first: int, slots: int, weight: int, tally: int, diff: int) -> None:
        if slots == 0:
            if weight == 0:
                self.found.add(self._evaluate(tally, diff))
                self.leaves += 1
            return
        n = self.n
        lo_k = max(self.weight_of(first), weight - (slots - 1) * n)
        hi_k = weight // slots
        for k in range(lo_k, hi_k + 1):
            base = self.start[k]
            lo = max(first, base) - base
            spreads = self.spreads(k)
            if lo >= len(spreads):
                continue
            d = diff + self.row_sign[k]
            if slots == 1:
                self._finish(spreads, lo, tally, d)
                continue
            seen = self.seen
            for local in range(lo, len(spreads)):
                t = tally + spreads[local]
                key = (base + local, slots - 1, t, d)
                if key in seen:
                    continue
                seen.add(key)
                self._bump(1)
                self.descend(base + local, slots - 1, weight - k, t, d)

    def run_first(self, firsts: list[int], e1: int) -> None:
        """Search every completion whose smallest row is one of ``firsts``."""
        for idx in firsts:
            k = self.weight_of(idx)
            self._bump(1)
            self.descend(idx, self.m - 1, e1 - k, self.spreads(k)[idx - self.start[k]], self.row_sign[k])


def _first_rows(m: int, n: int, e1: int) -> list[int]:
    """Global indices of patterns admissible as the smallest row."""
    out: list[int] = []
    offset = 0
    for k in range(n + 1):
        size = comb(n, k)
        if k * m <= e1 and e1 - k <= (m - 1) * n:
            out.extend(range(offset, offset + size))
        offset += size
    return out


def _canonical_branch(args: tuple[int, int, int, int, list[int]]) -> tuple[set[int], int, int]:
    m, n, e1, cap, firsts = args
    search = _Canonical(m, n, cap)
    search.run_first(firsts, e1)
    return search.found, search.visited, search.leaves


def canonical_search(m: int, n: int, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Exact index set over row-pattern multisets.

    Rows are taken from the larger part unless ``cfg.orient`` is off
    (K_{m,n} and K_{n,m} are the same graph). With ``threads > 1`` the
    admissible first rows are dealt round-robin to worker processes; each
    worker applies the state cap to its own share. The index set does not
    depend on the split.
    """
    _check_size(m, n)
    if cfg.orient and n > m:
        m, n = n, m
    t0 = time.perf_counter()
    found: set[int] = set()
    visited = leaves = 0
    for e1 in one_counts(m, n, cfg):
        firsts = _first_rows(m, n, e1)
        if cfg.threads == 1 or len(firsts) < 2:
            jobs = [(m, n, e1, cfg.state_cap - visited, firsts)]
            outcomes = map(_canonical_branch, jobs)
        else:
            workers = min(cfg.threads, len(firsts))
            jobs = [(m, n, e1, cfg.state_cap, firsts[w::workers]) for w in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_canonical_branch, jobs))
        for f, v, lv in outcomes:
            found |= f
            visited += v
            leaves += lv
    return SearchResult(IndexSet(found), "canonical", visited, leaves, time.perf_counter() - t0)


def canonical_enumerate(m: int, n: int, cfg: SearchConfig = SearchConfig()) -> IndexSet:
    return canonical_search(m, n, cfg).indices


def spot_check(lab: EdgeLabeling, oracle_result: IndexSet) -> bool:
    return ebi_index(lab) in oracle_result
