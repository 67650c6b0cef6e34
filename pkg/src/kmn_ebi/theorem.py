"""Closed-form edge-balanced index sets for K_{m,n}, m odd, n even, m > n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .core import GraphParams


class IndexSet:
    """An immutable set of nonnegative integers."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int] = ()) -> None:
        vals = frozenset(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise ValueError("indices are nonnegative")
        self.values = vals

    @classmethod
    def upto(cls, top: int) -> "IndexSet":
        """{0, 1, ..., top}."""
        return cls(range(top + 1))

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, x: object) -> bool:
        return x in self.values

    def __or__(self, other: Iterable[int]) -> "IndexSet":
        if not isinstance(other, IndexSet):
            other = IndexSet(other)
        return IndexSet(self.values | other.values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IndexSet):
            return self.values == other.values
        if isinstance(other, (set, frozenset)):
            return self.values == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.values)

    @property
    def max(self) -> int:
        return max(self.values)

    def is_contiguous_from_zero(self) -> bool:
        return bool(self.values) and self.values == frozenset(range(self.max + 1))

    def __str__(self) -> str:
        if not self.values:
            return "{}"
        if self.is_contiguous_from_zero():
            return "{0}" if self.max == 0 else f"{{0..{self.max}}}"
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self) -> str:
        return f"IndexSet({sorted(self.values)})"

    def to_list(self) -> list[int]:
        return sorted(self.values)


def max_index(params: GraphParams) -> int:
    m, n, q, r = params.m, params.n, params.q, params.r
    if n == 2:
        return 0
    if r == 0:
        return m + n - 2 * q - 2
    if r == 1:
        return m + n - 2 * q - 3
    return m + n - 2 * q - 4


def theorem_ebi(params: GraphParams) -> IndexSet:
    return IndexSet.upto(max_index(params))


def low_range_max(params: GraphParams) -> int:
    """Largest index reached by switching from the index-0 labeling."""
    m, q, r = params.m, params.q, params.r
    if r == 0:
        return m - 2 * q
    if r == 1:
        return m - 2 * q - 1
    return m - 2 * q - 2


@dataclass
class OverlapReport:
    ok: bool
    low_max: int
    threshold: int
    case: str
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def range_overlap_check(params: GraphParams) -> OverlapReport:
    """Check that [0, low_max] and [n-2, max_index] leave no gap.

    The inequality ``low_max >= n - 3`` is checked directly, and the exact
    rational identities behind it are checked per case so a failure names
    the broken step.
    """
    m, n, q, r = params.m, params.n, params.q, params.r
    if n < 4:
        raise ValueError("range overlap is only meaningful for n >= 4")
    low = low_range_max(params)
    failures: list[str] = []
    if r == 0:
        case = "r=0"
        if Fraction(low) != Fraction(m * (n - 2), n + 2):
            failures.append("m-2q != m(n-2)/(n+2)")
        if not m > n + 1:
            failures.append("m > n+1 fails")
        if not Fraction(m * (n - 2), n + 2) > n - 3:
            failures.append("m(n-2)/(n+2) > n-3 fails")
    elif r == 1:
        case = "r=1"
        if Fraction(low) != Fraction((m - 1) * (n - 2), n + 2):
            failures.append("m-2q-1 != (m-1)(n-2)/(n+2)")
        if not m >= n + 3:
            failures.append("m >= n+3 fails")
        if not low >= n - 2:
            failures.append("m-2q-1 >= n-2 fails")
    elif m == n + 1:
        case = "r>=2, m=n+1"
        if q != 1 or low != n - 3:
            failures.append("m=n+1 must give q=1 and m-2q-2 = n-3")
    elif m == n + 3:
        case = "r>=2, m=n+3"
        if q != 2 or low != n - 3:
            failures.append("m=n+3 must give q=2 and m-2q-2 = n-3")
    else:
        case = "r>=2, m>=n+5"
        exact = Fraction((m - 2) * (n - 2), n + 2) + Fraction(4 * r - 8, n + 2)
        if Fraction(low) != exact:
            failures.append("m-2q-2 != (m-2)(n-2)/(n+2) + (4r-8)/(n+2)")
        if not m >= n + 5:
            failures.append("m >= n+5 fails")
        if not exact >= Fraction((n + 3) * (n - 2), n + 2) > n - 2:
            failures.append("m-2q-2 >= (n+3)(n-2)/(n+2) > n-2 fails")
    if low < n - 3:
        failures.append(f"low range max {low} < n-3 = {n - 3}")
    return OverlapReport(not failures, low, n - 3, case, failures)
