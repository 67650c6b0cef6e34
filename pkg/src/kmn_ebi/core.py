"""Graph parameters, edge labelings of K_{m,n}, induced vertex labels, switches.

A labeling is stored as an ``m x n`` matrix of bits: row ``k`` is the A vertex
with flat index ``k`` (blocks A_1, ..., A_q, then the star block, positions
ascending) and column ``c`` is the B vertex ``u_{c+1}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

STAR = "*"

Block = Union[int, str]


class InvalidParams(ValueError):
    """Raised when (m, n) lies outside m odd, n even, m > n >= 2."""


class SwitchError(ValueError):
    """Raised when a switch does not see labels (1, 0) on its two edges."""


class LabelingError(ValueError):
    """Raised for malformed label matrices."""


@dataclass(frozen=True)
class GraphParams:
    m: int
    n: int
    q: int
    r: int

    @property
    def half(self) -> int:
        return self.n // 2

    @property
    def block_size(self) -> int:
        return self.n // 2 + 1

    @property
    def blocks(self) -> list[tuple[Block, int]]:
        """(block, size) pairs in flat order; the star block only when r >= 1."""
        out: list[tuple[Block, int]] = [(i, self.block_size) for i in range(1, self.q + 1)]
        if self.r:
            out.append((STAR, self.r))
        return out

    def a(self, block: Block, j: int) -> "VertexId":
        """The A vertex v_j^block (``block`` is 1..q or STAR)."""
        if block == STAR:
            if not 1 <= j <= self.r:
                raise IndexError(f"star position {j} outside [1, {self.r}]")
            index = self.q * self.block_size + j - 1
        else:
            if not (isinstance(block, int) and 1 <= block <= self.q):
                raise IndexError(f"block {block!r} outside [1, {self.q}]")
            if not 1 <= j <= self.block_size:
                raise IndexError(f"position {j} outside [1, {self.block_size}]")
            index = (block - 1) * self.block_size + j - 1
        return VertexId("A", j, index, block)

    def u(self, i: int) -> "VertexId":
        """The B vertex u_i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"B position {i} outside [1, {self.n}]")
        return VertexId("B", i, i - 1)

    def a_vertices(self) -> Iterator["VertexId"]:
        for block, size in self.blocks:
            for j in range(1, size + 1):
                yield self.a(block, j)

    def a_from_index(self, index: int) -> "VertexId":
        if not 0 <= index < self.m:
            raise IndexError(f"A index {index} outside [0, {self.m})")
        block_number, offset = divmod(index, self.block_size)
        if block_number < self.q:
            return self.a(block_number + 1, offset + 1)
        return self.a(STAR, index - self.q * self.block_size + 1)


def derive_partition(m: int, n: int) -> GraphParams:
    """Validate (m, n) and split m by n/2 + 1 into quotient q and remainder r.

    >>> derive_partition(7, 4)
    GraphParams(m=7, n=4, q=2, r=1)
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise InvalidParams(f"m must be an integer, got {m!r}")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidParams(f"n must be an integer, got {n!r}")
    m, n = int(m), int(n)
    if m < 3:
        raise InvalidParams(f"m must be at least 3, got {m}")
    if m % 2 == 0:
        raise InvalidParams(f"m must be odd, got {m}")
    if n < 2:
        raise InvalidParams(f"n must be at least 2, got {n}")
    if n % 2:
        raise InvalidParams(f"n must be even, got {n}")
    if m <= n:
        raise InvalidParams(f"m must exceed n, got m={m}, n={n}")
    q, r = divmod(m, n // 2 + 1)
    return GraphParams(m, n, q, r)


@dataclass(frozen=True)
class VertexId:
    part: str
    position: int
    index: int = field(compare=False)
    block: Block | None = None

    def __str__(self) -> str:
        if self.part == "B":
            return f"u_{self.position}"
        return f"v_{self.position}^{self.block}"


class VertexLabel(enum.Enum):
    ONE = "1"
    ZERO = "0"
    UNLABELED = "-"

    @classmethod
    def from_degrees(cls, deg1: int, deg0: int) -> "VertexLabel":
        if deg1 > deg0:
            return cls.ONE
        if deg0 > deg1:
            return cls.ZERO
        return cls.UNLABELED


def _as_bit_matrix(cells, m: int, n: int) -> np.ndarray:
    arr = np.array(cells, dtype=np.int64)
    if arr.shape != (m, n):
        raise LabelingError(f"expected a {m}x{n} matrix, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise LabelingError("cells must be 0 or 1")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


class EdgeLabeling:
    """An edge-friendly 0/1 labeling of K_{m,n}; immutable."""

    __slots__ = ("params", "cells", "e1", "e0")

    def __init__(self, params: GraphParams, cells) -> None:
        self.params = params
        self.cells = _as_bit_matrix(cells, params.m, params.n)
        self.e1 = int(self.cells.sum())
        self.e0 = params.m * params.n - self.e1
        if not is_edge_friendly(self.cells):
            raise LabelingError(f"labeling is not edge-friendly: e1={self.e1}, e0={self.e0}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeLabeling):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.params, self.cells.tobytes()))

    def __repr__(self) -> str:
        p = self.params
        return f"EdgeLabeling(m={p.m}, n={p.n}, rows={self.row_strings()})"

    def __getitem__(self, key: tuple[VertexId, VertexId]) -> int:
        a, b = key
        return int(self.cells[a.index, b.index])

    def row_strings(self) -> list[str]:
        return ["".join(str(int(c)) for c in row) for row in self.cells]

    def row_masks(self) -> list[int]:
        """Each A row as an n-bit mask; bit c is the edge to u_{c+1}."""
        weights = 1 << np.arange(self.params.n, dtype=np.int64)
        return [int(x) for x in self.cells.astype(np.int64) @ weights]

    def with_cells(self, cells) -> "EdgeLabeling":
        return EdgeLabeling(self.params, cells)


class PartialLabeling:
    """Staging matrix whose cells are 0, 1, or unset (-1)."""

    UNSET = -1

    def __init__(self, params: GraphParams) -> None:
        self.params = params
        self.cells = np.full((params.m, params.n), self.UNSET, dtype=np.int8)

    def set_row(self, vertex: VertexId, ones: Sequence[int]) -> None:
        """Label the row of ``vertex`` with 1 on the given (1-based) B columns, 0 elsewhere."""
        row = np.zeros(self.params.n, dtype=np.int8)
        for c in ones:
            if not 1 <= c <= self.params.n:
                raise IndexError(f"column {c} outside [1, {self.params.n}]")
            row[c - 1] = 1
        self.cells[vertex.index] = row

    def row_is_set(self, vertex: VertexId) -> bool:
        return bool((self.cells[vertex.index] != self.UNSET).all())

    def unset_rows(self) -> list[VertexId]:
        return [self.params.a_from_index(k) for k in range(self.params.m)
                if (self.cells[k] == self.UNSET).any()]

    def finalize(self) -> EdgeLabeling:
        missing = self.unset_rows()
        if missing:
            raise LabelingError("unset rows remain: " + ", ".join(map(str, missing)))
        return EdgeLabeling(self.params, self.cells)


@dataclass(frozen=True)
class VertexSummary:
    """Degrees and induced labels of every vertex, plus the aggregate counts."""

    deg1_a: tuple[int, ...]
    deg0_a: tuple[int, ...]
    deg1_b: tuple[int, ...]
    deg0_b: tuple[int, ...]
    labels_a: tuple[VertexLabel, ...]
    labels_b: tuple[VertexLabel, ...]
    vA1: int
    vA0: int
    vA_unlabeled: int
    vB1: int
    vB0: int
    vB_unlabeled: int

    @property
    def v1(self) -> int:
        return self.vA1 + self.vB1

    @property
    def v0(self) -> int:
        return self.vA0 + self.vB0

    @property
    def signed_difference(self) -> int:
        return self.v1 - self.v0

    @property
    def index(self) -> int:
        return abs(self.signed_difference)

    def label_of(self, vertex: VertexId) -> VertexLabel:
        labels = self.labels_a if vertex.part == "A" else self.labels_b
        return labels[vertex.index]

    def degrees_of(self, vertex: VertexId) -> tuple[int, int]:
        if vertex.part == "A":
            return self.deg1_a[vertex.index], self.deg0_a[vertex.index]
        return self.deg1_b[vertex.index], self.deg0_b[vertex.index]


def summarize_cells(cells: np.ndarray) -> VertexSummary:
    """Induced labels for an arbitrary 0/1 matrix (rows = A, columns = B)."""
    cells = np.asarray(cells)
    m, n = cells.shape
    deg1_a = cells.sum(axis=1).astype(int)
    deg1_b = cells.sum(axis=0).astype(int)
    deg0_a = n - deg1_a
    deg0_b = m - deg1_b
    labels_a = tuple(VertexLabel.from_degrees(d1, d0) for d1, d0 in zip(deg1_a, deg0_a))
    labels_b = tuple(VertexLabel.from_degrees(d1, d0) for d1, d0 in zip(deg1_b, deg0_b))
    return VertexSummary(
        deg1_a=tuple(int(x) for x in deg1_a),
        deg0_a=tuple(int(x) for x in deg0_a),
        deg1_b=tuple(int(x) for x in deg1_b),
        deg0_b=tuple(int(x) for x in deg0_b),
        labels_a=labels_a,
        labels_b=labels_b,
        vA1=labels_a.count(VertexLabel.ONE),
        vA0=labels_a.count(VertexLabel.ZERO),
        vA_unlabeled=labels_a.count(VertexLabel.UNLABELED),
        vB1=labels_b.count(VertexLabel.ONE),
        vB0=labels_b.count(VertexLabel.ZERO),
        vB_unlabeled=labels_b.count(VertexLabel.UNLABELED),
    )


def induce_labels(lab: EdgeLabeling) -> VertexSummary:
    return summarize_cells(lab.cells)


def ebi_index(lab: EdgeLabeling) -> int:
    """|v(1) - v(0)| for the labeling."""
    return induce_labels(lab).index


def is_edge_friendly(cells) -> bool:
    arr = np.asarray(cells)
    e1 = int(arr.sum())
    e0 = arr.size - e1
    return abs(e1 - e0) <= 1


@dataclass(frozen=True)
class SwitchOp:
    """Swap the labels of edges (a_one, pivot) = 1 and (a_zero, pivot) = 0."""

    pivot: VertexId
    a_one: VertexId
    a_zero: VertexId

    def __post_init__(self) -> None:
        if self.pivot.part != "B":
            raise SwitchError(f"pivot {self.pivot} is not a B vertex")
        if self.a_one.part != "A" or self.a_zero.part != "A":
            raise SwitchError("switch endpoints must be A vertices")
        if self.a_one == self.a_zero:
            raise SwitchError(f"switch endpoints coincide at {self.a_one}")

    def reversed(self) -> "SwitchOp":
        return SwitchOp(self.pivot, self.a_zero, self.a_one)

    def __str__(self) -> str:
        return f"({self.pivot}, {self.a_one}, {self.a_zero})"


def apply_switch(lab: EdgeLabeling, op: SwitchOp) -> EdgeLabeling:
    """Return a copy of ``lab`` with the two edges at ``op.pivot`` swapped."""
    c = op.pivot.index
    one, zero = op.a_one.index, op.a_zero.index
    if lab.cells[one, c] != 1 or lab.cells[zero, c] != 0:
        raise SwitchError(
            f"switch {op} expects labels (1, 0), found "
            f"({int(lab.cells[one, c])}, {int(lab.cells[zero, c])})"
        )
    cells = lab.cells.copy()
    cells[one, c] = 0
    cells[zero, c] = 1
    return lab.with_cells(cells)


def random_labeling(params: GraphParams, rng: np.random.Generator) -> EdgeLabeling:
    """Uniformly random labeling with exactly mn/2 ones."""
    size = params.m * params.n
    flat = np.zeros(size, dtype=np.uint8)
    flat[rng.choice(size, size // 2, replace=False)] = 1
    return EdgeLabeling(params, flat.reshape(params.m, params.n))
