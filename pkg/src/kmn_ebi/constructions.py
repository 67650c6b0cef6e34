"""The two base labelings (index 0 and index n-2) and the switch schedules
that walk each of them up to the top of its index range."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .core import (
    STAR,
    EdgeLabeling,
    GraphParams,
    InvalidParams,
    LabelingError,
    PartialLabeling,
    SwitchError,
    SwitchOp,
    apply_switch,
    ebi_index,
    is_edge_friendly,
)
from .theorem import IndexSet

log = logging.getLogger(__name__)

FROM_F = "from_f"
FROM_F_PRIME = "from_f_prime"


class TrajectoryError(SwitchError):
    """A schedule op failed during replay; ``position`` is its 1-based ordinal."""

    def __init__(self, position: int, op: SwitchOp, cause: Exception) -> None:
        super().__init__(f"op {position} {op}: {cause}")
        self.position = position
        self.op = op


@dataclass(frozen=True)
class SwitchSchedule:
    ops: tuple[SwitchOp, ...]
    provenance: str

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


@dataclass
class Trajectory:
    start: EdgeLabeling
    steps: list[tuple[SwitchOp, int]] = field(default_factory=list)
    final: EdgeLabeling | None = None

    @property
    def start_index(self) -> int:
        return ebi_index(self.start)

    @property
    def indices(self) -> list[int]:
        """Index after each op, in order."""
        return [idx for _, idx in self.steps]

    @property
    def achieved(self) -> IndexSet:
        return IndexSet([self.start_index, *self.indices])


def _require_n4(params: GraphParams, what: str) -> None:
    if params.n < 4:
        raise InvalidParams(f"{what} is defined only for n >= 4, got n={params.n}")


def initialize_shared(params: GraphParams) -> PartialLabeling:
    """Rows v_1^i (and v_1^*) get ones on u_1..u_{n/2}; everything else unset."""
    part = PartialLabeling(params)
    ones = range(1, params.half + 1)
    for block, _ in params.blocks:
        part.set_row(params.a(block, 1), ones)
    return part


def build_f(params: GraphParams) -> EdgeLabeling:
    """Index-0 labeling: every A vertex unlabeled, B split half and half."""
    part = initialize_shared(params)
    h = params.half
    upper = range(h + 1, params.n + 1)
    for i in range(1, params.q + 1):
        for j in range(2, params.block_size + 1):
            part.set_row(params.a(i, j), upper)
    for j in range(2, params.r + 1):
        part.set_row(params.a(STAR, j), upper)
    return part.finalize()


def build_f_prime_literal(params: GraphParams) -> EdgeLabeling:
    """The index-(n-2) row formulas taken verbatim.

    Balanced and A-unlabeled for every (m, n), but for some larger n (the
    first is K_{13,8}) a few columns of u_1..u_{n-1} fall short of a
    1-majority; see :func:`f_prime_defects` and :func:`build_f_prime`.
    """
    _require_n4(params, "f'")
    part = initialize_shared(params)
    n, h = params.n, params.half
    for i in range(1, params.q + 1):
        if i % 2:
            for j in range(2, h + 2):
                zeros = {j + k - 2 for k in range(1, h)} | {n}
                part.set_row(params.a(i, j), [c for c in range(1, n + 1) if c not in zeros])
        else:
            for j in range(2, h + 1):
                part.set_row(params.a(i, j), [j + k - 1 for k in range(1, h + 1)])
            j = h + 1
            part.set_row(params.a(i, j), [j + k - 1 for k in range(1, h)] + [1])
    for j in range(2, params.r + 1):
        part.set_row(params.a(STAR, j), [j + k - 1 for k in range(1, h + 1)])
    if part.cells[:, n - 1].any():
        raise LabelingError("column u_n must be all zero")
    lab = part.finalize()
    if lab.e1 != lab.e0:
        raise LabelingError(f"f' unbalanced: e1={lab.e1}, e0={lab.e0}")
    return lab


def f_prime_defects(lab: EdgeLabeling) -> list[int]:
    """1-based columns among u_1..u_{n-1} that are not 1-vertices."""
    need = lab.params.m // 2 + 1
    deg1 = lab.cells.sum(axis=0)
    return [c + 1 for c in range(lab.params.n - 1) if deg1[c] < need]


def _f_prime_locks(params: GraphParams) -> np.ndarray:
    """Cells the f' schedule relies on, plus u_n and the first row of each block."""
    locked = np.zeros((params.m, params.n), dtype=bool)
    locked[:, params.n - 1] = True
    for block, size in params.blocks:
        locked[params.a(block, 1).index, :] = True
        for j in range(2, size + 1):
            locked[params.a(block, j).index, j - 2] = True
    return locked


def _rebalance(cells: np.ndarray, locked: np.ndarray, need: int, columns: int) -> int:
    """Move 1s along rows until every column < ``columns`` has ``need`` ones.

    Each move keeps its row weight. Moves chain along augmenting paths
    d -> ... -> c found by BFS over columns; raises when no path reaches a
    column with surplus. Returns moves made.
    """
    moves = 0
    free = ~locked
    while True:
        deg = cells[:, :columns].sum(axis=0)
        short = [c for c in range(columns) if deg[c] < need]
        if not short:
            return moves
        target = short[0]
        # parent[d] = (row, c): a 1 in ``row`` may move from column d to column c
        parent: dict[int, tuple[int, int]] = {}
        frontier = [target]
        seen = {target}
        source = None
        while frontier and source is None:
            nxt = []
            for c in frontier:
                for d in range(columns):
                    if d in seen:
                        continue
                    rows = np.flatnonzero((cells[:, d] == 1) & (cells[:, c] == 0) & free[:, d] & free[:, c])
                    if rows.size == 0:
                        continue
                    parent[d] = (int(rows[0]), c)
                    seen.add(d)
                    if deg[d] > need:
                        source = d
                        break
                    nxt.append(d)
                if source is not None:
                    break
            frontier = nxt
        if source is None:
            raise LabelingError(f"cannot give column u_{target + 1} a 1-majority under the locks")
        d = source
        while d != target:
            row, c = parent[d]
            cells[row, d], cells[row, c] = 0, 1
            moves += 1
            d = c


def build_f_prime(params: GraphParams) -> EdgeLabeling:
    """Index-(n-2) labeling: u_n is the lone 0-vertex of B, A entirely unlabeled.

    Starts from :func:`build_f_prime_literal`; where that leaves columns of
    u_1..u_{n-1} short, 1s are shifted within non-initial rows (weights kept,
    u_n and every cell the switch schedule reads left alone).
    """
    lab = build_f_prime_literal(params)
    if not f_prime_defects(lab):
        return lab
    cells = lab.cells.copy()
    moves = _rebalance(cells, _f_prime_locks(params), params.m // 2 + 1, params.n - 1)
    log.debug("f'(%d, %d): rebalanced with %d moves", params.m, params.n, moves)
    out = lab.with_cells(cells)
    if f_prime_defects(out):
        raise LabelingError("rebalancing left deficient columns")
    return out


def _schedule(params: GraphParams, provenance: str) -> SwitchSchedule:
    p = params
    ops = [SwitchOp(p.u(1), p.a(i, 1), p.a(i, 2)) for i in range(1, p.q + 1)]
    for i in range(1, p.q + 1):
        for j in range(2, p.half + 1):
            ops.append(SwitchOp(p.u(j), p.a(i, 1), p.a(i, j + 1)))
    if p.r >= 2:
        for j in range(1, p.r):
            ops.append(SwitchOp(p.u(j), p.a(STAR, 1), p.a(STAR, j + 1)))
    return SwitchSchedule(tuple(ops), provenance)


def schedule_from_f_prime(params: GraphParams) -> SwitchSchedule:
    _require_n4(params, "the f' schedule")
    return _schedule(params, FROM_F_PRIME)


def schedule_from_f(params: GraphParams) -> SwitchSchedule:
    """Same op template as the f' schedule; for n = 2 only the block ops remain."""
    return _schedule(params, FROM_F)


def run_trajectory(start: EdgeLabeling, sched: SwitchSchedule) -> Trajectory:
    traj = Trajectory(start)
    lab = start
    for pos, op in enumerate(sched, start=1):
        try:
            lab = apply_switch(lab, op)
        except SwitchError as exc:
            raise TrajectoryError(pos, op, exc) from exc
        if not is_edge_friendly(lab.cells):
            raise TrajectoryError(pos, op, LabelingError("lost edge-friendliness"))
        traj.steps.append((op, ebi_index(lab)))
    traj.final = lab
    return traj


def trajectory_for(params: GraphParams, which: str) -> Trajectory:
    """Replay the schedule from ``which`` in {"f", "fprime"}."""
    if which == "f":
        return run_trajectory(build_f(params), schedule_from_f(params))
    if which == "fprime":
        return run_trajectory(build_f_prime(params), schedule_from_f_prime(params))
    raise ValueError(f"unknown labeling {which!r}")


def constructive_ebi(params: GraphParams) -> IndexSet:
    """Union of every index reached by the two replays."""
    if params.n == 2:
        return IndexSet([ebi_index(build_f(params))])
    low = trajectory_for(params, "f").achieved
    high = trajectory_for(params, "fprime").achieved
    union = low | high
    assert union.is_contiguous_from_zero(), (
        f"index ranges {low} and {high} do not meet for (m, n) = ({params.m}, {params.n})"
    )
    return union
