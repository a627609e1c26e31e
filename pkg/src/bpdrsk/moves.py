"""Local rewrite moves on activated pipe dreams.

An activated grid may hold a bump tile.  The four primitives here
(``min_droop``, ``min_undroop``, ``cross_bump_swap``, ``term_move``) are
the only edits the insertion algorithms make.  Each returns a new grid; the
input is never modified.  Coordinates are 1-based ``(row, column)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bpd import BpdGrid, GridError, Tile, render, trace_pipes

__all__ = [
    "MoveError",
    "TraceStep",
    "min_droop",
    "min_undroop",
    "cross_bump_swap",
    "term_move",
    "max_droop",
    "format_trace",
]

X, H, V, B, R, J, BUMP = (
    Tile.CROSS,
    Tile.HORIZONTAL,
    Tile.VERTICAL,
    Tile.BLANK,
    Tile.RELBOW,
    Tile.JELBOW,
    Tile.BUMP,
)


class MoveError(GridError):
    """A move was requested where it is not defined."""


@dataclass(frozen=True)
class TraceStep:
    name: str
    src: tuple[int, int]
    dst: tuple[int, int] | None
    grid: BpdGrid

    def to_text(self) -> str:
        dst = f"({self.dst[0]},{self.dst[1]})" if self.dst else "-"
        return f"STEP {self.name} ({self.src[0]},{self.src[1]}) -> {dst}\n{render(self.grid)}"


def format_trace(steps: list[TraceStep]) -> str:
    return "\n".join(s.to_text() for s in steps)


def _edit(D: BpdGrid, pos: tuple[int, int], table: dict[Tile, Tile], what: str) -> Tile:
    t = D.get(*pos)
    if t is None:
        raise MoveError(f"{what}: {pos} is outside the {D.n}x{D.n} grid")
    try:
        return table[t]
    except KeyError:
        raise MoveError(f"{what}: tile {t.name} at {pos} does not admit the edit") from None


def _scan(D: BpdGrid, start: tuple[int, int], step: tuple[int, int], what: str) -> int:
    """Distance from ``start`` to the first non-cross tile in direction ``step``."""
    r, c = start
    dr, dc = step
    dist = 1
    while True:
        t = D.get(r + dr * dist, c + dc * dist)
        if t is None:
            raise MoveError(f"{what}: target out of grid from {start}")
        if t is not X:
            return dist
        dist += 1


def min_droop(D: BpdGrid, a: int, b: int) -> tuple[BpdGrid, tuple[int, int]]:
    """Droop the south-east turn at (a, b) into the nearest corner.

    The corner is (a+x, b+y) where x, y are the distances to the first
    non-cross tile below and to the right of (a, b).
    """
    if D.get(a, b) is None or not D[a, b].has_r:
        raise MoveError(f"min-droop: no south-east turn at {(a, b)}")
    x = _scan(D, (a, b), (1, 0), "min-droop")
    y = _scan(D, (a, b), (0, 1), "min-droop")
    c, d = a + x, b + y
    ch: dict[tuple[int, int], Tile] = {}
    ch[a, b] = B if D[a, b] is R else J
    for r in range(a + 1, c):
        ch[r, b] = H
        ch[r, d] = _edit(D, (r, d), {B: V, H: X}, "min-droop")
    for s in range(b + 1, d):
        ch[a, s] = V
        ch[c, s] = _edit(D, (c, s), {B: H, V: X}, "min-droop")
    ch[c, b] = _edit(D, (c, b), {V: R, J: H}, "min-droop")
    ch[a, d] = _edit(D, (a, d), {H: R, J: V}, "min-droop")
    ch[c, d] = _edit(D, (c, d), {B: J, R: BUMP}, "min-droop")
    return D.replace(ch, max(D.max_bumps, 1)), (c, d)


def min_undroop(D: BpdGrid, c: int, d: int) -> tuple[BpdGrid, tuple[int, int]]:
    """Inverse of :func:`min_droop`: lift the west-north turn at (c, d)."""
    if D.get(c, d) is None or not D[c, d].has_j:
        raise MoveError(f"min-undroop: no west-north turn at {(c, d)}")
    x = _scan(D, (c, d), (-1, 0), "min-undroop")
    y = _scan(D, (c, d), (0, -1), "min-undroop")
    a, b = c - x, d - y
    ch: dict[tuple[int, int], Tile] = {}
    ch[c, d] = B if D[c, d] is J else R
    for r in range(a + 1, c):
        ch[r, d] = H
        ch[r, b] = _edit(D, (r, b), {B: V, H: X}, "min-undroop")
    for s in range(b + 1, d):
        ch[c, s] = V
        ch[a, s] = _edit(D, (a, s), {B: H, V: X}, "min-undroop")
    ch[a, d] = _edit(D, (a, d), {R: H, V: J}, "min-undroop")
    ch[c, b] = _edit(D, (c, b), {R: V, H: J}, "min-undroop")
    ch[a, b] = _edit(D, (a, b), {B: R, J: BUMP}, "min-undroop")
    return D.replace(ch, max(D.max_bumps, 1)), (a, b)


def cross_bump_swap(D: BpdGrid, a: int, b: int) -> tuple[BpdGrid, tuple[int, int]]:
    """Exchange the bump at (a, b) with the cross shared by the same two pipes."""
    if D.get(a, b) is not BUMP:
        raise MoveError(f"cross-bump-swap: no bump at {(a, b)}")
    tr = trace_pipes(D)
    p, q = tr.r_pipe(a, b), tr.j_pipe(a, b)
    where = tr.crossed(p, q)
    if not where:
        raise MoveError(f"cross-bump-swap: pipes {p} and {q} do not cross")
    a2, b2 = where[0]
    return D.replace({(a, b): X, (a2, b2): BUMP}), (a2, b2)


def term_move(D: BpdGrid, a: int, b: int) -> BpdGrid:
    """Turn the bump at (a, b) into a cross; its two pipes must not cross yet."""
    if D.get(a, b) is not BUMP:
        raise MoveError(f"term: no bump at {(a, b)}")
    tr = trace_pipes(D)
    p, q = tr.r_pipe(a, b), tr.j_pipe(a, b)
    if tr.crossed(p, q):
        raise MoveError(f"term: pipes {p} and {q} already cross")
    bumps_left = len(D.bumps()) - 1
    return D.replace({(a, b): X}, bumps_left)


def max_droop(D: BpdGrid, a: int, b: int) -> tuple[BpdGrid, tuple[int, int]]:
    """Repeat :func:`min_droop` down column ``b`` for as long as it stays there.

    After a droop into a fresh west-north turn at (c, d), the next droop in
    a right insertion starts from the nearest south-east turn left of d in
    row c; the run continues while that turn is (c, b).
    """
    E, (c, d) = min_droop(D, a, b)
    while E[c, d] is J and E[c, b] is R:
        E, (c, d) = min_droop(E, c, b)
    return E, (c, d)
