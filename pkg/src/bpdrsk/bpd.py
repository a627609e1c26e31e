"""Bumpless pipe dreams on an n x n grid.

Rows are numbered from the top, columns from the left, both starting at 1.
Pipes enter along the south edge, one per column, travel north and east,
and leave along the east edge, one per row.  A pipe is named after the
column it enters; in a pipe dream of ``w`` the pipe leaving row ``i`` is
pipe ``w(i)``.  With this convention the blank-tile weights sum to the
Schubert polynomial of ``w`` itself.

Text form, one character per tile::

    .  blank        +  cross        -  horizontal     |  vertical
    r  south-east elbow             J  west-north elbow
    %  bump (both elbows, pipes touching without crossing)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from .perm import Permutation
from .poly import Polynomial

__all__ = [
    "Tile",
    "BpdGrid",
    "PipeTrace",
    "GridError",
    "ParseError",
    "Violation",
    "identity_grid",
    "perm_of",
    "trace_pipes",
    "weight",
    "rothe_bpd",
    "enumerate_bpds",
    "droop_closure",
    "validate",
    "embed",
    "trim",
    "render",
    "parse",
]

N, S, W, E = "N", "S", "W", "E"


class Tile(Enum):
    BLANK = "."
    CROSS = "+"
    HORIZONTAL = "-"
    VERTICAL = "|"
    RELBOW = "r"
    JELBOW = "J"
    BUMP = "%"

    @property
    def sides(self) -> frozenset[str]:
        return _SIDES[self]

    @property
    def routes(self) -> dict[str, str]:
        """Entry side -> exit side for each pipe crossing the tile."""
        return _ROUTES[self]

    @property
    def has_r(self) -> bool:
        return self in (Tile.RELBOW, Tile.BUMP)

    @property
    def has_j(self) -> bool:
        return self in (Tile.JELBOW, Tile.BUMP)

    def __str__(self) -> str:
        return self.value


_ROUTES = {
    Tile.BLANK: {},
    Tile.CROSS: {S: N, W: E},
    Tile.HORIZONTAL: {W: E},
    Tile.VERTICAL: {S: N},
    Tile.RELBOW: {S: E},
    Tile.JELBOW: {W: N},
    Tile.BUMP: {S: E, W: N},
}
_SIDES = {t: frozenset(r) | frozenset(r.values()) for t, r in _ROUTES.items()}
_BY_CHAR = {t.value: t for t in Tile}


class GridError(ValueError):
    """A grid that does not form valid pipes."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class BpdGrid:
    """An immutable square grid of tiles.

    ``max_bumps`` is 0 for an ordinary pipe dream and 1 or 2 for the
    activated grids that appear in the middle of an insertion; it only
    affects :func:`validate` and does not take part in equality.
    """

    tiles: tuple[tuple[Tile, ...], ...]
    max_bumps: int = field(default=0, compare=False)

    def __post_init__(self):
        tiles = tuple(tuple(row) for row in self.tiles)
        if any(len(row) != len(tiles) for row in tiles):
            raise GridError("grid is not square")
        object.__setattr__(self, "tiles", tiles)

    @property
    def n(self) -> int:
        return len(self.tiles)

    def __getitem__(self, rc: tuple[int, int]) -> Tile:
        r, c = rc
        return self.tiles[r - 1][c - 1]

    def get(self, r: int, c: int) -> Tile | None:
        if 1 <= r <= self.n and 1 <= c <= self.n:
            return self.tiles[r - 1][c - 1]
        return None

    def replace(self, changes: dict[tuple[int, int], Tile], max_bumps: int | None = None) -> BpdGrid:
        rows = [list(row) for row in self.tiles]
        for (r, c), t in changes.items():
            rows[r - 1][c - 1] = t
        return BpdGrid(tuple(map(tuple, rows)), self.max_bumps if max_bumps is None else max_bumps)

    def plain(self) -> BpdGrid:
        return BpdGrid(self.tiles, 0)

    def activated(self, max_bumps: int = 1) -> BpdGrid:
        return BpdGrid(self.tiles, max_bumps)

    def positions(self, tile: Tile | None = None) -> Iterator[tuple[int, int]]:
        for r, row in enumerate(self.tiles, start=1):
            for c, t in enumerate(row, start=1):
                if tile is None or t is tile:
                    yield r, c

    def bumps(self) -> list[tuple[int, int]]:
        return list(self.positions(Tile.BUMP))

    def blanks(self) -> list[tuple[int, int]]:
        return list(self.positions(Tile.BLANK))

    def __str__(self) -> str:
        return render(self)


def identity_grid(n: int) -> BpdGrid:
    def tile(r, c):
        if r == c:
            return Tile.RELBOW
        return Tile.VERTICAL if r > c else Tile.HORIZONTAL

    return BpdGrid(tuple(tuple(tile(r, c) for c in range(1, n + 1)) for r in range(1, n + 1)))


@dataclass
class PipeTrace:
    """Who is where: the result of following every pipe through a grid.

    ``south[r, c]`` / ``west[r, c]`` name the pipe entering tile (r, c)
    from that side.  ``crossings[p, q]`` (``p < q``) lists the cross tiles
    shared by two pipes.
    """

    n: int
    exit_row: dict[int, int]
    south: dict[tuple[int, int], int]
    west: dict[tuple[int, int], int]
    crossings: dict[tuple[int, int], list[tuple[int, int]]]

    def r_pipe(self, r: int, c: int) -> int:
        """Pipe making the south-east turn at an elbow or bump."""
        return self.south[r, c]

    def j_pipe(self, r: int, c: int) -> int:
        """Pipe making the west-north turn at an elbow or bump."""
        return self.west[r, c]

    def crossed(self, p: int, q: int) -> list[tuple[int, int]]:
        return self.crossings.get((min(p, q), max(p, q)), [])

    def permutation(self) -> Permutation:
        by_row = {row: pipe for pipe, row in self.exit_row.items()}
        return Permutation(by_row[r] for r in range(1, self.n + 1))


def trace_pipes(D: BpdGrid) -> PipeTrace:
    """Follow all pipes; raises :class:`GridError` if one gets stuck."""
    n = D.n
    south: dict[tuple[int, int], int] = {}
    west: dict[tuple[int, int], int] = {}
    crossings: dict[tuple[int, int], list[tuple[int, int]]] = {}
    exit_row: dict[int, int] = {}
    for pipe in range(1, n + 1):
        r, c, side = n, pipe, S
        while True:
            tile = D.tiles[r - 1][c - 1]
            out = tile.routes.get(side)
            if out is None:
                raise GridError(f"pipe {pipe} cannot enter {tile.name} at ({r},{c}) from {side}")
            (south if side == S else west)[r, c] = pipe
            if out == N:
                if r == 1:
                    raise GridError(f"pipe {pipe} leaves through the north edge at column {c}")
                r, side = r - 1, S
            else:
                if c == n:
                    exit_row[pipe] = r
                    break
                c, side = c + 1, W
    for (r, c), tile in _iter_tiles(D):
        if tile is Tile.CROSS:
            p, q = south.get((r, c)), west.get((r, c))
            if p is None or q is None:
                raise GridError(f"cross at ({r},{c}) is not fully occupied")
            crossings.setdefault((min(p, q), max(p, q)), []).append((r, c))
    if len(exit_row) != n or sorted(exit_row.values()) != list(range(1, n + 1)):
        raise GridError("pipes do not leave through distinct rows")
    return PipeTrace(n, exit_row, south, west, crossings)


def _iter_tiles(D: BpdGrid):
    for r, row in enumerate(D.tiles, start=1):
        for c, t in enumerate(row, start=1):
            yield (r, c), t


def perm_of(D: BpdGrid) -> Permutation:
    """The permutation ``w`` with ``D`` in BPD(w)."""
    report = validate(D)
    if not report.ok:
        raise GridError(str(report))
    return trace_pipes(D).permutation()


def weight(D: BpdGrid) -> Polynomial:
    """Product of x_r over the blank tiles (r, c)."""
    exp = [0] * D.n
    for r, _ in D.positions(Tile.BLANK):
        exp[r - 1] += 1
    return Polynomial.monomial(exp)


@dataclass(frozen=True)
class Violation:
    """Outcome of :func:`validate`; truthy-ness mirrors ``ok``."""

    ok: bool
    message: str = ""
    where: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        loc = f" at {self.where}" if self.where else ""
        return f"{self.message}{loc}"


_OK = Violation(True)


def validate(D: BpdGrid, right_marker: tuple[int, int] | None = None) -> Violation:
    """Check edge consistency, boundaries, bump count and double crossings.

    With ``right_marker`` set, also reject grids where the pipe turning
    south-east at the marker runs horizontally through some cross.
    """
    n = D.n
    for (r, c), t in _iter_tiles(D):
        sides = t.sides
        if r == 1 and N in sides:
            return Violation(False, "north boundary occupied", (r, c))
        if c == 1 and W in sides:
            return Violation(False, "west boundary occupied", (r, c))
        if c == n and E not in sides:
            return Violation(False, f"east boundary of row {r} unoccupied", (r, c))
        if r == n and S not in sides:
            return Violation(False, f"south boundary of column {c} unoccupied", (r, c))
        if c < n and (E in sides) != (W in D.tiles[r - 1][c].sides):
            return Violation(False, "horizontal edge mismatch", (r, c))
        if r < n and (S in sides) != (N in D.tiles[r][c - 1].sides):
            return Violation(False, "vertical edge mismatch", (r, c))
    bumps = D.bumps()
    if len(bumps) > D.max_bumps:
        return Violation(False, f"{len(bumps)} bump tile(s), at most {D.max_bumps} allowed", bumps[0])
    try:
        tr = trace_pipes(D)
    except GridError as exc:
        return Violation(False, str(exc))
    for pair, where in sorted(tr.crossings.items()):
        if len(where) > 1:
            return Violation(False, f"pipes {pair[0]} and {pair[1]} cross twice", where[1])
    if right_marker is not None:
        a, b = right_marker
        if not D[a, b].has_r:
            return Violation(False, "right marker is not on a south-east turn", right_marker)
        p = tr.r_pipe(a, b)
        for (r, c), t in _iter_tiles(D):
            if t is Tile.CROSS and tr.west[r, c] == p:
                return Violation(False, f"marked pipe {p} runs horizontally through a cross", (r, c))
    return _OK


def rothe_bpd(p: Permutation) -> BpdGrid:
    """The pipe dream whose pipes each make a single turn; blanks form the Rothe diagram."""
    n = max(p.n, 1)
    inv = p.inverse

    def tile(r, c):
        if c == p(r):
            return Tile.RELBOW
        vertical = r > inv(c)
        horizontal = c > p(r)
        if vertical and horizontal:
            return Tile.CROSS
        if vertical:
            return Tile.VERTICAL
        if horizontal:
            return Tile.HORIZONTAL
        return Tile.BLANK

    return BpdGrid(tuple(tuple(tile(r, c) for c in range(1, n + 1)) for r in range(1, n + 1)))


def enumerate_bpds(p: Permutation, size: int | None = None) -> list[BpdGrid]:
    """Every bumpless pipe dream of ``p``, sorted by rendered text.

    Backtracking fills rows from the bottom up, left to right.  Only tiles
    with exactly one incoming pipe offer a choice (go straight or turn); the
    search is pruned by the pipe each row must emit on the east edge, by
    the set of pipes still alive above each finished row, and by refusing
    any crossing that would not be the unique crossing of an inversion.
    """
    n = max(size or 0, p.n, 1)
    w = p.padded(n)
    inv = p.inverse
    alive_above = [frozenset(w[: r - 1]) for r in range(1, n + 2)]  # alive_above[r-1] for row r
    results: list[BpdGrid] = []
    rows: list[list[Tile]] = [[Tile.BLANK] * n for _ in range(n)]

    def inverted(a: int, b: int) -> bool:
        lo, hi = min(a, b), max(a, b)
        return inv(lo) > inv(hi)

    def fill(r: int, c: int, below: list[int | None], west: int | None, crossed: frozenset):
        # below[c-1]: pipe entering (r, c) from the south
        if c > n:
            if west != w[r - 1]:
                return
            if frozenset(x for x in below if x is not None) != alive_above[r - 1]:
                return
            if r == 1:
                results.append(BpdGrid(tuple(tuple(row) for row in rows)))
                return
            fill(r - 1, 1, below, None, crossed)
            return
        s = below[c - 1]
        options: list[tuple[Tile, int | None, int | None, frozenset]] = []
        if s is None and west is None:
            options.append((Tile.BLANK, None, None, crossed))
        elif west is None:
            options.append((Tile.VERTICAL, s, None, crossed))
            options.append((Tile.RELBOW, None, s, crossed))
        elif s is None:
            options.append((Tile.HORIZONTAL, None, west, crossed))
            options.append((Tile.JELBOW, west, None, crossed))
        else:
            pair = (min(s, west), max(s, west))
            if inverted(s, west) and pair not in crossed:
                options.append((Tile.CROSS, s, west, crossed | {pair}))
        for tile, up, east, cr in options:
            rows[r - 1][c - 1] = tile
            nxt = below[:]
            nxt[c - 1] = up
            fill(r, c + 1, nxt, east, cr)

    fill(n, 1, list(range(1, n + 1)), None, frozenset())
    return sorted(results, key=render)


def _droops(D: BpdGrid) -> Iterator[BpdGrid]:
    """All single droops: an r-elbow slides to a blank south-east of it,
    provided the rectangle between them holds no other elbow."""
    n = D.n
    for a, b in D.positions(Tile.RELBOW):
        for c in range(a + 1, n + 1):
            for d in range(b + 1, n + 1):
                if D[c, d] is not Tile.BLANK:
                    continue
                if any(
                    D[r, s] in (Tile.RELBOW, Tile.JELBOW, Tile.BUMP)
                    for r in range(a, c + 1)
                    for s in range(b, d + 1)
                    if (r, s) != (a, b)
                ):
                    continue
                if D[c, b] is not Tile.VERTICAL or D[a, d] is not Tile.HORIZONTAL:
                    continue
                changes = {(a, b): Tile.BLANK, (c, b): Tile.RELBOW, (a, d): Tile.RELBOW, (c, d): Tile.JELBOW}
                ok = True
                for r in range(a + 1, c):
                    changes[r, b] = {Tile.CROSS: Tile.HORIZONTAL, Tile.VERTICAL: Tile.BLANK}[D[r, b]]
                    t = D[r, d]
                    if t not in (Tile.BLANK, Tile.HORIZONTAL):
                        ok = False
                        break
                    changes[r, d] = Tile.VERTICAL if t is Tile.BLANK else Tile.CROSS
                if not ok:
                    continue
                for s in range(b + 1, d):
                    changes[a, s] = {Tile.CROSS: Tile.VERTICAL, Tile.HORIZONTAL: Tile.BLANK}[D[a, s]]
                    t = D[c, s]
                    if t not in (Tile.BLANK, Tile.VERTICAL):
                        ok = False
                        break
                    changes[c, s] = Tile.HORIZONTAL if t is Tile.BLANK else Tile.CROSS
                if ok:
                    yield D.replace(changes)


def droop_closure(p: Permutation) -> list[BpdGrid]:
    """BPD(p) generated by repeated droops from the Rothe pipe dream.

    Independent of :func:`enumerate_bpds`; used to cross-check it.
    """
    start = rothe_bpd(p)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for D in frontier:
            for E in _droops(D):
                if E not in seen and validate(E) and trace_pipes(E).permutation() == p:
                    seen.add(E)
                    nxt.append(E)
        frontier = nxt
    return sorted(seen, key=render)


def embed(D: BpdGrid, m: int) -> BpdGrid:
    """Pad ``D`` to size ``m`` with fixed points; the permutation is unchanged."""
    n = D.n
    if m < n:
        raise ValueError(f"cannot embed a {n}x{n} grid into {m}x{m}")

    def tile(r, c):
        if r <= n and c <= n:
            return D.tiles[r - 1][c - 1]
        if r == c:
            return Tile.RELBOW
        return Tile.VERTICAL if r > c else Tile.HORIZONTAL

    return BpdGrid(tuple(tuple(tile(r, c) for c in range(1, m + 1)) for r in range(1, m + 1)), D.max_bumps)


def trim(D: BpdGrid) -> BpdGrid:
    """Drop trailing fixed-point rows and columns (never below 1x1)."""
    n = D.n
    while n > 1:
        last_row = D.tiles[n - 1][:n]
        if last_row[n - 1] is not Tile.RELBOW:
            break
        if any(t is not Tile.VERTICAL for t in last_row[: n - 1]):
            break
        if any(D.tiles[r][n - 1] is not Tile.HORIZONTAL for r in range(n - 1)):
            break
        n -= 1
    if n == D.n:
        return D
    return BpdGrid(tuple(row[:n] for row in D.tiles[:n]), D.max_bumps)


def render(D: BpdGrid) -> str:
    return "\n".join("".join(t.value for t in row) for row in D.tiles)


def parse(text: str, max_bumps: int | None = None) -> BpdGrid:
    """Inverse of :func:`render`.  Bumps switch the grid to activated mode."""
    lines = text.strip("\n").split("\n")
    lines = [ln.rstrip("\r") for ln in lines]
    n = len(lines)
    rows = []
    for i, line in enumerate(lines, start=1):
        row = []
        for j, ch in enumerate(line, start=1):
            tile = _BY_CHAR.get(ch)
            if tile is None:
                raise ParseError(f"unknown tile character {ch!r}", i, j)
            row.append(tile)
        if len(line) != n:
            raise ParseError(f"expected {n} tiles, found {len(line)}", i, min(len(line), n) + 1)
        rows.append(tuple(row))
    if not rows or not rows[0]:
        raise ParseError("empty grid", 1, 1)
    grid = BpdGrid(tuple(rows))
    nb = len(grid.bumps())
    return BpdGrid(grid.tiles, max_bumps if max_bumps is not None else nb)
