"""Left and right insertion of biletters into bumpless pipe dreams.

Both insertions realise Monk's rule: inserting ``b_k`` into a pipe dream of
``w`` gives a pipe dream of some ``w t_ab`` with ``a <= k < b`` and one
more inversion, and multiplies the weight by ``x_b``.  Inserting a whole
biword records the chain of permutations it passes through; the inverse
maps recover the biword from the final grid and that chain.

Each insertion can append :class:`~bpdrsk.moves.TraceStep` records to a
list passed as ``trace``.  Step names are ``droop``, ``undroop``, ``swap``
and ``term``, and every step is tagged with the branch of the algorithm
that chose it (``1``, ``2a``, ``2b``, ``3a``, ``3b``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bpd import BpdGrid, Tile, embed, identity_grid, trace_pipes, trim, validate
from .moves import (
    MoveError,
    TraceStep,
    cross_bump_swap,
    min_droop,
    min_undroop,
    term_move,
)
from .perm import MixedChain, Permutation, cover_transposition
from .poly import Polynomial

__all__ = [
    "Biletter",
    "Biword",
    "InsertionError",
    "left_insert",
    "right_insert",
    "inverse_left_insert",
    "inverse_right_insert",
    "rsk_left",
    "rsk_right",
    "unrsk_left",
    "unrsk_right",
    "biword_weight",
    "check_commutes",
    "insertion_branches",
]

_MAX_STEPS = 10_000


class InsertionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Biletter:
    """The symbol ``b_k``; requires ``1 <= b <= k``."""

    b: int
    k: int

    def __post_init__(self):
        if not (1 <= self.b <= self.k):
            raise InsertionError(f"invalid biletter {self.b}_{self.k}: need 1 <= b <= k")

    @classmethod
    def parse(cls, text: str) -> Biletter:
        m = re.fullmatch(r"\s*(\d+)_(\d+)\s*", text)
        if not m:
            raise InsertionError(f"cannot parse biletter {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.b}_{self.k}"


class Biword(tuple):
    """A tuple of :class:`Biletter` with the ``1_1 2_3`` text form."""

    def __new__(cls, letters: Iterable[Biletter] = ()):
        return super().__new__(cls, tuple(letters))

    @classmethod
    def parse(cls, text: str) -> Biword:
        return cls(Biletter.parse(tok) for tok in text.split())

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Biword({str(self)!r})"


def _as_biletter(bl) -> Biletter:
    if isinstance(bl, Biletter):
        return bl
    if isinstance(bl, str):
        return Biletter.parse(bl)
    return Biletter(*bl)


def _as_biword(Q) -> Biword:
    if isinstance(Q, str):
        return Biword.parse(Q)
    return Biword(_as_biletter(bl) for bl in Q)


def _prepare(D: BpdGrid, k: int) -> BpdGrid:
    report = validate(D.plain())
    if not report:
        raise InsertionError(f"malformed grid: {report}")
    return embed(D, max(D.n, k + 1) + 1).activated(1)


def _row_tiles(E: BpdGrid, row: int, tile: Tile) -> list[int]:
    return [c for c in range(1, E.n + 1) if E[row, c] is tile]


def _log(trace, name, branch, src, dst, grid):
    if trace is not None:
        trace.append(TraceStep(f"{name}[{branch}]", src, dst, grid))


def left_insert(D: BpdGrid, bl, trace: list | None = None) -> BpdGrid:
    """``b_k -> D``: start at the leftmost south-east turn of row ``b``."""
    bl = _as_biletter(bl)
    b, k = bl.b, bl.k
    E = _prepare(D, k)
    i, j = b, min(_row_tiles(E, b, Tile.RELBOW))
    branch = "1"
    for _ in range(_MAX_STEPS):
        E, (i1, j1) = min_droop(E, i, j)
        _log(trace, "droop", branch, (i, j), (i1, j1), E)
        if E[i1, j1] is Tile.JELBOW:
            row_r = _row_tiles(E, i1, Tile.RELBOW)
            if i1 <= k:
                branch = "2a"
                j = min(c for c in row_r if c > j1)
            else:
                branch = "2b"
                j = max(c for c in row_r if c < j1)
            i = i1
            continue
        tr = trace_pipes(E)
        p, q = tr.r_pipe(i1, j1), tr.j_pipe(i1, j1)
        if tr.exit_row[p] <= k:
            branch = "3a"
            i, j = i1, j1
            continue
        if tr.crossed(p, q):
            branch = "3b"
            E, (i, j) = cross_bump_swap(E, i1, j1)
            _log(trace, "swap", branch, (i1, j1), (i, j), E)
            continue
        E = term_move(E, i1, j1)
        _log(trace, "term", "3b", (i1, j1), None, E)
        return trim(E.plain())
    raise InsertionError("left insertion did not terminate")


def right_insert(D: BpdGrid, bl, trace: list | None = None) -> BpdGrid:
    """``D <- b_k``: start at the rightmost south-east turn of row ``b``."""
    bl = _as_biletter(bl)
    b, k = bl.b, bl.k
    E = _prepare(D, k)
    i, j = b, max(_row_tiles(E, b, Tile.RELBOW))
    branch = "1"
    for _ in range(_MAX_STEPS):
        E, (i1, j1) = min_droop(E, i, j)
        _log(trace, "droop", branch, (i, j), (i1, j1), E)
        if E[i1, j1] is Tile.JELBOW:
            branch = "2"
            i, j = i1, max(c for c in _row_tiles(E, i1, Tile.RELBOW) if c < j1)
            continue
        tr = trace_pipes(E)
        p, q = tr.r_pipe(i1, j1), tr.j_pipe(i1, j1)
        if tr.crossed(p, q):
            branch = "3a"
            E, (i, j) = cross_bump_swap(E, i1, j1)
            _log(trace, "swap", branch, (i1, j1), (i, j), E)
            continue
        if tr.exit_row[p] <= k:
            branch = "3b"
            i, j = i1, j1
            continue
        E = term_move(E, i1, j1)
        _log(trace, "term", "3b", (i1, j1), None, E)
        return trim(E.plain())
    raise InsertionError("right insertion did not terminate")


def _start_inverse(pi: Permutation, rho: Permutation, k: int, E: BpdGrid) -> tuple[BpdGrid, tuple[int, int]]:
    ab = cover_transposition(pi, rho)
    if ab is None or not (ab[0] <= k < ab[1]):
        raise InsertionError(f"{rho} does not cover {pi} in {k}-Bruhat order")
    report = validate(E.plain())
    if not report:
        raise InsertionError(f"malformed grid: {report}")
    F = embed(E, max(E.n, rho.n, k + 1) + 1)
    tr = trace_pipes(F)
    if tr.permutation() != rho:
        raise InsertionError(f"grid is a pipe dream of {tr.permutation()}, not of {rho}")
    alpha, beta = ab
    where = tr.crossed(pi(alpha), pi(beta))
    if len(where) != 1:
        raise InsertionError(f"pipes {pi(alpha)} and {pi(beta)} do not cross exactly once")
    pos = where[0]
    return F.replace({pos: Tile.BUMP}, 1), pos


def inverse_left_insert(pi: Permutation, rho: Permutation, k: int, E: BpdGrid, trace: list | None = None) -> tuple[Biletter, BpdGrid]:
    """Undo a left insertion that took a pipe dream of ``pi`` to ``E``."""
    F, (i, j) = _start_inverse(pi, rho, k, E)
    branch = "1"
    for _ in range(_MAX_STEPS):
        F, (i1, j1) = min_undroop(F, i, j)
        _log(trace, "undroop", branch, (i, j), (i1, j1), F)
        if F[i1, j1] is Tile.RELBOW:
            row_j = _row_tiles(F, i1, Tile.JELBOW)
            if i1 <= k:
                left = [c for c in row_j if c < j1]
                if not left:
                    return Biletter(i1, k), trim(F.plain())
                branch = "2a"
                i, j = i1, max(left)
            else:
                branch = "2b"
                i, j = i1, min(c for c in row_j if c > j1)
            continue
        tr = trace_pipes(F)
        q = tr.j_pipe(i1, j1)
        if tr.exit_row[q] <= k:
            branch = "3a"
            i, j = i1, j1
            continue
        branch = "3b"
        F, (i, j) = cross_bump_swap(F, i1, j1)
        _log(trace, "swap", branch, (i1, j1), (i, j), F)
    raise InsertionError("inverse left insertion did not terminate")


def inverse_right_insert(pi: Permutation, rho: Permutation, k: int, E: BpdGrid, trace: list | None = None) -> tuple[Biletter, BpdGrid]:
    """Undo a right insertion that took a pipe dream of ``pi`` to ``E``."""
    F, (i, j) = _start_inverse(pi, rho, k, E)
    branch = "1"
    for _ in range(_MAX_STEPS):
        F, (i1, j1) = min_undroop(F, i, j)
        _log(trace, "undroop", branch, (i, j), (i1, j1), F)
        if F[i1, j1] is Tile.RELBOW:
            right = [c for c in _row_tiles(F, i1, Tile.JELBOW) if c > j1]
            if not right:
                return Biletter(i1, k), trim(F.plain())
            branch = "2"
            i, j = i1, min(right)
            continue
        tr = trace_pipes(F)
        if tr.crossed(tr.r_pipe(i1, j1), tr.j_pipe(i1, j1)):
            branch = "3a"
            F, (i, j) = cross_bump_swap(F, i1, j1)
            _log(trace, "swap", branch, (i1, j1), (i, j), F)
            continue
        branch = "3b"
        i, j = i1, j1
    raise InsertionError("inverse right insertion did not terminate")


def _perm(D: BpdGrid) -> Permutation:
    return trace_pipes(D).permutation()


def rsk_left(Q) -> tuple[BpdGrid, MixedChain]:
    """Insert the letters of ``Q`` from last to first with left insertion."""
    D = identity_grid(1)
    chain = MixedChain.empty()
    for bl in reversed(_as_biword(Q)):
        D = left_insert(D, bl)
        chain = chain.append(bl.k, _perm(D))
    return D, chain


def rsk_right(Q) -> tuple[BpdGrid, MixedChain]:
    """Insert the letters of ``Q`` from first to last with right insertion."""
    D = identity_grid(1)
    chain = MixedChain.empty()
    for bl in _as_biword(Q):
        D = right_insert(D, bl)
        chain = chain.append(bl.k, _perm(D))
    return D, chain


def _check_chain(D: BpdGrid, c: MixedChain) -> None:
    if not c.start.is_identity():
        raise InsertionError("recording chains start at the identity")
    c.validate()
    if _perm(D) != c.end:
        raise InsertionError(f"grid is a pipe dream of {_perm(D)}, chain ends at {c.end}")


def unrsk_left(D: BpdGrid, c: MixedChain) -> Biword:
    """The biword whose left recording chain is ``c`` and insertion grid is ``D``."""
    _check_chain(D, c)
    perms = c.perms
    letters = []
    for step in range(len(c), 0, -1):
        bl, D = inverse_left_insert(perms[step - 1], perms[step], c.labels[step - 1], D)
        letters.append(bl)
    return Biword(letters)


def unrsk_right(D: BpdGrid, c: MixedChain) -> Biword:
    """The biword whose right recording chain is ``c`` and insertion grid is ``D``."""
    _check_chain(D, c)
    perms = c.perms
    letters = []
    for step in range(len(c), 0, -1):
        bl, D = inverse_right_insert(perms[step - 1], perms[step], c.labels[step - 1], D)
        letters.append(bl)
    return Biword(reversed(letters))


def biword_weight(Q) -> Polynomial:
    exp: dict[int, int] = {}
    for bl in _as_biword(Q):
        exp[bl.b] = exp.get(bl.b, 0) + 1
    m = max(exp, default=0)
    return Polynomial.monomial([exp.get(i, 0) for i in range(1, m + 1)])


def check_commutes(D: BpdGrid, xk, yl) -> bool:
    """Whether ``(x_k -> D) <- y_l`` equals ``x_k -> (D <- y_l)``."""
    xk, yl = _as_biletter(xk), _as_biletter(yl)
    try:
        one = right_insert(left_insert(D, xk), yl)
        two = left_insert(right_insert(D, yl), xk)
    except (MoveError, InsertionError, ValueError):
        return False
    return one == two


def insertion_branches(trace: Sequence[TraceStep]) -> list[str]:
    """Branch tags of a trace in order, e.g. ``['1', '3a', '3a', '3b']``."""
    return [s.name[s.name.index("[") + 1 : -1] for s in trace]
