"""k-growth diagrams, jdt of chains and the separated-descent product rule.

A diagram is a matrix ``pi[i][j]`` (``i`` runs left to right, ``j`` bottom to
top) with a label ``k_i`` on every horizontal edge of column ``i`` and a label
``l_j`` on every vertical edge of row ``j``.  It is determined by its bottom
row and its right column; :func:`fill_growth` reconstructs the rest with the
local square rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .bpd import BpdGrid, perm_of
from .insertion import right_insert, unrsk_left, unrsk_right
from .perm import (
    MixedChain,
    Permutation,
    cover_transposition,
    down_chain,
    is_k_cover,
    k_covers_up,
    up_chain,
)
from .poly import expand_in_schubert_basis, schubert_oracle

__all__ = [
    "GrowthError",
    "SeparationError",
    "GrowthDiagram",
    "open_interval",
    "square_fill_topleft",
    "fill_growth",
    "jdt",
    "structure_constants_separated",
    "bijection_image",
    "check_separated_descent_conditions",
    "constants_to_json",
]


class GrowthError(AssertionError):
    """A growth diagram invariant failed; this always indicates a bug or bad input chains."""


class SeparationError(ValueError):
    pass


SEPARATION_MESSAGE = "separated-descent condition d1(w) ≥ d2(v) violated"


def _separated(w: Permutation, v: Permutation) -> bool:
    if w.is_identity() or v.is_identity():
        return True
    return w.d1 >= v.d2


@dataclass(frozen=True)
class GrowthDiagram:
    entries: tuple[tuple[Permutation, ...], ...]  # entries[i][j]
    row_labels: tuple[int, ...]  # k_1..k_m, one per column step
    col_labels: tuple[int, ...]  # l_1..l_n, one per row step

    @property
    def m(self) -> int:
        return len(self.row_labels)

    @property
    def n(self) -> int:
        return len(self.col_labels)

    def __getitem__(self, ij: tuple[int, int]) -> Permutation:
        i, j = ij
        return self.entries[i][j]

    def row(self, j: int) -> MixedChain:
        return MixedChain.from_perms([self.entries[i][j] for i in range(self.m + 1)], self.row_labels)

    def column(self, i: int) -> MixedChain:
        return MixedChain.from_perms(list(self.entries[i]), self.col_labels)

    @property
    def bottom(self) -> MixedChain:
        return self.row(0)

    @property
    def right(self) -> MixedChain:
        return self.column(self.m)

    @property
    def left(self) -> MixedChain:
        return self.column(0)

    def violations(self) -> list[str]:
        """Conditions (a)-(d), each failure reported with its coordinates."""
        out = []
        if not self.entries[0][0].is_identity():
            out.append(f"(0,0): {self.entries[0][0]} is not the identity")
        for i in range(1, self.m + 1):
            for j in range(self.n + 1):
                if not is_k_cover(self[i - 1, j], self[i, j], self.row_labels[i - 1]):
                    out.append(f"horizontal edge ({i - 1},{j})-({i},{j}) is not a {self.row_labels[i - 1]}-cover")
        for i in range(self.m + 1):
            for j in range(1, self.n + 1):
                if not is_k_cover(self[i, j - 1], self[i, j], self.col_labels[j - 1]):
                    out.append(f"vertical edge ({i},{j - 1})-({i},{j}) is not a {self.col_labels[j - 1]}-cover")
        if out:
            return out
        for i in range(1, self.m + 1):
            for j in range(1, self.n + 1):
                k, l = self.row_labels[i - 1], self.col_labels[j - 1]
                try:
                    tl = square_fill_topleft(self[i - 1, j - 1], self[i, j - 1], self[i, j], k, l)
                except GrowthError as exc:
                    out.append(f"square ({i},{j}): {exc}")
                    continue
                if tl != self[i - 1, j]:
                    out.append(f"square ({i},{j}): top-left is {self[i - 1, j]}, local rule gives {tl}")
        return out

    def width(self) -> int:
        return max(max(p.n for col in self.entries for p in col), 1)

    def to_text(self) -> str:
        """TSV, top row first; then the k and l label lines."""
        w = self.width()
        lines = []
        for j in range(self.n, -1, -1):
            lines.append("\t".join(self.entries[i][j].to_text(w) for i in range(self.m + 1)))
        lines.append("\t".join(["k"] + [str(k) for k in self.row_labels]))
        lines.append("\t".join(["l"] + [str(l) for l in self.col_labels]))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "entries": [[str(p) for p in col] for col in self.entries],
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> GrowthDiagram:
        entries = tuple(tuple(Permutation.parse(s) for s in col) for col in data["entries"])
        return cls(entries, tuple(data["row_labels"]), tuple(data["col_labels"]))


def open_interval(lo: Permutation, hi: Permutation) -> list[Permutation]:
    """Interior of a length-two Bruhat interval, by brute force over transpositions."""
    if hi.length != lo.length + 2:
        raise GrowthError(f"[{lo}, {hi}] does not have length 2")
    m = max(lo.n, hi.n)
    found = set()
    for a, b in combinations(range(1, m + 1), 2):
        x = lo.swap_positions(a, b)
        if cover_transposition(lo, x) and cover_transposition(x, hi):
            found.add(x)
    return sorted(found)


def square_fill_topleft(bl: Permutation, br: Permutation, tr: Permutation, k: int, l: int) -> Permutation:
    """The top-left corner forced by the local rule.

    ``bl -k- br`` is the bottom edge and ``br -l- tr`` the right edge.  The
    other interior element ``x`` of ``(bl, tr)`` is used when it is an l-cover
    of ``bl`` and k-covered by ``tr``; otherwise the corner repeats ``br``.
    """
    if not is_k_cover(bl, br, k):
        raise GrowthError(f"{br} does not cover {bl} in {k}-Bruhat order")
    if not is_k_cover(br, tr, l):
        raise GrowthError(f"{tr} does not cover {br} in {l}-Bruhat order")
    interior = open_interval(bl, tr)
    if len(interior) != 2 or br not in interior:
        raise GrowthError(f"interval ({bl}, {tr}) is not thin: {[str(p) for p in interior]}")
    (x,) = [p for p in interior if p != br]
    tl = x if is_k_cover(x, tr, k) and is_k_cover(bl, x, l) else br
    if not (is_k_cover(bl, tl, l) and is_k_cover(tl, tr, k)):
        raise GrowthError(f"square {bl},{br},{tr} with k={k}, l={l} has no valid top-left corner")
    return tl


def _fill_row(below: Sequence[Permutation], top_right: Permutation, labels: Sequence[int], l: int) -> list[Permutation]:
    row = [None] * len(below)
    row[-1] = top_right
    for i in range(len(below) - 1, 0, -1):
        row[i - 1] = square_fill_topleft(below[i - 1], below[i], row[i], labels[i - 1], l)
    return row


def fill_growth(bottom: MixedChain, right: MixedChain) -> GrowthDiagram:
    """The unique diagram with the given bottom row and right column."""
    if not bottom.start.is_identity():
        raise GrowthError(f"bottom chain starts at {bottom.start}, not the identity")
    if bottom.end != right.start:
        raise GrowthError(f"bottom chain ends at {bottom.end} but right chain starts at {right.start}")
    for name, chain in (("bottom", bottom), ("right", right)):
        try:
            chain.validate()
        except ValueError as exc:
            raise GrowthError(f"{name} chain: {exc}") from None
    ks, ls = bottom.labels, right.labels
    rows = [bottom.perms]
    for j, (l, p) in enumerate(right.steps, start=1):
        rows.append(_fill_row(rows[-1], p, ks, l))
    entries = tuple(tuple(rows[j][i] for j in range(len(rows))) for i in range(len(ks) + 1))
    G = GrowthDiagram(entries, tuple(ks), tuple(ls))
    bad = G.violations()
    if bad:
        raise GrowthError("; ".join(bad))
    return G


def jdt(c: MixedChain, d: MixedChain) -> MixedChain:
    """Left column of the diagram grown from ``c`` (bottom) and ``d`` (right)."""
    return fill_growth(c, d).left


def check_separated_descent_conditions(G: GrowthDiagram) -> list[str]:
    """Check the descent bounds every entry must obey; an empty list means ok.

    Requires weakly increasing k's, weakly decreasing l's and ``l_1 <= k_1``;
    then ``l_j <= d1(pi[i][j-1])`` and ``k_i >= d2(pi[i-1][j])`` everywhere.
    """
    ks, ls = G.row_labels, G.col_labels
    if any(a > b for a, b in zip(ks, ks[1:])):
        raise ValueError(f"row labels {list(ks)} are not weakly increasing")
    if any(a < b for a, b in zip(ls, ls[1:])):
        raise ValueError(f"column labels {list(ls)} are not weakly decreasing")
    if ks and ls and ls[0] > ks[0]:
        raise ValueError(f"l_1 = {ls[0]} exceeds k_1 = {ks[0]}")
    out = []
    for j in range(1, G.n + 1):
        for i in range(G.m + 1):
            p = G[i, j - 1]
            if p.d1 is not None and ls[j - 1] > p.d1:
                out.append(f"({i},{j - 1}): l_{j} = {ls[j - 1]} > d1({p}) = {p.d1}")
    for i in range(1, G.m + 1):
        for j in range(G.n + 1):
            p = G[i - 1, j]
            if p.d2 is not None and ks[i - 1] < p.d2:
                out.append(f"({i - 1},{j}): k_{i} = {ks[i - 1]} < d2({p}) = {p.d2}")
    return out


def _oracle_constants(w: Permutation, v: Permutation) -> dict[Permutation, int]:
    return expand_in_schubert_basis(schubert_oracle(w) * schubert_oracle(v))


def _format_table(table: dict[Permutation, int]) -> str:
    return ", ".join(f"{u}:{c}" for u, c in sorted(table.items(), key=lambda kv: kv[0].sort_key())) or "(empty)"


def structure_constants_separated(
    w: Permutation,
    v: Permutation,
    verify: bool = True,
    up: MixedChain | None = None,
    down: MixedChain | None = None,
) -> dict[Permutation, int]:
    """Count chains ``d`` from ``w`` whose jdt against the chain of ``w`` is the chain of ``v``.

    ``up`` and ``down`` default to :func:`up_chain` and :func:`down_chain`;
    custom chains need weakly increasing and weakly decreasing labels, with
    the first label of ``down`` at most the first label of ``up``.
    """
    if not _separated(w, v):
        raise SeparationError(SEPARATION_MESSAGE)
    up = up_chain(w) if up is None else up
    down = down_chain(v) if down is None else down
    if up.end != w or down.end != v or not up.start.is_identity() or not down.start.is_identity():
        raise ValueError("custom chains must run from the identity to w and to v")
    ks, ls = up.labels, down.labels
    if any(a > b for a, b in zip(ks, ks[1:])) or any(a < b for a, b in zip(ls, ls[1:])):
        raise ValueError("chain labels must be weakly increasing for w and weakly decreasing for v")
    if ks and ls and ls[0] > ks[0]:
        raise ValueError("first label of the v chain exceeds the first label of the w chain")
    target = down.perms

    counts: dict[Permutation, int] = {}

    def extend(row: list[Permutation], j: int) -> None:
        if j == len(ls):
            counts[row[-1]] = counts.get(row[-1], 0) + 1
            return
        l = ls[j]
        for nxt in sorted(k_covers_up(row[-1], l)):
            new_row = _fill_row(row, nxt, ks, l)
            if new_row[0] == target[j + 1]:
                extend(new_row, j + 1)

    extend(up.perms, 0)

    if verify:
        expected = _oracle_constants(w, v)
        if counts != expected:
            raise GrowthError(
                f"growth rule disagrees with the polynomial oracle for w={w}, v={v}\n"
                f"  growth: {_format_table(counts)}\n  oracle: {_format_table(expected)}"
            )
    return dict(sorted(counts.items(), key=lambda kv: str(kv[0])))


def bijection_image(Dw: BpdGrid, Dv: BpdGrid, w: Permutation, v: Permutation) -> tuple[Permutation, BpdGrid, MixedChain]:
    """Send a pair of pipe dreams for ``w`` and ``v`` to one for some ``u`` plus a chain ``w -> u``."""
    if not _separated(w, v):
        raise SeparationError(SEPARATION_MESSAGE)
    if perm_of(Dw) != w or perm_of(Dv) != v:
        raise ValueError("grids do not match the given permutations")
    unrsk_left(Dw, up_chain(w))  # checks Dw against its chain
    b = unrsk_right(Dv, down_chain(v))
    D, chain = Dw, MixedChain.empty(w)
    for letter in b:
        D = right_insert(D, letter)
        chain = chain.append(letter.k, perm_of(D))
    return chain.end, D, chain


def constants_to_json(w: Permutation, v: Permutation, constants: dict[Permutation, int], verified: bool) -> str:
    payload = {
        "w": str(w),
        "v": str(v),
        "constants": {str(u): c for u, c in constants.items()},
        "verified_against_oracle": verified,
    }
    return json.dumps(payload, sort_keys=True)
