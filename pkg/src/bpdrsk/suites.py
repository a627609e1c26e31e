"""Exhaustive property suites shared by the command line ``check`` subcommand."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .bpd import BpdGrid, enumerate_bpds, identity_grid, render, trace_pipes, trim, weight
from .insertion import check_commutes, left_insert, right_insert
from .perm import MixedChain, Permutation, all_permutations, bruhat_le, k_covers_up, mixed_chains
from .poly import Polynomial, schubert_oracle


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_text(self) -> str:
        head = "OK" if self.ok else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.notes.items()))
        lines = [f"{head} {self.name} checked={self.checked} failures={len(self.failures)}{extra}"]
        lines.extend(self.failures[:20])
        return "\n".join(lines)


def _key(D: BpdGrid) -> str:
    return render(trim(D))


def oracle_suite(n: int) -> Report:
    rep = Report("oracle")
    for w in all_permutations(n):
        total = Polynomial()
        for D in enumerate_bpds(w):
            total = total + weight(D)
        rep.checked += 1
        if total != schubert_oracle(w):
            rep.fail(f"{w}: pipe-dream sum {total} differs from divided differences")
    return rep


def monk_suite(n: int) -> Report:
    """Single-letter insertion is a weight-compatible bijection onto the Monk terms."""
    rep = Report("monk")
    bpd_cache: dict[Permutation, list[BpdGrid]] = {}

    def bpds(p):
        if p not in bpd_cache:
            bpd_cache[p] = enumerate_bpds(p)
        return bpd_cache[p]

    for pi in all_permutations(n):
        for k in range(1, max(n, 2)):
            target = {_key(E) for t in k_covers_up(pi, k) for E in bpds(t)}
            for side, ins in (("left", left_insert), ("right", right_insert)):
                seen: set[str] = set()
                for D in bpds(pi):
                    for a in range(1, k + 1):
                        rep.checked += 1
                        E = ins(D, (a, k))
                        key = _key(E)
                        if key in seen:
                            rep.fail(f"{side} {pi} k={k}: image repeated")
                        seen.add(key)
                        if key not in target:
                            rep.fail(f"{side} {pi} k={k}: image outside the Monk terms")
                        if weight(D) * Polynomial.var(a) != weight(E):
                            rep.fail(f"{side} {pi} k={k} a={a}: weight not multiplied by x{a}")
                if seen != target:
                    rep.fail(f"{side} {pi} k={k}: {len(target - seen)} targets missed")
    return rep


def comm_suite(n: int, max_k: int | None = None) -> Report:
    """Left and right insertion commute when l <= k, l <= d1 and k >= d2."""
    rep = Report("comm")
    max_k = max_k if max_k is not None else n + 1
    outside = 0
    for pi in all_permutations(n):
        d1 = pi.d1 if pi.d1 is not None else max_k
        d2 = pi.d2 if pi.d2 is not None else 0
        for D in enumerate_bpds(pi):
            for k in range(1, max_k + 1):
                for l in range(1, k + 1):
                    inside = l <= d1 and k >= d2
                    for x in range(1, k + 1):
                        for y in range(1, l + 1):
                            same = check_commutes(D, (x, k), (y, l))
                            if inside:
                                rep.checked += 1
                                if not same:
                                    rep.fail(f"{pi} {_key(D)!r} x={x}_{k} y={y}_{l}: orders disagree")
                            elif not same:
                                outside += 1
    rep.notes["noncommuting_outside"] = outside
    return rep


def fiber_sums(w: Permutation, side: str) -> dict[MixedChain, Polynomial]:
    """Weight of every biword grouped by its recording chain, for chains ending at ``w``."""
    ins = left_insert if side == "left" else right_insert
    sums: dict[MixedChain, Polynomial] = defaultdict(Polynomial)
    maxk = max(w.n - 1, 1)

    def grow(D, chain, wt):
        if len(chain) == w.length:
            if chain.end == w:
                sums[chain] = sums[chain] + wt
            return
        for k in range(1, maxk + 1):
            for b in range(1, k + 1):
                E = ins(D, (b, k))
                u = trace_pipes(E).permutation()
                if bruhat_le(u, w):
                    grow(E, chain.append(k, u), wt * Polynomial.var(b))

    grow(identity_grid(1), MixedChain.empty(), Polynomial.one())
    return dict(sums)


def fiber_suite(n: int) -> Report:
    rep = Report("rsk-fibers")
    for w in all_permutations(n):
        S = schubert_oracle(w)
        chains = list(mixed_chains(w))
        for side in ("left", "right"):
            sums = fiber_sums(w, side)
            for c in chains:
                rep.checked += 1
                if sums.get(c, Polynomial()) != S:
                    rep.fail(f"{side} {c}: fiber sum differs from the Schubert polynomial")
            stray = set(sums) - set(chains)
            if stray:
                rep.fail(f"{side} {w}: {len(stray)} recording chains are not mixed chains")
    return rep


SUITES = {
    "oracle": oracle_suite,
    "monk": monk_suite,
    "comm": comm_suite,
    "rsk-fibers": fiber_suite,
}
