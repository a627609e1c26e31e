"""Permutations of finite support, Bruhat covers and mixed k-chains.

Permutations are elements of S_infinity stored in one-line notation with
trailing fixed points removed, so ``Permutation((1, 3, 2, 4))`` and
``Permutation((1, 3, 2))`` are the same object.  Positions and values are
1-based throughout.

>>> w = Permutation.parse("13542")
>>> w.length, w.descents
(4, (3, 4))
>>> print(up_chain(w))
12345 <3 12435 <4 12534 <4 12543 <4 13542
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "MixedChain",
    "length",
    "descents",
    "cover_transposition",
    "is_cover",
    "is_k_cover",
    "k_covers_up",
    "up_chain",
    "down_chain",
    "all_permutations",
    "bruhat_le",
    "mixed_chains",
]


def _trim(values: Sequence[int]) -> tuple[int, ...]:
    values = list(values)
    while values and values[-1] == len(values):
        values.pop()
    return tuple(values)


@dataclass(frozen=True, init=False)
class Permutation:
    """A bijection of the positive integers fixing everything past ``n``."""

    one_line: tuple[int, ...]

    def __init__(self, one_line: Iterable[int] = ()):
        values = tuple(int(v) for v in one_line)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(values)}: {values}")
        object.__setattr__(self, "one_line", _trim(values))

    @classmethod
    def identity(cls) -> Permutation:
        return cls(())

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read ``31524`` or ``2,4,6,3,1,5,10,7,8,9``."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation text")
        try:
            if "," in text:
                values = [int(tok) for tok in text.split(",")]
            else:
                values = [int(ch) for ch in text]
        except ValueError:
            raise ValueError(f"cannot parse permutation {text!r}") from None
        return cls(values)

    @classmethod
    def from_code(cls, code: Sequence[int]) -> Permutation:
        """Inverse of :attr:`code`: the permutation with the given Lehmer code."""
        code = list(code)
        n = max((i + c + 1 for i, c in enumerate(code)), default=0)
        available = list(range(1, n + 1))
        values = []
        for c in code:
            values.append(available.pop(c))
        values.extend(available)
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1] if i <= len(self.one_line) else i

    def padded(self, m: int) -> tuple[int, ...]:
        """One-line notation in S_m, ``m >= n``."""
        return self.one_line + tuple(range(self.n + 1, m + 1))

    def is_identity(self) -> bool:
        return not self.one_line

    @cached_property
    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    @cached_property
    def code(self) -> tuple[int, ...]:
        w = self.one_line
        code = [sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w))]
        while code and code[-1] == 0:
            code.pop()
        return tuple(code)

    @cached_property
    def length(self) -> int:
        return sum(self.code)

    @cached_property
    def descents(self) -> tuple[int, ...]:
        w = self.one_line
        return tuple(i for i in range(1, len(w)) if w[i - 1] > w[i])

    @property
    def d1(self) -> int | None:
        """First descent position, ``None`` for the identity."""
        return self.descents[0] if self.descents else None

    @property
    def d2(self) -> int | None:
        """Last descent position, ``None`` for the identity."""
        return self.descents[-1] if self.descents else None

    def swap_positions(self, a: int, b: int) -> Permutation:
        """Right multiplication by the transposition t_{ab}."""
        w = list(self.padded(max(self.n, a, b)))
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
        return Permutation(w)

    def swap_values(self, x: int, y: int) -> Permutation:
        """Left multiplication by the transposition of values x and y."""
        w = list(self.padded(max(self.n, x, y)))
        w = [y if v == x else x if v == y else v for v in w]
        return Permutation(w)

    def __mul__(self, other: Permutation) -> Permutation:
        m = max(self.n, other.n)
        return Permutation(self(other(i)) for i in range(1, m + 1))

    def __lt__(self, other: Permutation) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.length, self.one_line)

    def to_text(self, width: int | None = None) -> str:
        values = self.padded(max(width or 0, self.n, 1))
        if max(values) <= 9:
            return "".join(map(str, values))
        return ",".join(map(str, values))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Permutation({self.to_text()!r})"


def length(p: Permutation) -> int:
    return p.length


def descents(p: Permutation) -> tuple[frozenset[int], int | None, int | None]:
    """Descent set together with the first and last descent."""
    return frozenset(p.descents), p.d1, p.d2


@lru_cache(maxsize=1 << 16)
def cover_transposition(lo: Permutation, hi: Permutation) -> tuple[int, int] | None:
    """Return ``(a, b)`` with ``hi = lo t_ab`` a Bruhat cover, else ``None``."""
    m = max(lo.n, hi.n)
    x, y = lo.padded(m), hi.padded(m)
    diff = [i + 1 for i in range(m) if x[i] != y[i]]
    if len(diff) != 2:
        return None
    a, b = diff
    lo_a, lo_b = x[a - 1], x[b - 1]
    if lo_a > lo_b:
        return None
    if any(lo_a < x[c - 1] < lo_b for c in range(a + 1, b)):
        return None
    return a, b


def is_cover(lo: Permutation, hi: Permutation) -> bool:
    return cover_transposition(lo, hi) is not None


def is_k_cover(lo: Permutation, hi: Permutation, k: int) -> bool:
    """True iff ``hi`` covers ``lo`` in k-Bruhat order."""
    ab = cover_transposition(lo, hi)
    return ab is not None and ab[0] <= k < ab[1]


def k_covers_up(p: Permutation, k: int, support_bound: int | None = None) -> set[Permutation]:
    """All covers ``p t_ab`` of ``p`` with ``a <= k < b <= support_bound``.

    The default bound ``max(n, k) + 1`` already contains every such cover.
    """
    if support_bound is None:
        support_bound = max(p.n, k) + 1
    w = p.padded(max(support_bound, p.n))
    out = set()
    for a in range(1, min(k, support_bound) + 1):
        low = w[a - 1]
        ceiling = None  # smallest value above w(a) seen so far between a and b
        for b in range(a + 1, support_bound + 1):
            val = w[b - 1]
            if val > low and (ceiling is None or val < ceiling):
                if b > k:
                    out.add(p.swap_positions(a, b))
                ceiling = val
    return out


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n, sorted by length then one-line notation."""
    from itertools import permutations

    return sorted(Permutation(w) for w in permutations(range(1, n + 1)))


@dataclass(frozen=True)
class MixedChain:
    """A saturated Bruhat chain with a k-label on each step.

    ``steps`` holds ``(k_i, pi_i)`` pairs; the chain reads
    ``start <k_1 pi_1 <k_2 ... <k_m pi_m``.
    """

    start: Permutation
    steps: tuple[tuple[int, Permutation], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(k), p) for k, p in self.steps))

    @classmethod
    def empty(cls, start: Permutation | None = None) -> MixedChain:
        return cls(start if start is not None else Permutation.identity(), ())

    @classmethod
    def from_perms(cls, perms: Sequence[Permutation], labels: Sequence[int]) -> MixedChain:
        if len(perms) != len(labels) + 1:
            raise ValueError("need one more permutation than labels")
        return cls(perms[0], tuple(zip(labels, perms[1:])))

    @classmethod
    def parse(cls, text: str) -> MixedChain:
        """Read ``1234 <2 1324 <3 1342``; ``⋖`` is accepted for ``<``."""
        tokens = text.replace("⋖", "<").split()
        if not tokens:
            raise ValueError("empty chain text")
        start = Permutation.parse(tokens[0])
        rest = tokens[1:]
        if len(rest) % 2:
            raise ValueError(f"dangling label in chain {text!r}")
        steps = []
        for label, perm in zip(rest[::2], rest[1::2]):
            if not label.startswith("<") or not label[1:].isdigit():
                raise ValueError(f"bad chain label {label!r}")
            steps.append((int(label[1:]), Permutation.parse(perm)))
        return cls(start, tuple(steps))

    @property
    def perms(self) -> list[Permutation]:
        return [self.start] + [p for _, p in self.steps]

    @property
    def labels(self) -> list[int]:
        return [k for k, _ in self.steps]

    @property
    def end(self) -> Permutation:
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def append(self, k: int, p: Permutation) -> MixedChain:
        return MixedChain(self.start, self.steps + ((k, p),))

    def prefix(self, m: int) -> MixedChain:
        return MixedChain(self.start, self.steps[:m])

    def is_valid(self) -> bool:
        prev = self.start
        for k, p in self.steps:
            if not is_k_cover(prev, p, k):
                return False
            prev = p
        return True

    def validate(self) -> None:
        prev = self.start
        for i, (k, p) in enumerate(self.steps, start=1):
            if not is_k_cover(prev, p, k):
                raise ValueError(f"step {i}: {p} does not cover {prev} in {k}-Bruhat order")
            prev = p

    def to_text(self) -> str:
        width = max(max(p.n for p in self.perms), 1)
        parts = [self.start.to_text(width)]
        for k, p in self.steps:
            parts.append(f"<{k} {p.to_text(width)}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __iter__(self) -> Iterator[tuple[int, Permutation]]:
        return iter(self.steps)


def _phi(w: Permutation) -> tuple[Permutation, int]:
    # largest i whose value w(i)+1 sits to the left of i
    inv = w.inverse
    for i in range(w.n, 0, -1):
        if inv(w(i) + 1) < i:
            return w.swap_values(w(i), w(i) + 1), i - 1
    raise ValueError("identity has no predecessor")


def _psi(w: Permutation, smallest_j: bool = False) -> tuple[Permutation, int]:
    i = next(i for i in range(1, w.n + 1) if w(i) != i)
    js = range(i + 1, w.n + 1) if smallest_j else range(w.n, i, -1)
    for j in js:
        lower = w.swap_positions(i, j)
        if is_cover(lower, w):
            return lower, i
    raise AssertionError(f"no down-step found for {w}")


def _build_chain(w: Permutation, step) -> MixedChain:
    perms, labels = [w], []
    while not perms[-1].is_identity():
        lower, k = step(perms[-1])
        perms.append(lower)
        labels.append(k)
    perms.reverse()
    labels.reverse()
    return MixedChain.from_perms(perms, labels)


def up_chain(w: Permutation) -> MixedChain:
    """Chain from the identity to ``w`` with weakly increasing labels."""
    return _build_chain(w, _phi)


def down_chain(w: Permutation, smallest_j: bool = False) -> MixedChain:
    """Chain from the identity to ``w`` with weakly decreasing labels, all at most d2(w).

    Each step down swaps the first non-fixed position ``i`` with the farthest
    ``j`` giving a cover.  ``smallest_j=True`` takes the nearest ``j``
    instead; that variant can put a label above d2(w) (e.g. for 1423), which
    breaks the separated-descent rule.
    """
    return _build_chain(w, lambda p: _psi(p, smallest_j))


def bruhat_le(u: Permutation, w: Permutation) -> bool:
    """Bruhat order by the tableau criterion on sorted prefixes."""
    m = max(u.n, w.n)
    x, y = u.padded(m), w.padded(m)
    for i in range(1, m):
        if any(a > b for a, b in zip(sorted(x[:i]), sorted(y[:i]))):
            return False
    return True


def mixed_chains(w: Permutation) -> Iterator[MixedChain]:
    """Every mixed k-chain from the identity to ``w``, each label choice separately."""

    def grow(chain: MixedChain) -> Iterator[MixedChain]:
        cur = chain.end
        if cur == w:
            yield chain
            return
        m = max(w.n, 1)
        for a, b in combinations(range(1, m + 1), 2):
            nxt = cur.swap_positions(a, b)
            if cover_transposition(cur, nxt) is None or not bruhat_le(nxt, w):
                continue
            for k in range(a, b):
                yield from grow(chain.append(k, nxt))

    yield from grow(MixedChain.empty())
