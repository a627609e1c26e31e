"""Exact sparse polynomials in x_1, x_2, ... and a divided-difference Schubert oracle.

A :class:`Polynomial` maps exponent vectors (tuples with trailing zeros
removed) to nonzero Python ints.  Nothing here knows about pipe dreams; the
Schubert polynomials computed by :func:`schubert_oracle` come purely from
divided differences, so they can be used to check the pipe-dream side.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .perm import Permutation, all_permutations, k_covers_up

__all__ = [
    "Polynomial",
    "ExpansionError",
    "divided_difference",
    "schubert_oracle",
    "schubert_oracle_w0",
    "expand_in_schubert_basis",
    "monk_product",
]

Exponent = tuple[int, ...]


def _trim(exp: Iterable[int]) -> Exponent:
    exp = list(exp)
    while exp and exp[-1] == 0:
        exp.pop()
    return tuple(exp)


def _pad(exp: Exponent, m: int) -> Exponent:
    return exp + (0,) * (m - len(exp))


class ExpansionError(ArithmeticError):
    """Raised when a polynomial has no nonnegative Schubert expansion."""


class Polynomial:
    """Multivariate polynomial with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None):
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            if c:
                key = _trim(exp)
                clean[key] = clean.get(key, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def one(cls) -> Polynomial:
        return cls({(): 1})

    @classmethod
    def var(cls, i: int) -> Polynomial:
        return cls({(0,) * (i - 1) + (1,): 1})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: int = 1) -> Polynomial:
        return cls({tuple(exp): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial({(): other})
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out)

    def __neg__(self) -> Polynomial:
        return Polynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return Polynomial({e: c * other for e, c in self.terms.items()})
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                m = max(len(e1), len(e2))
                e = tuple(a + b for a, b in zip(_pad(e1, m), _pad(e2, m)))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    @property
    def nvars(self) -> int:
        """Index of the largest variable that occurs."""
        return max((len(e) for e in self.terms), default=0)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficient(self, exp: Iterable[int]) -> int:
        return self.terms.get(_trim(exp), 0)

    def swap(self, i: int) -> Polynomial:
        """Exchange x_i and x_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            e = list(_pad(e, i + 1))
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return Polynomial(out)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        m = self.nvars
        return sorted(self.terms.items(), key=lambda t: _pad(t[0], m))

    def lex_min_exponent(self) -> Exponent:
        m = self.nvars
        return min(self.terms, key=lambda e: _pad(e, m))

    def to_text(self) -> str:
        """Terms in lex order of exponent vectors, e.g. ``x1^2 x3^2 + x1^2 x2 x3``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "exponents": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> Polynomial:
        return cls({tuple(t["exponents"]): t["coeff"] for t in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def _divide_by_difference(g: Polynomial, i: int) -> Polynomial:
    """Exact quotient of ``g`` by ``x_i - x_{i+1}``.

    Ordinary division with x_i as the leading variable: the remainder is
    whatever is left free of x_i.
    """
    rem = dict(g.terms)
    quot: dict[Exponent, int] = {}
    while rem:
        # a term with the highest power of x_i
        e = max(rem, key=lambda t: (t[i - 1] if len(t) >= i else 0, _pad(t, i + 1)))
        c = rem[e]
        if len(e) < i or e[i - 1] == 0:
            raise ArithmeticError(f"x{i} - x{i + 1} does not divide the numerator")
        q = list(_pad(e, i + 1))
        q[i - 1] -= 1
        q = _trim(q)
        quot[q] = quot.get(q, 0) + c
        # subtract c * x^q * (x_i - x_{i+1})
        del rem[e]
        shifted = list(_pad(q, i + 1))
        shifted[i] += 1
        shifted = _trim(shifted)
        rem[shifted] = rem.get(shifted, 0) + c
        if rem[shifted] == 0:
            del rem[shifted]
    return Polynomial(quot)


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """(f - s_i f) / (x_i - x_{i+1})."""
    if i < 1:
        raise ValueError("divided differences are indexed from 1")
    return _divide_by_difference(f - f.swap(i), i)


@lru_cache(maxsize=None)
def schubert_oracle(w: Permutation) -> Polynomial:
    """Schubert polynomial of ``w`` by divided differences.

    Ascents are removed one at a time (``S_w = d_i S_{w s_i}`` when
    ``w(i) < w(i+1)``) until a dominant permutation is reached, whose
    Schubert polynomial is the monomial ``x^code``.  The longest element of
    S_n is the dominant permutation this reduces to in the worst case.
    """
    code = w.code
    for i in range(len(code) - 1):
        if code[i] < code[i + 1]:
            return divided_difference(schubert_oracle(w.swap_positions(i + 1, i + 2)), i + 1)
    return Polynomial.monomial(code)


def schubert_oracle_w0(w: Permutation, n: int | None = None) -> Polynomial:
    """Schubert polynomial of ``w`` descending from the longest element of S_n.

    Slower than :func:`schubert_oracle` and kept as a cross-check of it.
    """
    n = max(n or 0, w.n, 1)
    f = Polynomial.monomial(tuple(range(n - 1, 0, -1)))
    w0 = Permutation(range(n, 0, -1))
    # walk from w0 down to w along ascents of w
    path = []
    u = w
    while u != w0:
        i = next(i for i in range(1, n) if u(i) < u(i + 1))
        path.append(i)
        u = u.swap_positions(i, i + 1)
    for i in reversed(path):
        f = divided_difference(f, i)
    return f


def _lex_less(a: Exponent, b: Exponent) -> bool:
    m = max(len(a), len(b))
    return _pad(a, m) < _pad(b, m)


def _expand_greedy(P: Polynomial) -> dict[Permutation, int]:
    rest = P
    out: dict[Permutation, int] = {}
    guard = 0
    while rest:
        guard += 1
        if guard > 100_000:
            raise ExpansionError("greedy expansion did not terminate")
        e = rest.lex_min_exponent()
        c = rest.terms[e]
        if c < 0:
            raise ExpansionError(f"negative coefficient {c} at x^{e}")
        u = Permutation.from_code(e)
        S = schubert_oracle(u)
        if S.lex_min_exponent() != _trim(u.code):
            raise ExpansionError(f"lex-min monomial of S_{u} is not x^code")
        out[u] = out.get(u, 0) + c
        rest = rest - S * c
    return out


def _expand_linear(P: Polynomial) -> dict[Permutation, int]:
    """Solve for the expansion degree by degree by exact elimination."""
    out: dict[Permutation, int] = {}
    for deg in sorted(P.degrees()):
        part = Polynomial({e: c for e, c in P.terms.items() if sum(e) == deg})
        # every u in the expansion has descents inside the variables used
        nv = max(part.nvars, 1)
        n = nv + deg + 1
        candidates = [
            u for u in _perms_with_descents_at_most(nv, n) if u.length == deg
        ]
        polys = [schubert_oracle(u) for u in candidates]
        monos = sorted({e for p in polys for e in p.terms} | set(part.terms))
        index = {e: r for r, e in enumerate(monos)}
        rows = [[Fraction(0)] * (len(candidates) + 1) for _ in monos]
        for col, p in enumerate(polys):
            for e, c in p.terms.items():
                rows[index[e]][col] = Fraction(c)
        for e, c in part.terms.items():
            rows[index[e]][-1] = Fraction(c)
        solution = _solve_exact(rows, len(candidates))
        if solution is None:
            raise ExpansionError(f"degree {deg} part is not in the Schubert span")
        for u, c in zip(candidates, solution):
            if c.denominator != 1 or c < 0:
                raise ExpansionError(f"coefficient {c} of S_{u} is not a nonnegative integer")
            if c:
                out[u] = out.get(u, 0) + int(c)
    return out


def _perms_with_descents_at_most(d: int, n: int) -> list[Permutation]:
    return [u for u in all_permutations(n) if not u.descents or u.descents[-1] <= d]


def _solve_exact(rows: list[list[Fraction]], ncols: int) -> list[Fraction] | None:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 and all(v == 0 for v in row[:-1]) for row in rows):
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def expand_in_schubert_basis(P: Polynomial) -> dict[Permutation, int]:
    """Coefficients ``c_u`` with ``P = sum c_u S_u``, all positive.

    Uses greedy subtraction of the lex-min monomial, falling back to exact
    linear algebra if the greedy pass hits a negative coefficient.  The
    result is re-summed and compared with ``P`` before returning.
    """
    try:
        out = _expand_greedy(P)
    except ExpansionError:
        out = _expand_linear(P)
    total = Polynomial()
    for u, c in out.items():
        if c <= 0:
            raise ExpansionError(f"nonpositive coefficient for {u}")
        total = total + schubert_oracle(u) * c
    if total != P:
        raise ExpansionError("expansion does not sum back to the input")
    return out


def monk_product(p: Permutation, k: int) -> dict[Permutation, int]:
    """Schubert expansion of ``(x_1 + ... + x_k) S_p``."""
    if k < 1:
        raise ValueError("k must be positive")
    e = Polynomial()
    for i in range(1, k + 1):
        e = e + Polynomial.var(i)
    return expand_in_schubert_basis(e * schubert_oracle(p))


def monk_rule_keys(p: Permutation, k: int) -> set[Permutation]:
    """The permutations Monk's rule predicts for ``(x_1 + ... + x_k) S_p``."""
    return k_covers_up(p, k)
