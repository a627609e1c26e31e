import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpdrsk.perm import Permutation, all_permutations, k_covers_up
from bpdrsk.poly import (
    ExpansionError,
    Polynomial,
    divided_difference,
    expand_in_schubert_basis,
    monk_product,
    schubert_oracle,
    schubert_oracle_w0,
)

P = Permutation.parse
x1, x2, x3 = (Polynomial.var(i) for i in (1, 2, 3))


def mono(*exp):
    return Polynomial.monomial(exp)


def evaluate(f, point):
    total = 0
    for e, c in f.terms.items():
        term = c
        for v, a in zip(point, e):
            term *= v**a
        total += term
    return total


polys = st.dictionaries(
    st.lists(st.integers(0, 3), min_size=0, max_size=4).map(tuple),
    st.integers(-5, 5),
    max_size=6,
).map(Polynomial)


def test_arithmetic_and_trimming():
    assert Polynomial({(1, 0, 0): 2}) == Polynomial({(1,): 2})
    assert Polynomial({(1,): 0}) == Polynomial()
    assert (x1 + x2) * (x1 - x2) == mono(2) - mono(0, 2)
    assert 3 * x1 == x1 + x1 + x1
    assert Polynomial.one() == 1
    assert (x1 * x2).swap(2) == x1 * x3


def test_text_and_json():
    f = schubert_oracle(P("31524"))
    assert f.to_text() == "x1^2 x3^2 + x1^2 x2 x3 + x1^2 x2^2 + x1^3 x3 + x1^3 x2"
    assert (x1 * 2 - x2).to_text() == "-x2 + 2*x1"
    assert Polynomial.one().to_text() == "1"
    assert Polynomial().to_text() == "0"
    assert Polynomial.from_json(json.loads(f.dumps())) == f
    assert f.to_json()[0] == {"coeff": 1, "exponents": [2, 0, 2]}


@pytest.mark.parametrize(
    "f,i,expected",
    [(mono(2), 1, x1 + x2), (mono(1, 1), 1, Polynomial()), (mono(2, 1), 2, mono(2))],
)
def test_divided_difference_examples(f, i, expected):
    assert divided_difference(f, i) == expected


@settings(max_examples=150, deadline=None)
@given(polys, st.integers(1, 4), st.lists(st.integers(-9, 9), min_size=5, max_size=5))
def test_divided_difference_by_evaluation(f, i, point):
    a, b = point[i - 1], point[i]
    if a == b:
        return
    swapped = list(point)
    swapped[i - 1], swapped[i] = b, a
    expected = Fraction(evaluate(f, point) - evaluate(f, swapped), a - b)
    assert evaluate(divided_difference(f, i), point) == expected


@settings(max_examples=100, deadline=None)
@given(polys, st.integers(1, 3))
def test_nilcoxeter_relations(f, i):
    d = divided_difference
    assert d(d(f, i), i) == Polynomial()
    assert d(d(d(f, i), i + 1), i) == d(d(d(f, i + 1), i), i + 1)


def test_schubert_oracle_examples():
    assert schubert_oracle(Permutation.identity()) == 1
    assert schubert_oracle(P("31524")) == mono(2, 0, 2) + mono(2, 1, 1) + mono(2, 2) + mono(3, 0, 1) + mono(3, 1)
    assert schubert_oracle(P("1432")) == mono(0, 2, 1) + mono(1, 1, 1) + mono(2, 0, 1) + mono(1, 2) + mono(2, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_oracle_properties(n):
    for w in all_permutations(n):
        f = schubert_oracle(w)
        assert f == schubert_oracle_w0(w, n)
        assert f == schubert_oracle_w0(w, n + 1)
        assert all(c > 0 for c in f.terms.values())
        assert f.degrees() == {w.length}
        assert f.coefficient(w.code) == 1
        assert f.lex_min_exponent() == w.code
        # right descents are exactly the indices where the divided difference is nonzero
        for i in range(1, n):
            down = divided_difference(f, i)
            if w(i) > w(i + 1):
                assert down == schubert_oracle(w.swap_positions(i, i + 1))
            else:
                assert down == Polynomial()


def test_expansion_examples():
    assert expand_in_schubert_basis(schubert_oracle(P("1432"))) == {P("1432"): 1}
    assert expand_in_schubert_basis((x1 + x2) * x1) == {P("231"): 1, P("312"): 1}
    prod = schubert_oracle(P("13542")) * schubert_oracle(P("1432"))
    expected = {P(u): 1 for u in ["34521", "25431", "35412", "246315", "263415", "156324", "164325"]}
    assert expand_in_schubert_basis(prod) == expected


def test_expansion_rejects_non_schubert_positive():
    with pytest.raises(ExpansionError):
        expand_in_schubert_basis(x2)  # x2 = S_132 - S_21


def test_products_are_positive_and_graded():
    s4 = all_permutations(4)
    for w in s4[:12]:
        for v in s4[:12]:
            out = expand_in_schubert_basis(schubert_oracle(w) * schubert_oracle(v))
            assert all(c > 0 for c in out.values())
            assert {u.length for u in out} <= {w.length + v.length}


@pytest.mark.parametrize("p,k", [("1234", 2), ("1", 1), ("31524", 3), ("1432", 1), ("2413", 3)])
def test_monk_product(p, k):
    out = monk_product(P(p), k)
    assert set(out.values()) <= {1}
    assert set(out) == k_covers_up(P(p), k, max(P(p).n, k) + 1)
    if p == "1":
        assert out == {P("21"): 1}
