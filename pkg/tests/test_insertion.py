import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpdrsk.bpd import BpdGrid, Tile, enumerate_bpds, identity_grid, perm_of, render, trim, weight
from bpdrsk.insertion import (
    Biletter,
    Biword,
    InsertionError,
    biword_weight,
    check_commutes,
    insertion_branches,
    inverse_left_insert,
    inverse_right_insert,
    left_insert,
    right_insert,
    rsk_left,
    rsk_right,
    unrsk_left,
    unrsk_right,
)
from bpdrsk.perm import MixedChain, Permutation, all_permutations, is_k_cover, k_covers_up
from bpdrsk.poly import Polynomial, schubert_oracle

P = Permutation.parse
C = MixedChain.parse
B, X, R = Tile.BLANK, Tile.CROSS, Tile.RELBOW
G21 = BpdGrid(((B, R), (R, X)))
SAMPLE_Q = "1_1 2_3 1_2 2_4"
FIBER_CHAIN = "1234 <3 1243 <2 1342 <2 1432"

biletters = st.integers(1, 5).flatmap(lambda k: st.integers(1, k).map(lambda b: Biletter(b, k)))
biwords = st.lists(biletters, max_size=6).map(Biword)


def test_biletter_grammar():
    assert Biletter.parse("2_3") == Biletter(2, 3)
    assert str(Biword.parse(SAMPLE_Q)) == SAMPLE_Q
    assert Biword.parse("") == Biword()
    with pytest.raises(InsertionError):
        Biletter(3, 2)
    with pytest.raises(ValueError):
        Biletter.parse("2-3")


def test_single_insertions():
    assert left_insert(identity_grid(1), (1, 1)) == G21
    assert right_insert(identity_grid(1), (1, 1)) == G21
    E = left_insert(G21, (1, 2))
    assert perm_of(E) == P("312") and set(E.blanks()) == {(1, 1), (1, 2)}
    (D231,) = enumerate_bpds(P("231"))
    E = right_insert(D231, (1, 2))
    assert perm_of(E) == P("2413") and weight(E) == Polynomial.monomial((2, 1))


def test_chain_steps_by_hand():
    D, _ = rsk_left(Biword.parse("2_3 1_2 2_4"))
    assert perm_of(left_insert(D, (1, 1))) == P("24153")
    D, _ = rsk_right(Biword.parse("1_1 2_3 1_2"))
    assert perm_of(right_insert(D, (2, 4))) == P("31524")


def test_rsk_chains():
    D, c = rsk_left(SAMPLE_Q)
    assert str(c) == "12345 <4 12354 <2 13254 <3 14253 <1 24153"
    assert weight(D) == biword_weight(SAMPLE_Q)
    D, c = rsk_right(SAMPLE_Q)
    assert str(c) == "12345 <1 21345 <3 21435 <2 31425 <4 31524"
    assert weight(D) == biword_weight(SAMPLE_Q)
    D, c = rsk_left("2_2 2_2 3_3")
    assert str(c) == FIBER_CHAIN
    for rsk in (rsk_left, rsk_right):
        D, c = rsk("")
        assert D == identity_grid(1) and len(c) == 0


def test_inverse_examples():
    for E in enumerate_bpds(P("24153")):
        bl, D = inverse_left_insert(P("14253"), P("24153"), 1, E)
        assert bl.k == 1 and perm_of(D) == P("14253")
        assert left_insert(D, bl) == E
    for E in enumerate_bpds(P("31425")):
        bl, D = inverse_right_insert(P("21435"), P("31425"), 2, E)
        assert bl.k == 2 and perm_of(D) == P("21435")
        assert right_insert(D, bl) == E
    E = enumerate_bpds(P("1324"))[0]
    with pytest.raises(ValueError):
        inverse_left_insert(P("1234"), P("1324"), 1, E)
    with pytest.raises(ValueError):
        inverse_right_insert(P("1234"), P("1324"), 3, E)


@pytest.mark.parametrize("side", ["left", "right"])
def test_single_insertion_roundtrip_s4(side):
    ins, inv = (left_insert, inverse_left_insert) if side == "left" else (right_insert, inverse_right_insert)
    for pi in all_permutations(4):
        for D in enumerate_bpds(pi):
            for k in range(1, 5):
                for b in range(1, k + 1):
                    E = ins(D, (b, k))
                    rho = perm_of(E)
                    assert is_k_cover(pi, rho, k)
                    assert weight(E) == weight(D) * Polynomial.var(b)
                    bl, back = inv(pi, rho, k, E)
                    assert bl == Biletter(b, k) and back == D


def test_unrsk_left_fiber():
    grids = enumerate_bpds(P("1432"))
    words = {str(unrsk_left(D, C(FIBER_CHAIN))) for D in grids}
    assert words == {"2_2 2_2 3_3", "1_2 2_2 3_3", "1_2 1_2 3_3", "2_2 2_2 1_3", "1_2 2_2 1_3"}
    total = Polynomial()
    for w in words:
        total = total + biword_weight(w)
    assert total == schubert_oracle(P("1432"))


def test_unrsk_right_fiber():
    grids = enumerate_bpds(P("1432"))
    words = {str(unrsk_right(D, C(FIBER_CHAIN))) for D in grids}
    assert words == {"3_3 2_2 2_2", "3_3 1_2 2_2", "3_3 1_2 1_2", "2_3 1_2 2_2", "2_3 1_2 1_2"}
    for w in words:
        _, c = rsk_right(w)
        assert str(c) == FIBER_CHAIN


def test_unrsk_errors():
    D, _ = rsk_left(SAMPLE_Q)
    with pytest.raises(InsertionError):
        unrsk_left(D, C(FIBER_CHAIN))
    with pytest.raises(InsertionError):
        unrsk_right(D, C("1324 <2 1423"))


def test_biword_weight():
    assert biword_weight("") == 1
    assert biword_weight("2_2 2_2 3_3") == Polynomial.monomial((0, 2, 1))
    assert biword_weight(SAMPLE_Q) == Polynomial.monomial((2, 2))


@settings(max_examples=300, deadline=None)
@given(biwords)
def test_rsk_roundtrip(Q):
    for rsk, unrsk in ((rsk_left, unrsk_left), (rsk_right, unrsk_right)):
        D, c = rsk(Q)
        assert c.is_valid() and c.start.is_identity()
        assert c.labels == [bl.k for bl in (reversed(Q) if rsk is rsk_left else Q)]
        assert perm_of(D) == c.end
        assert weight(D) == biword_weight(Q)
        assert unrsk(D, c) == Q


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.data())
def test_single_subscript_left_and_right_agree_on_permutation(k, data):
    Q = data.draw(st.lists(st.integers(1, k), max_size=5).map(lambda bs: Biword(Biletter(b, k) for b in bs)))
    assert rsk_left(Q)[1].end == rsk_right(Q)[1].end


def test_check_commutes_examples():
    assert check_commutes(identity_grid(1), (1, 2), (1, 1))
    found_false = False
    for pi in all_permutations(3):
        for D in enumerate_bpds(pi):
            for k in range(1, 4):
                for l in range(1, k + 1):
                    for x in range(1, k + 1):
                        for y in range(1, l + 1):
                            ok = check_commutes(D, (x, k), (y, l))
                            inside = pi.is_identity() or (l <= pi.d1 and k >= pi.d2)
                            if inside:
                                assert ok
                            found_false |= not ok
    assert found_false


def test_insertion_trace_invariants_s4():
    for pi in all_permutations(4):
        for D in enumerate_bpds(pi):
            for k in range(1, 6):
                for b in range(1, k + 1):
                    if pi.is_identity() or k >= pi.d2:
                        steps = []
                        left_insert(D, (b, k), trace=steps)
                        assert "2b" not in insertion_branches(steps)
                        assert not any(s.name.startswith("swap") for s in steps)
                    if pi.is_identity() or k <= pi.d1:
                        steps = []
                        right_insert(D, (b, k), trace=steps)
                        for s in steps:
                            if s.name.startswith("droop"):
                                assert s.dst[1] - s.src[1] == 1


def test_monk_bijection_s3():
    for pi in all_permutations(3):
        for k in (1, 2, 3):
            target = {render(trim(E)) for t in k_covers_up(pi, k) for E in enumerate_bpds(t)}
            for ins in (left_insert, right_insert):
                images = [render(ins(D, (a, k))) for D in enumerate_bpds(pi) for a in range(1, k + 1)]
                assert len(images) == len(set(images))
                assert set(images) == target


def test_trace_format():
    steps = []
    left_insert(G21, (1, 2), trace=steps)
    text = steps[0].to_text()
    assert text.startswith("STEP droop[1] (1,2) -> (3,3)\n")
    assert steps[-1].to_text().startswith("STEP term[3b] (3,3) -> -")
