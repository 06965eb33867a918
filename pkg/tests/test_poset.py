import pytest
from hypothesis import given, settings, strategies as st

from qfposet import (
    QFSequence,
    RecursionCase,
    Rep,
    build_poset,
    dual_check,
    glue,
    is_lattice,
    is_leq,
    is_modular,
    join,
    max_element,
    meet,
    min_element,
    recursion_case,
    shift_poset,
    split_UD,
    tau,
    to_dot,
    verify_recursion,
)
from qfposet.errors import BaseCase, BridgeNotCover, EmptyPoset, NotALattice, NotDisjoint
from qfposet.partitions import add_reps, eta
from qfposet.poset import make_poset, natural_poset

from oracles import closure, hasse, is_local_move

SEQS = [(2, [1, 2]), (2, [1, 3]), (3, [1, 2, 4]), (4, [1, 2, 4, 8])]


def R(s):
    return Rep.from_string(s)


def bits(p):
    return [v.bitstring() for v in p.vertices]


def test_build_examples(fib, luc):
    p3 = build_poset(fib, 3)
    assert bits(p3) == ["001", "11"]
    assert p3.edges == ((R("001"), R("11")),)
    p4 = build_poset(fib, 4)
    assert bits(p4) == ["101"] and p4.edges == ()
    assert len(build_poset(luc, 2)) == 0


def test_is_leq(fib):
    p3 = build_poset(fib, 3)
    assert is_leq(p3, R("11"), R("001"))
    assert not is_leq(p3, R("001"), R("11"))
    assert is_leq(p3, R("001"), R("001"))


def test_extremes(fib):
    p3 = build_poset(fib, 3)
    assert max_element(p3) == R("001") and min_element(p3) == R("11")
    p4 = build_poset(fib, 4)
    assert max_element(p4) == min_element(p4) == R("101")
    p12 = build_poset(fib, 12)
    assert max_element(p12) == min_element(p12) == R("10101")
    with pytest.raises(EmptyPoset):
        max_element(build_poset(QFSequence(2, [1, 3]), 2))


def test_split(fib, luc):
    U, D = split_UD(build_poset(fib, 3))
    assert bits(U) == ["001"] and bits(D) == ["11"]
    U, D = split_UD(build_poset(fib, 4))
    assert bits(U) == ["101"] and len(D) == 0
    U, D = split_UD(build_poset(luc, 2))
    assert len(U) == len(D) == 0


@pytest.mark.parametrize("level,seeds", SEQS)
def test_edges_and_order_match_oracle(level, seeds):
    seq = QFSequence(level, seeds)
    for n in range(1, 160):
        p = build_poset(seq, n)
        verts = list(p.vertices)
        expected = {(a, b) for a in verts for b in verts if is_local_move(a.bits, b.bits, level)}
        assert set(p.edges) == expected
        below = closure(verts, expected)
        for a in verts:
            for b in verts:
                assert p.leq(b, a) == (b in below[a])
        cover = {(verts[x], verts[y]) for x in range(len(verts)) for y in range(len(verts)) if p.cover[x, y]}
        assert cover == hasse(verts, below) == expected


def test_meet_join(fib):
    p3 = build_poset(fib, 3)
    assert meet(p3, R("001"), R("11")) == R("11")
    assert join(p3, R("001"), R("11")) == R("001")
    assert is_modular(build_poset(fib, 4))


def test_not_a_lattice():
    bow = make_poset(2, [Rep(8), Rep(4), Rep(2), Rep(1)], [(Rep(8), Rep(2)), (Rep(8), Rep(1)), (Rep(4), Rep(2)), (Rep(4), Rep(1))])
    assert not is_lattice(bow) and not is_modular(bow)
    with pytest.raises(NotALattice):
        meet(bow, Rep(8), Rep(4))


@pytest.mark.parametrize("level,seeds", SEQS)
def test_lattices_small(level, seeds):
    seq = QFSequence(level, seeds)
    for n in range(1, 300):
        p = build_poset(seq, n)
        U, D = split_UD(p)
        for q in (p, U, D):
            assert is_lattice(q) and is_modular(q)


def test_dual_examples(fib):
    rep = dual_check(fib, 3)
    assert rep.ok and rep.notes["n_dual"] == 3
    rep = dual_check(fib, 8)
    assert rep.ok and rep.notes["n_dual"] == 11
    assert len(build_poset(fib, 8)) == len(build_poset(fib, 11))
    rep = dual_check(fib, 4)
    assert rep.ok and rep.notes["n_dual"] == 2


def test_dual_lucas_beyond_gamma(luc):
    # n = 2 has k = 1 and gamma_1 = 1, so its dual index is -1
    rep = dual_check(luc, 2)
    assert rep.ok and rep.notes["n_dual"] == -1
    for n in range(1, 200):
        assert dual_check(luc, n).ok, n


def test_shift(fib):
    p = shift_poset(build_poset(fib, 3), tau(5))
    assert bits(p) == ["00101", "11001"]
    assert len(p.edges) == 1
    assert len(shift_poset(build_poset(QFSequence(2, [1, 3]), 2), tau(3))) == 0
    single = natural_poset(2, [R("1")])
    assert bits(shift_poset(single, tau(3))) == ["101"]


def test_glue(fib):
    p3 = build_poset(fib, 3)
    U, D = split_UD(p3)
    g = glue(U, D, {R("001"): R("11")})
    assert g.valid and g.combined.same_as(p3)
    empty = natural_poset(2, [])
    g = glue(p3, empty, {})
    assert g.valid and g.combined.same_as(p3)
    with pytest.raises(BridgeNotCover):
        glue(natural_poset(2, [R("01")]), natural_poset(2, [R("11")]), {R("01"): R("11")})
    with pytest.raises(NotDisjoint):
        glue(p3, U, {})


def test_recursion_cases(fib):
    assert recursion_case(fib, 12) is RecursionCase.BRIDGED
    assert recursion_case(fib, 8) is RecursionCase.DUAL
    assert recursion_case(fib, 10) is RecursionCase.DOUBLED
    # 10 < 11 <= 12 = A_{5,2}, so 11 is bridged like 12
    assert recursion_case(fib, 11) is RecursionCase.BRIDGED
    assert recursion_case(QFSequence(3, [1, 2, 4]), 9) is RecursionCase.SHIFTED
    with pytest.raises(BaseCase):
        recursion_case(fib, 2)


def test_verify_recursion_examples(fib):
    rep = verify_recursion(fib, 11)
    assert rep.ok and rep.notes["case"] == "bridged"
    assert bits(build_poset(fib, 11)) == ["00101", "11001", "1111"]
    tri = QFSequence(3, [1, 2, 4])
    rep = verify_recursion(tri, 9)
    assert rep.ok and rep.notes["case"] == "shifted"
    assert bits(build_poset(tri, 9)) == ["0101"]
    rep = verify_recursion(fib, 12)
    assert rep.ok and bits(build_poset(fib, 12)) == ["10101"]
    rep = verify_recursion(fib, 10)
    assert rep.ok and rep.checks["bridge_covers"]
    assert bits(build_poset(fib, 10)) == ["01001", "0111"]


@pytest.mark.parametrize("level,seeds", SEQS)
def test_verify_recursion_small(level, seeds):
    seq = QFSequence(level, seeds)
    for n in range(seq.term(level + 1), 400):
        rep = verify_recursion(seq, n)
        assert rep.ok, (n, rep.failed(), rep.notes)


def test_shifted_case_has_no_lower_part(tri):
    # in the shifted interval every member keeps A_k, so D_n is empty even
    # when D_{n - A_k} is not
    n = 20
    assert recursion_case(tri, n) is RecursionCase.SHIFTED
    m = n - tri.term(tri.largest_index_leq(n))
    assert m == 7
    assert len(split_UD(build_poset(tri, n))[1]) == 0
    assert len(split_UD(build_poset(tri, m))[1]) == 1


def test_sign_algebra(fib, tri):
    for seq in (fib, tri):
        for n in range(1, 120):
            p = build_poset(seq, n)
            if not p:
                continue
            k = seq.largest_index_leq(n)
            shift = tau(k + 2)
            assert sum(shift_poset(p, shift).signs()) == sum(p.signs()) * shift.sign()
            U, D = split_UD(p)
            assert sum(p.signs()) == sum(U.signs()) + sum(D.signs())
    m = 2
    left = shift_poset(build_poset(fib, m), tau(5))
    right = shift_poset(build_poset(fib, m), eta(fib, 5))
    bridge = {add_reps(a, tau(5)): add_reps(a, eta(fib, 5)) for a in build_poset(fib, m).vertices}
    g = glue(left, right, bridge)
    assert sum(g.combined.signs()) == sum(left.signs()) + sum(right.signs())


def test_dot(fib):
    assert to_dot(build_poset(fib, 3), fib) == (
        "digraph P_3 {\n"
        '  "001" [label="3", sign="-1"];\n'
        '  "11" [label="1+2", sign="+1"];\n'
        '  "001" -> "11";\n'
        "}\n"
    )


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3000))
def test_extremes_characterised(n):
    seq = QFSequence(2, [1, 2])
    p = build_poset(seq, n)
    top, bottom = max_element(p), min_element(p)
    assert top.length() == seq.largest_index_leq(n)
    assert "11" not in top.bitstring() and "00" not in bottom.bitstring()
