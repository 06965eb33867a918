import pytest
from hypothesis import given, settings, strategies as st

from qfposet import QFSequence, Rep, add_reps, complement, enumerate_partitions, eta, partition_counts, sub_reps, tau
from qfposet.errors import IndexBelowRange, LengthExceedsK, SupportNotContained, SupportOverlap
from qfposet.partitions import EMPTY, _enumerate_python, enumerate_masks

from oracles import product_coeffs, subsets_summing_to, terms

SEQS = [(2, [1, 2]), (2, [1, 3]), (3, [1, 2, 4]), (4, [1, 2, 4, 8]), (2, [2, 3])]


def test_enumeration_examples(fib, luc):
    assert [r.bitstring() for r in enumerate_partitions(fib, 12)] == ["10101"]
    assert [r.bitstring() for r in enumerate_partitions(fib, 3)] == ["001", "11"]
    assert not enumerate_partitions(luc, 2)
    with pytest.raises(ValueError):
        enumerate_partitions(fib, 0)


@pytest.mark.parametrize("level,seeds", SEQS)
def test_enumeration_matches_subsets(level, seeds):
    seq = QFSequence(level, seeds)
    a = terms(level, seeds, 20)
    for n in range(1, 250):
        expected = {sum(1 << i for i in c) for c in subsets_summing_to(a, n)}
        got = enumerate_masks(seq, n)
        assert set(got) == expected
        assert got == sorted(got, reverse=True)


@pytest.mark.parametrize("level,seeds", SEQS)
def test_counts_match_product(level, seeds):
    seq = QFSequence(level, seeds)
    a = terms(level, seeds, 40)
    assert [int(c) for c in partition_counts(seq, 600)] == product_coeffs(a, 600, 1)


def test_python_fallback_matches_kernel(fib):
    k = fib.largest_index_leq(5000)
    t = [fib.term(i) for i in range(1, k + 1)]
    p = [fib.gamma(i) for i in range(k + 1)]
    for n in (5000, 4181, 1000, 777):
        assert sorted(_enumerate_python(t, p, n)) == sorted(enumerate_masks(fib, n))


def test_long_sequence_uses_python_ints():
    seq = QFSequence(2, [1, 2])
    n = seq.term(70) + seq.term(3)
    reps = enumerate_partitions(seq, n)
    assert all(r.value(seq) == n for r in reps)
    assert Rep.from_indices([70, 3]) in reps


def test_rep_rendering(fib):
    r = Rep.from_bits((1, 0, 1, 0, 1))
    assert r.bitstring() == "10101"
    assert r.render_parts(fib) == "1+3+8"
    assert r.value(fib) == 12
    assert r.length() == 5 and r.ones() == 3 and r.sign() == -1
    assert Rep.from_string("10101") == r
    assert EMPTY.render_parts(fib) == "0" and EMPTY.sign() == 1


def test_tau_eta(fib, tri):
    assert tau(3).bits == (0, 0, 1)
    assert tau(1).bits == (1,)
    assert tau(5).value(fib) == 8
    assert eta(fib, 5).bits == (0, 0, 1, 1) and eta(fib, 5).value(fib) == 8
    assert eta(tri, 4).bits == (1, 1, 1) and eta(tri, 4).value(tri) == 7
    with pytest.raises(IndexBelowRange):
        eta(fib, 2)
    with pytest.raises(IndexBelowRange):
        tau(0)


def test_add_sub():
    a = Rep.from_bits((1, 0, 1))
    b = Rep.from_bits((0, 1))
    assert add_reps(a, b).bits == (1, 1, 1)
    assert sub_reps(Rep.from_bits((1, 1, 1)), b).bits == (1, 0, 1)
    with pytest.raises(SupportOverlap) as err:
        add_reps(Rep.from_bits((1, 1)), b)
    assert err.value.position == 2
    with pytest.raises(SupportNotContained):
        sub_reps(b, a)


def test_complement_examples():
    assert complement(Rep.from_bits((0, 0, 1)), 3).bits == (1, 1)
    assert complement(Rep.from_bits((1, 1)), 3).bits == (0, 0, 1)
    assert complement(Rep.from_bits((1, 0, 1)), 5).bits == (0, 1, 0, 1, 1)
    with pytest.raises(LengthExceedsK):
        complement(Rep.from_bits((0, 0, 0, 1)), 3)


masks = st.integers(0, 2**40 - 1)


@given(masks, st.integers(40, 45))
def test_complement_involution(m, k):
    a = Rep(m)
    assert complement(complement(a, k), k) == a


@given(masks, masks)
def test_sign_multiplicative(x, y):
    a, b = Rep(x & ~y), Rep(y)
    assert add_reps(a, b).sign() == a.sign() * b.sign()
    assert sub_reps(add_reps(a, b), b) == a


@settings(max_examples=50)
@given(st.lists(st.integers(1, 30), unique=True, max_size=10))
def test_value_is_sum_of_parts(indices):
    seq = QFSequence(3, [1, 2, 4])
    r = Rep.from_indices(indices)
    assert r.value(seq) == sum(seq.term(i) for i in indices)
    assert r.indices() == sorted(indices)
