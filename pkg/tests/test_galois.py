import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixedcode.errors import DivisionByZero, NonPrimePower, OutOfRange, TooLarge
from mixedcode.galois import (field_arithmetic, gray_word, kernel_basis, make_field, rank, rref,
                              row_basis, row_space_enumerate, span_table, support, hamming_weight)

from oracles import RefField, ref_codewords, ref_in_span

QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", QS)
def test_tables_match_polynomial_reference(q):
    F, R = make_field(q), RefField(q)
    for a in range(q):
        assert F.neg_table[a] == R.neg(a)
        for b in range(q):
            assert F.add_table[a, b] == R.add(a, b)
            assert F.mul_table[a, b] == R.mul(a, b)
            assert F.sub_table[a, b] == R.sub(a, b)
        if a:
            assert F.inv_table[a] == R.inv(a)


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    F = make_field(q)
    E = range(q)
    for a, b, c in itertools.product(E, E, E):
        assert F.mul_table[a, F.add_table[b, c]] == F.add_table[F.mul_table[a, b], F.mul_table[a, c]]
        assert F.add_table[F.add_table[a, b], c] == F.add_table[a, F.add_table[b, c]]
        assert F.mul_table[F.mul_table[a, b], c] == F.mul_table[a, F.mul_table[b, c]]
    assert (F.add_table == F.add_table.T).all() and (F.mul_table == F.mul_table.T).all()


@pytest.mark.parametrize("q", QS)
def test_exp_log_cycle(q):
    F = make_field(q)
    seen = {int(F.exp_table[i]) for i in range(q - 1)}
    assert seen == set(range(1, q))
    for a in range(1, q):
        assert F.exp_table[F.log_table[a]] == a


def test_gf4_modulus_and_bad_orders():
    assert make_field(4).modulus == (1, 1, 1)
    for q in (6, 10, 12):
        with pytest.raises(NonPrimePower):
            make_field(q)
    with pytest.raises(OutOfRange):
        make_field(1)


def test_scalar_dispatch_errors():
    F = make_field(5)
    assert field_arithmetic(F, 3, 4, "mul") == 2
    assert field_arithmetic(F, 3, None, "inv") == 2
    with pytest.raises(DivisionByZero):
        field_arithmetic(F, 0, None, "inv")
    with pytest.raises(DivisionByZero):
        field_arithmetic(F, 1, 0, "div")
    with pytest.raises(OutOfRange):
        field_arithmetic(F, 5, 1, "add")


def test_support_is_one_indexed():
    assert support([0, 3, 0, 1]) == (2, 4)
    assert hamming_weight([0, 3, 0, 1]) == 2


@st.composite
def matrices(draw, max_rows=4, max_cols=6):
    q = draw(st.sampled_from([2, 3, 4, 5]))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return q, rows


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_rank_kernel_against_enumeration(data):
    q, rows = data
    F, R = make_field(q), RefField(q)
    words = ref_codewords(R, rows)
    k = rank(F, rows)
    assert q**k == len(words)
    B = row_basis(F, rows)
    assert {tuple(int(x) for x in w) for w in _span(F, B)} == words
    Rm, piv = rref(F, rows)
    for i, c in enumerate(piv):
        assert Rm[i, c] == 1 and np.count_nonzero(Rm[:, c]) == 1
    K = kernel_basis(F, rows)
    assert K.shape[0] == len(rows[0]) - k
    if K.size:
        assert not F.matmul(np.array(rows, dtype=np.uint8), K.T).any()
        assert rank(F, K) == K.shape[0]


def _span(F, B):
    return span_table(F, B) if len(B) else np.zeros((1, B.shape[1]), np.uint8)


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=3, max_cols=4), st.data())
def test_span_membership_oracle(data, d):
    q, rows = data
    F, R = make_field(q), RefField(q)
    target = d.draw(st.lists(st.integers(0, q - 1), min_size=len(rows[0]), max_size=len(rows[0])))
    stacked = np.array(rows + [target], dtype=np.uint8)
    assert (rank(F, stacked) == rank(F, rows)) == ref_in_span(R, target, rows)


@pytest.mark.parametrize("q,k", [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_gray_sequence_visits_every_word_once_with_single_digit_steps(q, k):
    words = [tuple(gray_word(s, k, q)) for s in range(q**k)]
    assert len(set(words)) == q**k
    for a, b in zip(words, words[1:]):
        assert sum(x != y for x, y in zip(a, b)) == 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_row_space_enumerate_matches_reference(q):
    F, R = make_field(q), RefField(q)
    rng = np.random.default_rng(q)
    G = rng.integers(0, q, size=(3, 5))
    seen = []
    count = row_space_enumerate(F, G, lambda v: seen.append(tuple(int(x) for x in v)))
    assert count == len(seen) == len(set(seen))
    assert set(seen) == ref_codewords(R, G.tolist())


def test_row_space_enumerate_budget():
    F = make_field(3)
    with pytest.raises(TooLarge):
        row_space_enumerate(F, np.eye(5, dtype=int), lambda v: None, budget=100)
