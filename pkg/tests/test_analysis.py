import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixedcode.analysis import (ClosedFormParams, CodeParams, ColumnRelations, KIND_TABLE, WeightDistribution,
                                ab_minimality_sufficient, certify, closed_form_distribution,
                                dual_code, dual_distance_by_columns, griesmer_status, griesmer_sum,
                                is_minimal_exact, is_projective, is_self_orthogonal, macwilliams_transform,
                                min_distance, predicted_dimension, predicted_length, sphere_packing_holds,
                                sphere_packing_optimal, weight_distribution)
from mixedcode.complexes import SupportSet, valid_triples
from mixedcode.construct import FieldCode, RingCode, code_for_kind
from mixedcode.errors import TooLarge, ZeroCode
from mixedcode.galois import make_field

from oracles import RefField, ref_codewords, ref_distribution, ref_dual_distance


@st.composite
def small_codes(draw, max_k=4, max_n=9, qs=(2, 3, 4, 5)):
    q = draw(st.sampled_from(qs))
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    return q, rows


@settings(max_examples=80, deadline=None)
@given(small_codes())
def test_engines_match_enumeration(data):
    q, rows = data
    code = FieldCode(make_field(q), rows)
    expect = ref_distribution(RefField(q), rows)
    assert weight_distribution(code, method="gray") == expect
    assert weight_distribution(code, method="fourier") == expect
    assert weight_distribution(code, method="gray", threads=3) == expect


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_engines_agree_on_wider_codes(q):
    rng = np.random.default_rng(q)
    F = make_field(q)
    for _ in range(3):
        G = rng.integers(0, q, size=(4, 40))
        code = FieldCode(F, G)
        assert weight_distribution(code, method="gray") == weight_distribution(code, method="fourier")


@settings(max_examples=40, deadline=None)
@given(small_codes(max_k=3, max_n=6, qs=(2, 3, 4)), st.data())
def test_ring_code_metrics(data, d):
    q, A = data
    B = d.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=len(A[0]), max_size=len(A[0])),
                        min_size=len(A), max_size=len(A)))
    F, R = make_field(q), RefField(q)
    code = RingCode(F, np.array(A, dtype=np.uint8), np.array(B, dtype=np.uint8))
    words = code.codeword_set()
    ham = _count(sum(1 for s in w if s) for w in words)
    lee = _count(sum((s // q != 0) + (R.add(s % q, s // q) != 0) for s in w) for w in words)
    assert weight_distribution(code, "hamming") == ham
    assert weight_distribution(code, "lee") == lee


def _count(it):
    out = {}
    for w in it:
        out[w] = out.get(w, 0) + 1
    return WeightDistribution(out)


@settings(max_examples=60, deadline=None)
@given(small_codes(max_k=4, max_n=10, qs=(2, 3, 4)))
def test_macwilliams_matches_dual_enumeration(data):
    q, rows = data
    F = make_field(q)
    code = FieldCode(F, rows)
    if code.k == 0:
        return
    dual = dual_code(code)
    dist = weight_distribution(code)
    direct = weight_distribution(dual) if dual.k else WeightDistribution({0: 1})
    assert macwilliams_transform(dist, code.n, q) == direct


@settings(max_examples=60, deadline=None)
@given(small_codes(max_k=3, max_n=8, qs=(2, 3, 4)))
def test_dual_distance_against_subset_search(data):
    q, rows = data
    code = FieldCode(make_field(q), rows)
    if code.k == 0:
        return
    # the oracle searches the original rows; row reduction keeps column relations
    assert dual_distance_by_columns(code, 4) == ref_dual_distance(RefField(q), rows, 4)


def _ref_relation_exists(R, cols, j, r):
    """r nonzero helper columns with nonzero coefficients summing to column j."""
    others = [i for i in range(len(cols)) if i != j and any(cols[i])]
    for S in itertools.combinations(others, r):
        for coeffs in itertools.product(range(1, R.q), repeat=r):
            acc = [0] * len(cols[j])
            for c, i in zip(coeffs, S):
                acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, cols[i])]
            if acc == list(cols[j]):
                return True
    return False


@settings(max_examples=60, deadline=None)
@given(small_codes(max_k=3, max_n=7, qs=(2, 3)), st.integers(1, 4))
def test_column_relation_search(data, r):
    q, rows = data
    F, R = make_field(q), RefField(q)
    G = np.array(rows, dtype=np.uint8)
    cols = G.T.tolist()
    rel = ColumnRelations(F, G)
    for j in range(len(cols)):
        if not any(cols[j]):
            continue
        found = rel.relation(j, r)
        if found is None:
            assert not _ref_relation_exists(R, cols, j, r)
            continue
        assert j not in found and len(set(found)) == r
        coeffs = rel.coefficients(j, found)
        assert coeffs is not None
        acc = [0] * len(cols[j])
        for c, i in zip(coeffs, found):
            acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, cols[i])]
        assert acc == cols[j]


def _ref_minimal(R, rows):
    words = [w for w in ref_codewords(R, rows) if any(w)]
    supp = {w: frozenset(i for i, x in enumerate(w) if x) for w in words}
    for a in words:
        for b in words:
            if supp[b] <= supp[a]:
                # b must be a scalar multiple of a
                if not any(tuple(R.mul(c, x) for x in a) == b for c in range(1, R.q)):
                    return False
    return True


@settings(max_examples=50, deadline=None)
@given(small_codes(max_k=3, max_n=6, qs=(2, 3, 4)))
def test_minimality_against_enumeration(data):
    q, rows = data
    code = FieldCode(make_field(q), rows)
    assert is_minimal_exact(code) == _ref_minimal(RefField(q), rows)
    dist = weight_distribution(code)
    if dist.t and ab_minimality_sufficient(dist, q):
        assert is_minimal_exact(code)


def test_minimality_budget():
    code = FieldCode(make_field(2), np.eye(20, dtype=int))
    with pytest.raises(TooLarge):
        is_minimal_exact(code, budget=2**10)


def test_zero_code():
    with pytest.raises(ZeroCode):
        min_distance(FieldCode(make_field(2), [[0, 0, 0]]))


def test_griesmer_values():
    assert griesmer_sum(6, 5760, 4) == 7679
    assert griesmer_status(CodeParams(7680, 6, 5760), 4).verdict == "near_griesmer_distance_optimal"
    assert griesmer_status(CodeParams(9, 1, 9), 3).verdict == "griesmer"
    assert griesmer_sum(4, 2, 2) == 5
    assert griesmer_status(CodeParams(8, 4, 2), 2).verdict == "none"
    cert = griesmer_status(CodeParams(7680, 6, 5760), 4)
    assert cert.reproduce() == cert


def _ref_spb(n, k, d, q):
    t = (d - 1) // 2
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1)) <= q ** (n - k)


def test_sphere_packing_values():
    # optimal means (n, k, d) meets the bound and (n, k, d + 1) does not
    for n, k, d, q in [(7, 4, 3, 2), (4, 2, 2, 2), (16, 9, 4, 2), (64, 56, 4, 2), (13, 10, 3, 3)]:
        assert sphere_packing_holds(n, k, d, q) == _ref_spb(n, k, d, q)
        assert sphere_packing_optimal(CodeParams(n, k, d), q) == (_ref_spb(n, k, d, q) and not _ref_spb(n, k, d + 1, q))
    # distance-4 binary family [2^s, 2^s - 2m - |C|, 4]
    for m, b, c in [(2, 1, 1), (3, 1, 1), (3, 2, 1)]:
        s = m + b + c
        assert sphere_packing_optimal(CodeParams(2**s, 2**s - 2 * m - c, 4), 2)
    # [7,4,4] still meets the bound since floor(3/2) = 1
    assert not sphere_packing_optimal(CodeParams(7, 4, 3), 2)
    assert sphere_packing_optimal(CodeParams(4, 2, 2), 2)


def test_self_orthogonality():
    F = make_field(2)
    assert is_self_orthogonal(FieldCode(F, [[1, 1, 0, 0], [0, 0, 1, 1]]))
    assert not is_self_orthogonal(FieldCode(F, [[1, 0, 0, 0]]))


def test_distribution_serialization():
    d = WeightDistribution({0: 1, 3: 4, 5: 0})
    assert d.pairs == {0: 1, 3: 4}
    assert WeightDistribution.from_json(d.to_json()) == d
    assert WeightDistribution.from_csv(d.to_csv()) == d
    assert d.enumerator() == "1 + 4Z^3"


SMALL = [(k, q, m) for k in ("S1", "S2", "S3", "S4") for q in (2, 3) for m in (2,)]


@pytest.mark.parametrize("kind,q,m", SMALL)
def test_closed_forms_small(kind, q, m):
    for A, B, C in valid_triples(kind, m, q):
        code = code_for_kind(kind, q, m, A, B, C)
        measured = weight_distribution(code)
        assert closed_form_distribution(ClosedFormParams.of(KIND_TABLE[kind], q, m, A, B, C)) == measured
        assert code.n == predicted_length(kind, q, m, A, B, C)
        assert code.k == predicted_dimension(kind, q, m, A, B, C)


@pytest.mark.parametrize("kind,q", [("N2bar", 2), ("N2bar", 3), ("N4bar", 2), ("N4bar", 3)])
def test_projective_closed_forms(kind, q):
    m = 3
    for A, B, C in list(valid_triples(kind, m, q))[::7]:
        code = code_for_kind(kind, q, m, A, B, C)
        assert weight_distribution(code) == closed_form_distribution(ClosedFormParams.of(KIND_TABLE[kind], q, m, A, B, C))
        assert is_projective(code)
        assert code.k == predicted_dimension(kind, q, m, A, B, C)


def test_eta_term_as_printed_disagrees_for_odd_q():
    q, m = 3, 2
    A, B, C = SupportSet(m, {1}), SupportSet(m, {2}), SupportSet(m, {1})
    measured = weight_distribution(code_for_kind("S2", q, m, A, B, C))
    assert measured[72] == 228 and measured[90] == 8
    assert closed_form_distribution(ClosedFormParams.of("T2", q, m, A, B, C)) == measured
    printed = closed_form_distribution(ClosedFormParams.of("T2", q, m, A, B, C, printed=True))
    assert printed != measured
    # for even q both readings coincide
    code = code_for_kind("S2", 2, m, A, B, C)
    assert closed_form_distribution(ClosedFormParams.of("T2", 2, m, A, B, C, printed=True)) == weight_distribution(code)


def test_certificate_bundle():
    code = code_for_kind("S3", 2, 2, {1}, {2}, {1})
    bundle = certify(code)
    js = bundle.to_json()
    assert js["params"]["n"] == code.n and js["minimal"] is True
    assert bundle.griesmer.verdict in ("griesmer", "near_griesmer", "near_griesmer_distance_optimal", "none")
