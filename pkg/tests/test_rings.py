import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixedcode.errors import LengthMismatch
from mixedcode.galois import make_field
from mixedcode.rings import (MixedVector, QGRElement, QGRVector, gray_map, gray_map_arrays, lee_weight,
                             mixed_inner_product, qgr_arithmetic, qgr_dot)

from oracles import RefField


def _ring(q):
    return [QGRElement(a, b) for a in range(q) for b in range(q)]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_chain_ring_against_pair_reference(q):
    F, R = make_field(q), RefField(q)
    for x, y in itertools.product(_ring(q), repeat=2):
        s = qgr_arithmetic(F, x, y, "add")
        assert (s.a, s.b) == (R.add(x.a, y.a), R.add(x.b, y.b))
        p = qgr_arithmetic(F, x, y, "mul")
        # (a + ub)(c + ud) = ac + u(ad + bc)
        assert (p.a, p.b) == (R.mul(x.a, y.a), R.add(R.mul(x.a, y.b), R.mul(x.b, y.a)))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_chain_ring_structure(q):
    F = make_field(q)
    u = QGRElement(0, 1)
    assert qgr_arithmetic(F, u, u, "mul") == QGRElement(0, 0)
    one = QGRElement(1, 0)
    units = [x for x in _ring(q) if any(qgr_arithmetic(F, x, y, "mul") == one for y in _ring(q))]
    assert len(units) == q * (q - 1)
    assert all(x.is_unit() for x in units)
    for x, y, z in itertools.product(_ring(q), repeat=3):
        lhs = qgr_arithmetic(F, x, qgr_arithmetic(F, y, z, "add"), "mul")
        rhs = qgr_arithmetic(F, qgr_arithmetic(F, x, y, "mul"), qgr_arithmetic(F, x, z, "mul"), "add")
        assert lhs == rhs


def test_element_encoding_roundtrip():
    for q in (3, 4):
        for x in _ring(q):
            assert QGRElement.decode(x.encode(q), q) == x


def _gray_oracle(R, a, b):
    # image of a + ub is (b, a + b)
    return (b, R.add(a, b))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gray_map_elementwise(q):
    F, R = make_field(q), RefField(q)
    d = np.array([x.a for x in _ring(q)])
    e = np.array([x.b for x in _ring(q)])
    img = gray_map(F, QGRVector.of(d, e))
    n = len(d)
    for i in range(n):
        assert (img[i], img[n + i]) == _gray_oracle(R, int(d[i]), int(e[i]))
    # bijective on R
    assert len({(int(img[i]), int(img[n + i])) for i in range(n)}) == q * q


@st.composite
def qgr_pairs(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 7]))
    n = draw(st.integers(1, 8))
    vec = lambda: draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    return q, [QGRVector.of(vec(), vec()) for _ in range(2)], QGRElement(draw(st.integers(0, q - 1)), draw(st.integers(0, q - 1)))


@settings(max_examples=100, deadline=None)
@given(qgr_pairs())
def test_gray_isometry_and_linearity(data):
    q, (x, y), s = data
    F = make_field(q)
    gx, gy = gray_map(F, x), gray_map(F, y)
    assert np.array_equal(gray_map(F, x.add(F, y)), F.add(gx, gy))
    diff = x.add(F, y.scale(F, QGRElement(int(F.neg(1)), 0)))
    assert lee_weight(F, diff) == int(np.count_nonzero(F.sub(gx, gy)))
    assert lee_weight(F, x) == int(np.count_nonzero(gx))
    # scalars of F_q commute with the map
    c = s.a
    assert np.array_equal(gray_map(F, x.scale(F, QGRElement(c, 0))), F.mul(c, gx))


@settings(max_examples=60, deadline=None)
@given(qgr_pairs())
def test_qgr_dot_bilinear(data):
    q, (x, y), s = data
    F = make_field(q)
    sx = x.scale(F, s)
    lhs = qgr_dot(F, sx, y)
    rhs = qgr_arithmetic(F, s, qgr_dot(F, x, y), "mul")
    assert lhs == rhs
    assert qgr_dot(F, x, y) == qgr_dot(F, y, x)


def test_mixed_inner_product_definition():
    F = make_field(3)
    r = MixedVector.of([1, 2], [0, 1], [2, 2])
    s = MixedVector.of([2, 2], [1, 0], [1, 1])
    # ring part: (1,2).(2,2) = 6 = 0; nilpotent part: (1,2).(1,0) + (0,1).(2,2) + (2,2).(1,1) = 1 + 2 + 4 = 7 = 1
    assert mixed_inner_product(F, r, s) == QGRElement(0, 1)


def test_length_mismatch():
    F = make_field(2)
    with pytest.raises(LengthMismatch):
        QGRVector.of([0, 1], [1])
    with pytest.raises(LengthMismatch):
        qgr_dot(F, QGRVector.of([1]), QGRVector.of([1, 0]))
    with pytest.raises(LengthMismatch):
        MixedVector.of([1], [0, 0], [1])


def test_gray_map_arrays_matches_scalar_path():
    F = make_field(4)
    rng = np.random.default_rng(0)
    d, e = rng.integers(0, 4, (5, 6)), rng.integers(0, 4, (5, 6))
    stacked = gray_map_arrays(F, d, e)
    for i in range(5):
        assert np.array_equal(stacked[i], gray_map(F, QGRVector.of(d[i], e[i])))
