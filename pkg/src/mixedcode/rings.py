"""The chain ring F_q[u]/(u^2) and the mixed ring F_q[u]/(u^2) x F_q.

A ring element a + u*b is carried as the pair (a, b). Vectors are carried as
two parallel field vectors so that blockwise maps need no copying.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch
from .galois import DTYPE, FieldSpec


@dataclass(frozen=True)
class QGRElement:
    a: int
    b: int = 0

    def encode(self, q: int) -> int:
        return self.a + q * self.b

    @classmethod
    def decode(cls, x: int, q: int) -> "QGRElement":
        return cls(x % q, x // q)

    def is_unit(self) -> bool:
        return self.a != 0


def qgr_arithmetic(F: FieldSpec, x: QGRElement, y: QGRElement, op: str) -> QGRElement:
    if op == "add":
        return QGRElement(int(F.add(x.a, y.a)), int(F.add(x.b, y.b)))
    if op == "sub":
        return QGRElement(int(F.sub(x.a, y.a)), int(F.sub(x.b, y.b)))
    if op == "mul":
        # u^2 = 0
        return QGRElement(int(F.mul(x.a, y.a)), int(F.add(F.mul(x.a, y.b), F.mul(x.b, y.a))))
    raise ValueError(f"unknown ring operation {op!r}")


@dataclass(frozen=True, eq=False)
class QGRVector:
    """d + u*e with d, e field vectors of equal length."""

    d: np.ndarray
    e: np.ndarray

    def __post_init__(self):
        if np.shape(self.d) != np.shape(self.e):
            raise LengthMismatch("unit and nilpotent parts differ in length")

    def __len__(self) -> int:
        return len(self.d)

    def __eq__(self, other) -> bool:
        return isinstance(other, QGRVector) and np.array_equal(self.d, other.d) and np.array_equal(self.e, other.e)

    def __hash__(self) -> int:
        return hash((np.asarray(self.d).tobytes(), np.asarray(self.e).tobytes()))

    @classmethod
    def of(cls, d, e=None) -> "QGRVector":
        d = np.asarray(d, dtype=DTYPE)
        e = np.zeros_like(d) if e is None else np.asarray(e, dtype=DTYPE)
        return cls(d, e)

    def encode(self, q: int) -> np.ndarray:
        return self.d.astype(np.int64) + q * self.e.astype(np.int64)

    def add(self, F: FieldSpec, other: "QGRVector") -> "QGRVector":
        return QGRVector(F.add(self.d, other.d), F.add(self.e, other.e))

    def scale(self, F: FieldSpec, s: QGRElement) -> "QGRVector":
        return QGRVector(F.mul(s.a, self.d), F.add(F.mul(s.a, self.e), F.mul(s.b, self.d)))


@dataclass(frozen=True, eq=False)
class MixedVector:
    """(w1 + u*w2, w3) in R^m, stored as three field vectors."""

    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray

    def __post_init__(self):
        if not np.shape(self.w1) == np.shape(self.w2) == np.shape(self.w3):
            raise LengthMismatch("mixed vector blocks differ in length")

    def __len__(self) -> int:
        return len(self.w1)

    @classmethod
    def of(cls, w1, w2, w3) -> "MixedVector":
        return cls(*(np.asarray(w, dtype=DTYPE) for w in (w1, w2, w3)))

    def key(self) -> tuple:
        return tuple(self.w1.tolist()), tuple(self.w2.tolist()), tuple(self.w3.tolist())

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedVector) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def add(self, F: FieldSpec, other: "MixedVector") -> "MixedVector":
        return MixedVector(F.add(self.w1, other.w1), F.add(self.w2, other.w2), F.add(self.w3, other.w3))

    def scale(self, F: FieldSpec, s: QGRElement) -> "MixedVector":
        # the ring acts on the field block through its residue: (a + ub) z = a z
        return MixedVector(F.mul(s.a, self.w1),
                           F.add(F.mul(s.a, self.w2), F.mul(s.b, self.w1)),
                           F.mul(s.a, self.w3))


def qgr_dot(F: FieldSpec, x: QGRVector, y: QGRVector) -> QGRElement:
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    a = F.dot(x.d, y.d)
    b = int(F.add(F.dot(x.d, y.e), F.dot(x.e, y.d)))
    return QGRElement(a, b)


def mixed_inner_product(F: FieldSpec, r: MixedVector, s: MixedVector) -> QGRElement:
    """<(d1+ue1, f1), (d2+ue2, f2)> = (d1+ue1).(d2+ue2) + u (f1.f2)."""
    if len(r) != len(s):
        raise LengthMismatch(f"lengths {len(r)} and {len(s)} differ")
    ring = qgr_dot(F, QGRVector(r.w1, r.w2), QGRVector(s.w1, s.w2))
    return QGRElement(ring.a, int(F.add(ring.b, F.dot(r.w3, s.w3))))


def gray_map(F: FieldSpec, v: QGRVector) -> np.ndarray:
    """d + u e  ->  (e, d + e)."""
    return np.concatenate([np.asarray(v.e, dtype=DTYPE), F.add(v.d, v.e)])


def gray_map_arrays(F: FieldSpec, d, e) -> np.ndarray:
    """Gray map applied along the last axis of stacked (d, e) arrays."""
    d = np.asarray(d, dtype=DTYPE)
    e = np.asarray(e, dtype=DTYPE)
    return np.concatenate([e, F.add(d, e)], axis=-1)


def lee_weight(F: FieldSpec, v: QGRVector) -> int:
    return int(np.count_nonzero(v.e) + np.count_nonzero(F.add(v.d, v.e)))
