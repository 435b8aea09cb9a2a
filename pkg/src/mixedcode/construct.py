"""Codes from defining sets: direct evaluation, ring and Gray spanning matrices,
the column multisets of the Gray images and their projective reductions."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import TextIO

import numpy as np

from .complexes import (RANGES, DefiningSet, SupportSet, check_side_conditions,
                        enumerate_complex)
from .errors import InternalError, TooLarge
from .galois import (DEFAULT_BUDGET, DTYPE, FieldSpec, as_matrix, make_field,
                     row_basis, row_space_enumerate)
from .rings import gray_map_arrays


@dataclass(eq=False)
class FieldCode:
    """Linear code over GF(q) given by a spanning matrix (rows need not be independent)."""

    F: FieldSpec
    G: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.G = as_matrix(self.G, self.F)

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @cached_property
    def basis(self) -> np.ndarray:
        return row_basis(self.F, self.G)

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def dimension(self) -> int:
        return self.k

    def encode(self, message) -> np.ndarray:
        return self.F.matmul(np.asarray(message, dtype=DTYPE), self.basis)

    def codewords(self, budget: int | None = None) -> np.ndarray:
        """All codewords as a (q^k, n) array; the small-instance path."""
        out = []
        row_space_enumerate(self.F, self.basis, lambda v: out.append(v.copy()), budget)
        return np.array(out, dtype=DTYPE).reshape(len(out), self.n)

    def codeword_set(self, budget: int | None = None) -> set[bytes]:
        return {c.tobytes() for c in self.codewords(budget)}

    def __repr__(self) -> str:
        return f"FieldCode({self.label or 'code'}, q={self.F.q}, n={self.n}, k={self.k})"


@dataclass(eq=False)
class RingCode:
    """Code over F_q[u]/(u^2) spanned by the rows of A + uB."""

    F: FieldSpec
    A: np.ndarray
    B: np.ndarray
    label: str = ""

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def rows(self) -> int:
        return self.A.shape[0]

    def field_generators(self) -> np.ndarray:
        """F_q-spanning rows of the code in the (a | b) layout: R_j and u R_j."""
        return np.vstack([np.hstack([self.A, self.B]),
                          np.hstack([np.zeros_like(self.A), self.A])])

    def as_field_code(self) -> FieldCode:
        return FieldCode(self.F, self.field_generators(), self.label + " (a|b)")

    def size(self) -> int:
        return self.F.q ** self.as_field_code().k

    def gray_image(self, interleaved: bool = False) -> FieldCode:
        """Spanning matrix of the Gray image: rows Phi(R_j) and Phi(u R_j)."""
        top = gray_map_arrays(self.F, self.A, self.B)
        bottom = gray_map_arrays(self.F, np.zeros_like(self.A), self.A)
        G = np.vstack([top, bottom])
        if interleaved:
            G = interleave_columns(G)
        return FieldCode(self.F, G, self.label + " Gray")

    def codeword_set(self, budget: int | None = None) -> set[tuple[int, ...]]:
        """Codewords as tuples of encoded symbols a + q b."""
        n, q = self.n, self.F.q
        out = set()

        def visit(v):
            out.add(tuple((v[:n].astype(np.int64) + q * v[n:].astype(np.int64)).tolist()))
        row_space_enumerate(self.F, self.field_generators(), visit, budget)
        return out

    def encoded_matrix(self) -> np.ndarray:
        return self.A.astype(np.int64) + self.F.q * self.B.astype(np.int64)


def interleave_columns(G: np.ndarray) -> np.ndarray:
    """(x_1..x_n, y_1..y_n) -> (x_1, y_1, ..., x_n, y_n) on columns."""
    n = G.shape[1] // 2
    out = np.empty_like(G)
    out[:, 0::2] = G[:, :n]
    out[:, 1::2] = G[:, n:]
    return out


def code_from_defining_set(D: DefiningSet, budget: int | None = None) -> set[tuple[int, ...]]:
    """Evaluate <r, s> for every r in R^m and every s in D.

    Returns the set of codewords, each a tuple of symbols encoded as a + q b in
    the order of D. Work is q^(3m) |D|; this is only meant for small inputs.
    """
    F, m, q = D.F, D.m, D.F.q
    budget = DEFAULT_BUDGET if budget is None else budget
    if q ** (3 * m) * len(D) > budget:
        raise TooLarge(f"direct evaluation needs {q ** (3 * m) * len(D)} products")
    from .complexes import all_vectors
    V = all_vectors(q, m)
    mul, add = F.mul_table, F.add_table

    def dot(x, W):
        acc = np.zeros(W.shape[0], dtype=DTYPE)
        for t in range(m):
            acc = add[acc, mul[x[t], W[:, t]]]
        return acc

    pre1 = {i: (dot(x, D.W1), dot(x, D.W2)) for i, x in enumerate(V)}
    pre2 = {i: dot(x, D.W1) for i, x in enumerate(V)}
    pre3 = {i: dot(x, D.W3) for i, x in enumerate(V)}
    out = set()
    for i1 in range(len(V)):
        # (x1 + u x2, x3) . (w1 + u w2, w3) = x1.w1 + u (x1.w2 + x2.w1 + x3.w3)
        a, b12 = pre1[i1]
        for i2 in range(len(V)):
            b = add[b12, pre2[i2]]
            for i3 in range(len(V)):
                bb = add[b, pre3[i3]]
                out.add(tuple((a.astype(np.int64) + q * bb.astype(np.int64)).tolist()))
    return out


def ring_spanning_matrix(D: DefiningSet) -> RingCode:
    """2m x |D| matrix with column (w1 + u w2, u w3) per element."""
    A = np.vstack([D.W1.T, np.zeros_like(D.W3.T)])
    B = np.vstack([D.W2.T, D.W3.T])
    return RingCode(D.F, A.astype(DTYPE), B.astype(DTYPE), "ring")


def gray_spanning_matrix(D: DefiningSet) -> FieldCode:
    """3m x 2|D| matrix with (w2, w3, w1) at odd and (w1 + w2, w3, w1) at even positions."""
    F = D.F
    odd = np.hstack([D.W2, D.W3, D.W1])
    even = np.hstack([F.add(D.W1, D.W2), D.W3, D.W1])
    cols = np.empty((2 * len(D), 3 * D.m), dtype=DTYPE)
    cols[0::2] = odd
    cols[1::2] = even
    return FieldCode(F, cols.T.copy(), "Gray")


_MULTISET_KIND = {"N1": "S1", "N2": "S2", "N3": "S3", "N4": "S4"}


@dataclass(eq=False)
class ColumnMultiset:
    F: FieldSpec
    columns: np.ndarray  # 3m x N, duplicates allowed
    kind: str
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.columns.shape[1]

    def duplicate_count(self) -> int:
        return len(self) - np.unique(self.columns, axis=1).shape[1]


def _supports(m, A, B, C):
    return tuple(s if isinstance(s, SupportSet) else SupportSet.parse(s, m) for s in (A, B, C))


def gray_multiset(kind: str, q: int, m: int, A, B, C) -> ColumnMultiset:
    """{{ (w2 + omega, w3, w1) : omega in {0, w1} }} over the ranges of the matching S_i."""
    A, B, C = _supports(m, A, B, C)
    skind = _MULTISET_KIND.get(kind, kind)
    check_side_conditions(skind, m, A, B, C, q)
    F = make_field(q)
    r1, r2, r3 = RANGES[skind]
    X1 = enumerate_complex(q, A, r1)
    X2 = enumerate_complex(q, B, r2)
    X3 = enumerate_complex(q, C, r3)
    g1, g2, g3 = np.meshgrid(np.arange(len(X1)), np.arange(len(X2)), np.arange(len(X3)), indexing="ij")
    w1, w2, w3 = X1[g1.ravel()], X2[g2.ravel()], X3[g3.ravel()]
    plain = np.hstack([w2, w3, w1])
    shifted = np.hstack([F.add(w2, w1), w3, w1])
    cols = np.vstack([plain, shifted]).T.copy()
    return ColumnMultiset(F, cols, "N" + skind[1], dict(q=q, m=m, A=str(A), B=str(B), C=str(C)))


def normalize_columns(F: FieldSpec, cols: np.ndarray) -> np.ndarray:
    """Scale each nonzero column so its first nonzero entry is 1."""
    cols = np.asarray(cols, dtype=DTYPE)
    nz = cols != 0
    first = np.argmax(nz, axis=0)
    lead = cols[first, np.arange(cols.shape[1])]
    scale = np.where(lead == 0, 0, F.inv_table[np.where(lead == 0, 1, lead)])
    return F.mul_table[scale[None, :], cols]


def projective_representatives(kind: str, q: int, m: int, A, B, C) -> FieldCode:
    """Code spanned by one normalized representative per scalar class of N2 or N4."""
    A, B, C = _supports(m, A, B, C)
    if kind not in ("N2bar", "N4bar"):
        raise ValueError(f"unknown projective family {kind!r}")
    check_side_conditions(kind, m, A, B, C, q)
    ms = gray_multiset("N2" if kind == "N2bar" else "N4", q, m, A, B, C)
    F = ms.F
    normed = normalize_columns(F, ms.columns)
    reps, counts = np.unique(normed, axis=1, return_counts=True)
    if np.any(~reps.any(axis=0)) or np.any(counts != q - 1):
        raise InternalError("scalar classes of the multiset do not all have size q - 1")
    # np.unique sorts columns lexicographically by their first coordinate onward
    return FieldCode(F, reps, f"{kind} q={q} m={m} A={A} B={B} C={C}")


def write_matrix_text(M, q: int, m: int, out: TextIO | None = None) -> str:
    """Header "q m rows cols" then one row of integers per line."""
    M = np.asarray(M)
    buf = io.StringIO()
    buf.write(f"{q} {m} {M.shape[0]} {M.shape[1]}\n")
    for row in M:
        buf.write(" ".join(str(int(x)) for x in row))
        buf.write("\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def read_matrix_text(text: str) -> tuple[int, int, np.ndarray]:
    tokens = text.split()
    q, m, rows, cols = (int(t) for t in tokens[:4])
    data = np.array([int(t) for t in tokens[4:]], dtype=np.int64)
    if data.size != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {data.size}")
    return q, m, data.reshape(rows, cols)


def code_for_kind(kind: str, q: int, m: int, A, B, C) -> FieldCode:
    """Gray image of the ring code for S1..S4, the projective code for N2bar/N4bar."""
    from .complexes import DefiningSetSpec, build_defining_set
    if kind in ("N2bar", "N4bar"):
        return projective_representatives(kind, q, m, A, B, C)
    A, B, C = _supports(m, A, B, C)
    D = build_defining_set(DefiningSetSpec(kind, q, m, A, B, C))
    code = gray_spanning_matrix(D)
    code.label = f"{kind} q={q} m={m} A={A} B={B} C={C}"
    return code
