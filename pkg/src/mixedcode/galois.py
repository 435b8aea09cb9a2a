"""Arithmetic over GF(q) for prime powers q <= 256.

Elements are the integers ``0..q-1``. For an extension field the integer is
the base-p digit expansion of the polynomial representative, so digit ``j``
is the coefficient of ``x**j``. Vectors and matrices are plain numpy arrays
of dtype ``uint8``; every operation takes the :class:`FieldSpec` explicitly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DivisionByZero, NonPrimePower, OutOfRange, TooLarge

DEFAULT_BUDGET = 2**30
MAX_ORDER = 256

DTYPE = np.uint8


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise OutOfRange(f"field order must be at least 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NonPrimePower(f"{q} is not a prime power")
    return p, k


# Polynomials over GF(p) are coefficient tuples, lowest degree first.

def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    a = a[:dm] if len(a) >= dm else a + [0] * (dm - len(a))
    return a


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            # remainder of m modulo the monic divisor
            r = list(m)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * divisor[j]) % p
            if not any(r[:d]):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over GF(p) with the smallest integer encoding."""
    for tail in range(p**k):
        coeffs = [(tail // p**j) % p for j in range(k)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """Tables for GF(q).

    ``exp_table[i]`` is ``g**i`` for the smallest primitive element ``g`` and
    ``log_table[a]`` its inverse on nonzero ``a`` (``log_table[0]`` is -1).
    """

    q: int
    p: int
    k: int
    modulus: tuple[int, ...]
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    sub_table: np.ndarray = field(repr=False)

    def __reduce__(self):
        return make_field, (self.q,)

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=DTYPE)

    @property
    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=DTYPE)

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("zero has no inverse")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a, self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p)."""
        t = 0
        for j in range(self.k):
            t = int(self.add_table[t, self.pow(a, self.p**j)])
        return t

    def axpy(self, alpha, x, y):
        """alpha * x + y, elementwise."""
        return self.add_table[self.mul_table[alpha, x], y]

    def dot(self, x, y) -> int:
        prods = self.mul_table[np.asarray(x), np.asarray(y)]
        return int(self.sum(prods))

    def sum(self, x, axis=None):
        """Field sum along ``axis`` (all entries when None)."""
        x = np.asarray(x, dtype=DTYPE)
        if axis is None:
            x = x.reshape(-1)
            axis = 0
        x = np.moveaxis(x, axis, 0)
        if self.k == 1:
            return (x.astype(np.int64).sum(axis=0) % self.p).astype(DTYPE)
        if self.p == 2:
            return np.bitwise_xor.reduce(x, axis=0) if len(x) else np.zeros(x.shape[1:], DTYPE)
        acc = np.zeros(x.shape[1:], dtype=DTYPE)
        for row in x:
            acc = self.add_table[acc, row]
        return acc

    def matmul(self, A, B):
        """Matrix product over GF(q)."""
        A = np.asarray(A, dtype=DTYPE)
        B = np.asarray(B, dtype=DTYPE)
        if A.ndim == 1:
            return self.matmul(A[None, :], B)[0]
        if B.ndim == 1:
            return self.matmul(A, B[:, None])[:, 0]
        if self.k == 1:
            # exact: entries < 256 and inner dimension is chunked below 2**40
            out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
            step = 1 << 20
            for s in range(0, A.shape[1], step):
                out += A[:, s:s + step].astype(np.int64) @ B[s:s + step].astype(np.int64)
                out %= self.p
            return out.astype(DTYPE)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=DTYPE)
        for j in range(A.shape[1]):
            out = self.add_table[out, self.mul_table[A[:, j][:, None], B[j][None, :]]]
        return out

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build GF(q). Raises NonPrimePower or OutOfRange for invalid orders."""
    q = int(q)
    if q > MAX_ORDER:
        raise OutOfRange(f"q = {q} exceeds {MAX_ORDER}")
    p, k = _factor_prime_power(q)
    digits = np.array([[(a // p**j) % p for j in range(k)] for a in range(q)], dtype=np.int64)
    weights = p ** np.arange(k)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights
    if k == 1:
        modulus = (0, 1)

        def mul_int(a: int, b: int) -> int:
            return a * b % p
    else:
        modulus = smallest_irreducible(p, k)

        def mul_int(a: int, b: int) -> int:
            prod = [0] * (2 * k - 1)
            for i in range(k):
                if digits[a, i]:
                    for j in range(k):
                        prod[i + j] = (prod[i + j] + digits[a, i] * digits[b, j]) % p
            r = _poly_mod(prod, modulus, p)
            return int(sum(c * p**j for j, c in enumerate(r)))

    exp = None
    for g in range(2 if q > 2 else 1, q):
        seq = [1]
        for _ in range(q - 2):
            seq.append(mul_int(seq[-1], g))
        if len(set(seq)) == q - 1:
            exp = np.array(seq, dtype=np.int64)
            break
    assert exp is not None
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1)
    mul = np.zeros((q, q), dtype=np.int64)
    nz = np.arange(1, q)
    mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
    inv = np.zeros(q, dtype=np.int64)
    inv[nz] = exp[(-log[nz]) % (q - 1)]
    sub = add[:, neg]
    tables = [t.astype(DTYPE) for t in (add, mul, neg, inv, sub)]
    for t in tables:
        t.setflags(write=False)
    exp8 = exp.astype(DTYPE)
    exp8.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(q, p, k, tuple(modulus), exp8, log, *tables)


_OPS = {
    "add": lambda F, a, b: F.add(a, b),
    "sub": lambda F, a, b: F.sub(a, b),
    "mul": lambda F, a, b: F.mul(a, b),
    "div": lambda F, a, b: F.div(a, b),
    "neg": lambda F, a, b: F.neg(a),
    "inv": lambda F, a, b: F.inv(a),
}


def field_arithmetic(F: FieldSpec, a: int, b: int | None, op: str) -> int:
    """Scalar dispatch over {add, sub, mul, div, neg, inv}."""
    for x in (a, b):
        if x is not None and not 0 <= int(x) < F.q:
            raise OutOfRange(f"{x} is not an element of {F}")
    return int(_OPS[op](F, a, 0 if b is None else b))


def hamming_weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def support(v) -> tuple[int, ...]:
    """1-indexed support."""
    return tuple(int(i) + 1 for i in np.flatnonzero(np.asarray(v)))


def as_matrix(M, F: FieldSpec | None = None) -> np.ndarray:
    M = np.array(M, dtype=np.int64, ndmin=2)
    if F is not None and M.size and (M.min() < 0 or M.max() >= F.q):
        raise OutOfRange(f"matrix entries must lie in [0, {F.q})")
    return M.astype(DTYPE)


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_matrix(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        if R[r, c] != 1:
            R[r] = F.mul_table[F.inv_table[R[r, c]], R[r]]
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            R[others] = F.sub_table[R[others], F.mul_table[R[others, c][:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FieldSpec, M) -> int:
    return len(rref(F, M)[1])


def row_basis(F: FieldSpec, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)]


def kernel_basis(F: FieldSpec, M) -> np.ndarray:
    """Rows spanning {x : M x^T = 0}; shape (cols - rank, cols)."""
    M = as_matrix(M)
    cols = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((len(free), cols), dtype=DTYPE)
    for i, f in enumerate(free):
        K[i, f] = 1
        K[i, piv] = F.neg_table[R[: len(piv), f]]
    return K


def _vq(s: int, q: int) -> int:
    i = 0
    while s % q == 0:
        s //= q
        i += 1
    return i


def gray_digit(s: int, i: int, q: int) -> int:
    """Digit i of the s-th word of the reflected base-q Gray sequence."""
    d = (s // q**i) % q
    return d if (s // q ** (i + 1)) % 2 == 0 else q - 1 - d


def gray_word(s: int, k: int, q: int) -> list[int]:
    return [gray_digit(s, i, q) for i in range(k)]


def gray_steps(q: int, k: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, int, int]]:
    """Yield (digit, old, new) for each step of the reflected Gray sequence.

    Steps move from word ``s - 1`` to word ``s`` for ``s`` in ``(start, stop)``.
    """
    stop = q**k if stop is None else stop
    for s in range(start + 1, stop):
        i = _vq(s, q)
        yield i, gray_digit(s - 1, i, q), gray_digit(s, i, q)


def combination(F: FieldSpec, coeffs: Sequence[int], rows: np.ndarray) -> np.ndarray:
    """sum_i coeffs[i] * rows[i] over GF(q)."""
    return F.matmul(np.asarray(coeffs, dtype=DTYPE), rows)


def _check_budget(q: int, k: int, budget: int | None):
    budget = DEFAULT_BUDGET if budget is None else budget
    if q**k > budget:
        raise TooLarge(f"{q}^{k} codewords exceed the enumeration budget {budget}")


def row_space_enumerate(F: FieldSpec, G, visitor: Callable[[np.ndarray], object],
                        budget: int | None = None) -> int:
    """Call ``visitor`` once per codeword of the row space of G.

    G is rank-reduced first. Codewords arrive in reflected Gray order, each
    obtained from the previous one by adding one scalar multiple of one basis
    row. The array passed to ``visitor`` is reused; copy it to keep it.
    Returns the number of visits.
    """
    basis = row_basis(F, G)
    k, n = basis.shape
    _check_budget(F.q, k, budget)
    v = np.zeros(n, dtype=DTYPE)
    visitor(v)
    count = 1
    for i, old, new in gray_steps(F.q, k):
        delta = F.sub_table[new, old]
        v[:] = F.axpy(delta, basis[i], v)
        visitor(v)
        count += 1
    return count


def span_table(F: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """All q**t combinations of ``rows`` (t x n), indexed by base-q coefficients.

    Row ``j`` of the result is ``sum_i digit_i(j) * rows[i]`` with digit 0 least
    significant.
    """
    rows = as_matrix(rows) if len(rows) else np.zeros((0, rows.shape[1]), DTYPE)
    table = np.zeros((1, rows.shape[1]), dtype=DTYPE)
    for r in rows:
        multiples = F.mul_table[F.elements[:, None], r[None, :]]
        table = F.add_table[multiples[:, None, :], table[None, :, :]].reshape(-1, rows.shape[1])
    return table


def row_space_blocks(F: FieldSpec, basis: np.ndarray, low_rows: int,
                     start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
    """Blocks of codewords of a full-rank basis, q**low_rows codewords each.

    The first ``low_rows`` basis rows are tabulated once; the remaining rows are
    walked in Gray order over positions ``[start, stop)`` and each step adds a
    single row multiple to the whole table. Disjoint position ranges give
    disjoint blocks, which is how work is partitioned across threads.
    """
    k = basis.shape[0]
    low_rows = min(low_rows, k)
    table = span_table(F, basis[:low_rows])
    high = basis[low_rows:]
    h = k - low_rows
    stop = F.q**h if stop is None else stop
    if start >= stop:
        return
    word = gray_word(start, h, F.q)
    offset = combination(F, word, high) if h else np.zeros(basis.shape[1], DTYPE)
    if F.p == 2:
        add = np.bitwise_xor
    else:
        def add(a, b):
            return F.add_table[a, b]
    yield add(table, offset[None, :])
    for i, old, new in gray_steps(F.q, h, start, stop):
        offset = F.axpy(F.sub_table[new, old], high[i], offset)
        yield add(table, offset[None, :])
