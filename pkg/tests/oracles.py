"""Slow reference implementations used as independent oracles.

Nothing here imports the package's arithmetic: fields are polynomial
arithmetic modulo an explicit irreducible, codes are enumerated with
itertools, relations are found by trying every subset.
"""
import itertools
from collections import Counter

# moduli as coefficient lists, constant term first
MODULI = {
    2: (2, [0, 1]),
    3: (3, [0, 1]),
    4: (2, [1, 1, 1]),
    5: (5, [0, 1]),
    7: (7, [0, 1]),
    8: (2, [1, 1, 0, 1]),
    9: (3, [1, 0, 1]),
}


class RefField:
    """GF(q) by schoolbook polynomial arithmetic on base-p digit encodings."""

    def __init__(self, q):
        self.q = q
        self.p, self.mod = MODULI[q]
        self.k = len(self.mod) - 1 if len(self.mod) > 2 else 1
        if q == self.p:
            self.k = 1

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def undigits(self, d):
        return sum(int(x) * self.p**i for i, x in enumerate(d))

    def add(self, a, b):
        return self.undigits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % self.p
        # reduce with the monic modulus
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg]
            if c:
                for i, mc in enumerate(self.mod):
                    prod[deg - self.k + i] = (prod[deg - self.k + i] - c * mc) % self.p
        return self.undigits(prod[: self.k])

    def inv(self, a):
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


def ref_codewords(R, G):
    """Every codeword of the row space of G (list of rows), as tuples."""
    k, n = len(G), len(G[0])
    out = set()
    for coeffs in itertools.product(range(R.q), repeat=k):
        w = [0] * n
        for c, row in zip(coeffs, G):
            if c:
                w = [R.add(x, R.mul(c, y)) for x, y in zip(w, row)]
        out.add(tuple(w))
    return out


def ref_distribution(R, G):
    return dict(Counter(sum(1 for x in w if x) for w in ref_codewords(R, G)))


def ref_dual_distance(R, G, limit=4):
    """Least w such that some w columns are linearly dependent, by exhaustion."""
    n = len(G[0])
    cols = [tuple(row[j] for row in G) for j in range(n)]
    for w in range(1, limit + 1):
        for S in itertools.combinations(range(n), w):
            for coeffs in itertools.product(range(1, R.q), repeat=w):
                acc = [0] * len(G)
                for c, j in zip(coeffs, S):
                    acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, cols[j])]
                if not any(acc):
                    return w
    return None


def ref_in_span(R, target, vectors):
    """target in the span of vectors, by trying every coefficient tuple."""
    for coeffs in itertools.product(range(R.q), repeat=len(vectors)):
        acc = [0] * len(target)
        for c, v in zip(coeffs, vectors):
            acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, v)]
        if tuple(acc) == tuple(target):
            return True
    return False


def ref_rank(R, rows):
    """Rank by plain Gaussian elimination on lists."""
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = R.inv(M[rank][c])
        M[rank] = [R.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def ref_dual_rows(R, G):
    """A basis of the dual code, by enumerating F_q^n (small n only)."""
    n = len(G[0])
    basis = []
    for v in itertools.product(range(R.q), repeat=n):
        if not any(v):
            continue
        if all(_dot(R, v, g) == 0 for g in G) and ref_rank(R, basis + [list(v)]) > len(basis):
            basis.append(list(v))
    return basis


def _dot(R, x, y):
    acc = 0
    for a, b in zip(x, y):
        acc = R.add(acc, R.mul(a, b))
    return acc
