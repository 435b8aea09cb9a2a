"""Weight distributions, closed-form tables and code certificates."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .complexes import SupportSet, check_side_conditions
from .construct import FieldCode, RingCode
from .errors import TooLarge, ZeroCode
from .galois import (DEFAULT_BUDGET, DTYPE, FieldSpec, kernel_basis,
                     row_space_blocks)

# ---------------------------------------------------------------------------
# distributions


class WeightDistribution:
    """Sparse map weight -> frequency."""

    def __init__(self, pairs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        acc: dict[int, int] = {}
        for w, f in items:
            w, f = int(w), int(f)
            if f:
                acc[w] = acc.get(w, 0) + f
        self.pairs = {w: acc[w] for w in sorted(acc) if acc[w]}

    def __getitem__(self, w: int) -> int:
        return self.pairs.get(w, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightDistribution):
            return self.pairs == other.pairs
        if isinstance(other, Mapping):
            return self.pairs == WeightDistribution(other).pairs
        return NotImplemented

    def __repr__(self) -> str:
        return f"WeightDistribution({self.pairs})"

    def items(self):
        return self.pairs.items()

    @property
    def total(self) -> int:
        return sum(self.pairs.values())

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w in self.pairs if w]

    @property
    def t(self) -> int:
        """Number of distinct nonzero weights."""
        return len(self.nonzero_weights)

    @property
    def min_weight(self) -> int:
        nz = self.nonzero_weights
        if not nz:
            raise ZeroCode("code has no nonzero codeword")
        return nz[0]

    @property
    def max_weight(self) -> int:
        return self.nonzero_weights[-1]

    def diff(self, other: "WeightDistribution") -> dict[int, tuple[int, int]]:
        keys = sorted(set(self.pairs) | set(other.pairs))
        return {w: (self[w], other[w]) for w in keys if self[w] != other[w]}

    def to_csv(self) -> str:
        return "weight,frequency\n" + "".join(f"{w},{f}\n" for w, f in self.pairs.items())

    def to_json(self) -> dict[str, int]:
        return {str(w): f for w, f in self.pairs.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "WeightDistribution":
        return cls({int(w): int(f) for w, f in obj.items()})

    @classmethod
    def from_csv(cls, text: str) -> "WeightDistribution":
        rows = [ln.split(",") for ln in text.strip().splitlines()[1:] if ln.strip()]
        return cls({int(w): int(f) for w, f in rows})

    def enumerator(self, var: str = "Z") -> str:
        terms = []
        for w, f in self.pairs.items():
            terms.append(str(f) if w == 0 else f"{f}{var}^{w}")
        return " + ".join(terms)


def _column_profile(F: FieldSpec, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct columns of the basis and their multiplicities."""
    if basis.shape[1] == 0:
        return basis, np.zeros(0, dtype=np.int64)
    cols, counts = np.unique(basis, axis=1, return_counts=True)
    return cols, counts.astype(np.int64)


def _gray_engine(F: FieldSpec, basis: np.ndarray, threads: int = 1) -> np.ndarray:
    """Weight histogram by batched Gray-order enumeration."""
    k, n = basis.shape
    U, mult = _column_profile(F, basis)
    live = np.any(U, axis=0)
    U, mult = U[:, live], mult[live]
    u = U.shape[1]
    hist = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        hist[0] = 1
        return hist
    plain = bool(np.all(mult == 1))
    weights_f = mult.astype(np.float64)
    # low block sized to keep each table near 2**22 entries
    low = 0
    while low < k and F.q ** (low + 1) * max(u, 1) <= 1 << 22:
        low += 1
    low = max(low, 1)
    h = k - low
    total_high = F.q**h

    def run(lo, hi):
        acc = np.zeros(n + 1, dtype=np.int64)
        for block in row_space_blocks(F, U, low, lo, hi):
            if plain:
                w = np.count_nonzero(block, axis=1)
            else:
                w = np.rint((block != 0).astype(np.float64) @ weights_f).astype(np.int64)
            acc += np.bincount(w, minlength=n + 1)
        return acc

    threads = max(1, min(int(threads), total_high))
    if threads == 1:
        return run(0, total_high)
    edges = [total_high * i // threads for i in range(threads + 1)]
    with ThreadPoolExecutor(threads) as ex:
        parts = list(ex.map(lambda i: run(edges[i], edges[i + 1]), range(threads)))
    for part in parts:
        hist += part
    return hist


def _wht(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    h, size = 1, a.size
    while h < size:
        v = a.reshape(-1, 2, h)
        a = np.stack([v[:, 0] + v[:, 1], v[:, 0] - v[:, 1]], axis=1).reshape(-1)
        h *= 2
    return a


def _fourier_engine(F: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """Weight histogram from the additive-character transform of the column counts.

    The number of coordinates where the codeword x.G vanishes equals
    (1/q) sum_a sum_col chi(Tr(a x.col)), and the inner sums are one transform
    of the column-multiplicity function over F_q^k.
    """
    k, n = basis.shape
    q, p, e = F.q, F.p, F.k
    hist = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        hist[0] = 1
        return hist
    size = q**k
    place = q ** np.arange(k, dtype=np.int64)
    idx = (basis.astype(np.int64) * place[:, None]).sum(axis=0)
    f = np.bincount(idx, minlength=size)
    if p == 2:
        spectrum = _wht(f)
    else:
        spectrum = np.fft.fftn(f.reshape((p,) * (e * k)).astype(np.float64)).reshape(-1)
    # coordinates of the functional c -> Tr(y c) in the digit basis
    tau = np.array([sum(F.trace(int(F.mul(y, p**j))) * p**j for j in range(e)) for y in range(q)],
                   dtype=np.int64)
    X = np.arange(size, dtype=np.int64)
    digits = [(X // q**i) % q for i in range(k)]
    zeros = np.full(size, n, dtype=spectrum.dtype)
    for a in range(1, q):
        ta = tau[F.mul_table[a, np.arange(q)]]
        ind = np.zeros(size, dtype=np.int64)
        for i in range(k):
            ind += ta[digits[i]] * place[i]
        zeros = zeros + spectrum[ind]
    if p == 2:
        assert not np.any(zeros % q)
        Z = zeros // q
    else:
        Z = np.rint(zeros.real / q).astype(np.int64)
    hist += np.bincount(n - Z, minlength=n + 1)
    return hist


def _ring_hamming(code: RingCode, budget) -> np.ndarray:
    F, n = code.F, code.n
    basis = code.as_field_code().basis
    _check(F.q, basis.shape[0], budget)
    hist = np.zeros(n + 1, dtype=np.int64)
    for block in row_space_blocks(F, basis, min(basis.shape[0], 8)):
        w = np.count_nonzero((block[:, :n] != 0) | (block[:, n:] != 0), axis=1)
        hist += np.bincount(w, minlength=n + 1)
    return hist


def _check(q: int, k: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if q**k > budget:
        raise TooLarge(f"{q}^{k} codewords exceed the enumeration budget {budget}")


GRAY_WORK_LIMIT = 1 << 32


def weight_distribution(code: FieldCode | RingCode, metric: str = "hamming", method: str = "auto",
                        budget: int | None = None, threads: int = 1) -> WeightDistribution:
    """Exact weight distribution by exhaustive enumeration.

    ``method`` is ``gray`` (batched Gray-order enumeration), ``fourier``
    (character-sum transform of the column counts) or ``auto``, which uses the
    Gray engine unless its work estimate exceeds ``GRAY_WORK_LIMIT``.
    For a RingCode the Lee metric is evaluated on the Gray image.
    """
    if isinstance(code, RingCode):
        if metric == "lee":
            return weight_distribution(code.gray_image(), "hamming", method, budget, threads)
        if metric != "hamming":
            raise ValueError(f"unknown metric {metric!r}")
        return WeightDistribution(enumerate(_ring_hamming(code, budget)))
    if metric == "lee":
        raise ValueError("Lee weight needs a code over the ring")
    F, basis = code.F, code.basis
    k = basis.shape[0]
    _check(F.q, k, budget)
    if method == "auto":
        work = F.q**k * max(1, np.unique(basis, axis=1).shape[1] if k else 1)
        method = "fourier" if work > GRAY_WORK_LIMIT and F.q**k <= 1 << 26 else "gray"
    if method == "gray":
        hist = _gray_engine(F, basis, threads)
    elif method == "fourier":
        hist = _fourier_engine(F, basis)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WeightDistribution(enumerate(hist))


def min_distance(code: FieldCode, **kw) -> int:
    if code.k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    return weight_distribution(code, **kw).min_weight


def dual_code(code: FieldCode) -> FieldCode:
    F = code.F
    K = kernel_basis(F, code.basis) if code.k else np.eye(code.n, dtype=DTYPE)
    return FieldCode(F, K.reshape(-1, code.n), f"dual of {code.label}".strip())


def macwilliams_transform(dist: WeightDistribution, n: int, q: int) -> WeightDistribution:
    """Distribution of the dual code via Krawtchouk polynomials (exact)."""
    size = dist.total
    out = {}
    for j in range(n + 1):
        s = 0
        for i, a in dist.items():
            kj = sum((-1) ** r * (q - 1) ** (j - r) * math.comb(i, r) * math.comb(n - i, j - r)
                     for r in range(j + 1))
            s += a * kj
        val = Fraction(s, size)
        if val.denominator != 1:
            raise ValueError("input is not the distribution of a linear code")
        out[j] = int(val)
    return WeightDistribution(out)


# ---------------------------------------------------------------------------
# column relations (dual distance and locality share this search)


def _keys(F: FieldSpec, cols: np.ndarray) -> np.ndarray:
    k = cols.shape[0]
    if F.q**k >= 2**62:
        raise TooLarge("column vectors too long to index")
    place = F.q ** np.arange(k, dtype=np.int64)
    return (cols.astype(np.int64) * place[:, None]).sum(axis=0)


def _normalized(F: FieldSpec, cols: np.ndarray) -> np.ndarray:
    if cols.shape[0] == 0:
        return cols
    nz = cols != 0
    first = np.argmax(nz, axis=0)
    lead = cols[first, np.arange(cols.shape[1])]
    scale = F.inv_table[np.where(lead == 0, 1, lead)]
    scale = np.where(lead == 0, 0, scale).astype(DTYPE)
    return F.mul_table[scale[None, :], cols]


class ColumnRelations:
    """Index over the columns of a matrix for short linear relations.

    ``relation(j, r)`` looks for columns S, |S| = r, j not in S, with g_j in
    the span of {g_s : s in S}, using hashed projective keys: r = 1 is a class
    lookup, r = 2 matches g_j - a g_i against the classes, r = 3 and r = 4
    meet single and pair combinations in the middle against a table of pair
    combinations.
    """

    PAIR_LIMIT = 1 << 24

    def __init__(self, F: FieldSpec, cols: np.ndarray):
        self.F = F
        self.cols = np.asarray(cols, dtype=DTYPE)
        self.k, self.n = self.cols.shape
        self.zero = ~np.any(self.cols, axis=0)
        self.nkeys = _keys(F, _normalized(F, self.cols))
        order = np.argsort(self.nkeys, kind="stable")
        self.sorted_keys = self.nkeys[order]
        self.sorted_idx = order
        self._pairs = None

    def _class_members(self, key: int) -> np.ndarray:
        lo = np.searchsorted(self.sorted_keys, key, "left")
        hi = np.searchsorted(self.sorted_keys, key, "right")
        return self.sorted_idx[lo:hi]

    def _residuals(self, target: np.ndarray, others: np.ndarray, a: int) -> np.ndarray:
        return self.F.sub_table[target[:, None], self.F.mul_table[a, self.cols[:, others]]]

    def relation(self, j: int, r: int) -> tuple[int, ...] | None:
        g = self.cols[:, j]
        if r == 1:
            if self.zero[j]:
                return None
            members = self._class_members(self.nkeys[j])
            members = members[members != j]
            return (int(members[0]),) if members.size else None
        if r == 2:
            return self._two(g, exclude={j})
        if r == 3:
            return self._three(g, exclude={j})
        if r == 4:
            return self._four(g, exclude={j})
        raise ValueError("relations are searched for r <= 4")

    def _two(self, g, exclude, candidates=None):
        others = np.array([i for i in range(self.n) if i not in exclude], dtype=np.int64) if candidates is None else candidates
        if others.size == 0:
            return None
        for a in range(1, self.F.q):
            res = self._residuals(g, others, a)
            live = np.any(res, axis=0)
            keys = _keys(self.F, _normalized(self.F, res))
            pos_lo = np.searchsorted(self.sorted_keys, keys, "left")
            pos_hi = np.searchsorted(self.sorted_keys, keys, "right")
            hit = np.flatnonzero(live & (pos_hi > pos_lo))
            for h in hit:
                i = int(others[h])
                for l in self.sorted_idx[pos_lo[h]:pos_hi[h]]:
                    l = int(l)
                    if l != i and l not in exclude:
                        return (i, l)
        return None

    def _pair_table(self):
        if self._pairs is None:
            n, q = self.n, self.F.q
            if n * (n - 1) // 2 * (q - 1) > self.PAIR_LIMIT:
                raise TooLarge("pair table for relation search is too large")
            I, L = np.triu_indices(n, 1)
            keys = []
            for c in range(1, q):
                comb = self.F.add_table[self.cols[:, I], self.F.mul_table[c, self.cols[:, L]]]
                k = _keys(self.F, _normalized(self.F, comb))
                k = np.where(np.any(comb, axis=0), k, -1)
                keys.append(k)
            keys = np.concatenate(keys)
            I2 = np.tile(I, q - 1)
            L2 = np.tile(L, q - 1)
            order = np.argsort(keys, kind="stable")
            self._pairs = (keys[order], I2[order], L2[order])
        return self._pairs

    def _match_pairs(self, keys: np.ndarray, banned_for) -> tuple[int, tuple] | None:
        pk, pi, pl = self._pair_table()
        lo = np.searchsorted(pk, keys, "left")
        hi = np.searchsorted(pk, keys, "right")
        for h in np.flatnonzero((hi > lo) & (keys >= 0)):
            banned = banned_for(int(h))
            for s in range(lo[h], hi[h]):
                i, l = int(pi[s]), int(pl[s])
                if i not in banned and l not in banned:
                    return int(h), (i, l)
        return None

    def _three(self, g, exclude):
        others = np.array([i for i in range(self.n) if i not in exclude], dtype=np.int64)
        for a in range(1, self.F.q):
            res = self._residuals(g, others, a)
            keys = np.where(np.any(res, axis=0), _keys(self.F, _normalized(self.F, res)), -1)
            found = self._match_pairs(keys, lambda h: exclude | {int(others[h])})
            if found:
                h, pair = found
                return (int(others[h]),) + pair
        return None

    def _four(self, g, exclude):
        pk, pi, pl = self._pair_table()
        n = self.n
        I, L = np.triu_indices(n, 1)
        ex = np.array(sorted(exclude))
        mask = ~(np.isin(I, ex) | np.isin(L, ex))
        I, L = I[mask], L[mask]
        for b in range(1, self.F.q):
            for c in range(1, self.F.q):
                comb = self.F.add_table[self.F.mul_table[b, self.cols[:, I]], self.F.mul_table[c, self.cols[:, L]]]
                res = self.F.sub_table[g[:, None], comb]
                keys = np.where(np.any(res, axis=0), _keys(self.F, _normalized(self.F, res)), -1)
                found = self._match_pairs(keys, lambda h: exclude | {int(I[h]), int(L[h])})
                if found:
                    h, pair = found
                    return (int(I[h]), int(L[h])) + pair
        return None

    def coefficients(self, j: int, helpers: tuple[int, ...]) -> list[int] | None:
        """Solve g_j = sum c_s g_s over the helper columns, or None."""
        from .galois import rref
        M = np.hstack([self.cols[:, list(helpers)], self.cols[:, [j]]])
        R, piv = rref(self.F, M)
        r = len(helpers)
        if r in piv:
            return None
        coeffs = [0] * r
        for row, c in enumerate(piv):
            coeffs[c] = int(R[row, r])
        return coeffs

    def dependent_set(self, w: int) -> tuple[int, ...] | None:
        """Some w columns that are linearly dependent, or None."""
        if w == 1:
            z = np.flatnonzero(self.zero)
            return (int(z[0]),) if z.size else None
        for j in range(self.n):
            if self.zero[j]:
                continue
            rel = self.relation(j, w - 1)
            if rel is not None:
                return (j,) + rel
        return None


def dual_distance_by_columns(code: FieldCode, limit: int = 4) -> int | None:
    """Least w <= limit such that some w columns are dependent, else None (> limit)."""
    if limit > 4:
        raise ValueError("column search supports limit <= 4")
    if code.k == 0:
        return 1 if code.n else None
    rel = ColumnRelations(code.F, code.basis)
    for w in range(1, limit + 1):
        if rel.dependent_set(w) is not None:
            return w
    return None


def is_projective(code: FieldCode) -> bool:
    return dual_distance_by_columns(code, 2) is None


def is_self_orthogonal(code: FieldCode) -> bool:
    G = code.G
    return not np.any(code.F.matmul(G, G.T))


def is_minimal_exact(code: FieldCode, budget: int = 2**14) -> bool:
    """Every nonzero codeword's support contains no other codeword's support
    except those of its scalar multiples."""
    F = code.F
    if F.q**code.k > budget:
        raise TooLarge(f"{F.q}^{code.k} codewords exceed the minimality budget {budget}")
    words = code.codewords()
    words = words[np.any(words, axis=1)]
    if len(words) == 0:
        return True
    # one word per projective class
    words = np.unique(_normalized(F, words.T).T, axis=0)
    supp = np.packbits(words != 0, axis=1)
    keys, counts = np.unique(supp, axis=0, return_counts=True)
    if np.any(counts > 1):
        return False
    for i in range(len(keys)):
        # keys[j] subset of keys[i] for some j != i
        inside = ~np.any(keys & ~keys[i], axis=1)
        inside[i] = False
        if inside.any():
            return False
    return True


def ab_minimality_sufficient(dist: WeightDistribution, q: int) -> bool:
    """w_min / w_max > (q - 1) / q, strictly."""
    return dist.min_weight * q > (q - 1) * dist.max_weight


# ---------------------------------------------------------------------------
# optimality


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int

    def __str__(self) -> str:
        return f"[{self.n}, {self.k}, {self.d}]"


def griesmer_sum(k: int, d: int, q: int) -> int:
    return sum(-(-d // q**i) for i in range(k))


@dataclass(frozen=True)
class OptimalityCertificate:
    verdict: str
    evidence: dict = field(default_factory=dict)

    def reproduce(self) -> "OptimalityCertificate":
        e = self.evidence
        return griesmer_status(CodeParams(e["n"], e["k"], e["d"]), e["q"])


def griesmer_status(p: CodeParams, q: int) -> OptimalityCertificate:
    s = griesmer_sum(p.k, p.d, q)
    if s == p.n:
        verdict = "griesmer"
    elif s == p.n - 1:
        verdict = "near_griesmer_distance_optimal" if p.d % q == 0 else "near_griesmer"
    else:
        verdict = "none"
    return OptimalityCertificate(verdict, dict(n=p.n, k=p.k, d=p.d, q=q, griesmer_sum=s))


def sphere_packing_holds(n: int, k: int, d: int, q: int) -> bool:
    t = (d - 1) // 2
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1)) <= q ** (n - k)


def sphere_packing_optimal(p: CodeParams, q: int) -> bool:
    """(n, k, d) meets the sphere-packing bound while (n, k, d + 1) violates it."""
    return sphere_packing_holds(p.n, p.k, p.d, q) and not sphere_packing_holds(p.n, p.k, p.d + 1, q)


# ---------------------------------------------------------------------------
# closed forms

TABLES = ("T1", "T2", "T3", "T4", "T6", "T7")
TABLE_KIND = {"T1": "S1", "T2": "S2", "T3": "S3", "T4": "S4", "T6": "N2bar", "T7": "N4bar"}
KIND_TABLE = {v: k for k, v in TABLE_KIND.items()}


@dataclass(frozen=True)
class ClosedFormParams:
    table: str
    q: int
    m: int
    A: SupportSet
    B: SupportSet
    C: SupportSet
    # True evaluates the eta term of the S2 and N2bar tables exactly as printed;
    # the default uses the form confirmed by enumeration for every q (eta = 1)
    printed: bool = False

    @classmethod
    def of(cls, table: str, q: int, m: int, A, B, C, printed: bool = False) -> "ClosedFormParams":
        A, B, C = (s if isinstance(s, SupportSet) else SupportSet.parse(s, m) for s in (A, B, C))
        return cls(table, q, m, A, B, C, printed)

    @property
    def epsilon(self) -> int:
        return 2 if self.A <= self.B else 1

    @property
    def rho(self) -> int:
        return 0 if self.B == self.A else 1

    @property
    def eta(self) -> int:
        return 1 if self.q % 2 == 0 else 0

    @property
    def theta(self) -> int:
        return 2 ** (4 * self.m + 2 * len(self.C) - 3)


def _rows(p: ClosedFormParams) -> list[tuple[int, int]]:
    q, m = p.q, p.m
    eta = p.eta if p.printed else 1
    a, b, c = len(p.A), len(p.B), len(p.C)
    U = len(p.A | p.B)
    Q = Fraction(q)
    if p.table == "T1":
        base = (q - 1) * Q ** (a + b - 1)
        return [
            (base * (q**m - q**c), 2 * (q ** (U - b) - 1)),
            (2 * base * (q**m - q**c), q ** (m + a + U) - 2 * Q ** (m - c + U - b) + Q ** (m - c)),
            (base * (2 * q**m - q**c), 2 * (q ** (U - b) - 1) * (q ** (m - c) - 1)),
            (2 * (q - 1) * Q ** (m + a + b - 1), q ** (m - c) - 1),
        ]
    if p.table in ("T2", "T6"):
        s = (q - 1) if p.table == "T2" else 1
        base = Q ** (b + c - 1)
        y = Q ** (m - b) - Q ** (m - U)
        return [
            (s * (q**m - q**a) * base, 2 * y),
            (s * Q ** (m + b + c - 1), 2 * (Q ** (m - U) - 1)),
            (2 * s * (q**m - q**a) * base,
             q ** (2 * m + c) - y * (2 * Q ** (m - a) + 1 - eta) - Q ** (2 * m - U - a)),
            (s * (2 * q**m - q**a) * base, y * (2 * Q ** (m - a) - 1 - eta)),
            (2 * s * Q ** (m + b + c - 1), (Q ** (m - a) - 1) * (Q ** (m - U) - 1) + Q ** (m - a) - Q ** (m - U)),
        ]
    if p.table == "T3":
        base = (q - 1) * Q ** (a + c - 1)
        return [
            (2 * base * (q**m - q**b), q ** (m + a + c) - 2 * Q ** (m - b) + Q ** (m - U)),
            (base * (2 * q**m - q**b), 2 * (Q ** (m - b) - Q ** (m - U))),
            (2 * (q - 1) * Q ** (m + a + c - 1), Q ** (m - U) - 1),
        ]
    if p.table == "T4":
        K = (q**a - 1) + (q**a - 2) * (q ** (U - b) - 1)
        Qb = Q ** (b - 1)
        return [
            ((q - 1) * (q**m - q**c) * Q ** (a + b - 1), 2 * (q ** (U - b) - 1)),
            (2 * (q - 1) * Qb * ((q**m - q**c) * (q**a - 1) - q**c), K * (q ** (m - c) - 1)),
            (2 * (q - 1) * (q**m - q**c) * (q**a - 1) * Qb, q ** (m + a + U) - Q ** (m + a + U - c - b)),
            (2 * (q - 1) * (q**m - q**c) * Q ** (a + b - 1), K),
            ((q - 1) * Qb * ((2 * q**m - q**c) * (q**a - 1) - q**c), 2 * (q ** (U - b) - 1) * (q ** (m - c) - 1)),
            (2 * (q - 1) * Q ** (m + b - 1) * (q**a - 1), q ** (m - c) - 1),
        ]
    if p.table == "T7":
        Qb = Q ** (b - 1)
        return [
            ((q**m - q**c) * Q ** (a + b - 1), 2 * (q**a - 1)),
            (2 * Qb * ((q**m - q**c) * (q**a - 1) - q**c), (q**a - 1) ** 2 * (q ** (m - c) - 1)),
            (2 * (q**m - q**c) * (q**a - 1) * Qb, q ** (m + 2 * a + b) - Q ** (m + 2 * a - c)),
            (2 * (q**m - q**c) * Q ** (a + b - 1), (q**a - 1) ** 2),
            (Qb * ((2 * q**m - q**c) * (q**a - 1) - q**c), 2 * (q**a - 1) * (q ** (m - c) - 1)),
            (2 * Q ** (m + b - 1) * (q**a - 1), q ** (m - c) - 1),
        ]
    raise ValueError(f"unknown table {p.table!r}")


def closed_form_distribution(p: ClosedFormParams) -> WeightDistribution:
    """Evaluate a table; rows of equal weight merge, zero-frequency rows drop."""
    if p.table not in TABLE_KIND:
        raise ValueError(f"unknown table {p.table!r}")
    check_side_conditions(TABLE_KIND[p.table], p.m, p.A, p.B, p.C, p.q)
    out = {0: 1}
    for w, f in _rows(p):
        w, f = Fraction(w), Fraction(f)
        if w.denominator != 1 or f.denominator != 1:
            raise ValueError(f"non-integral table entry {w}, {f}")
        if f:
            out[int(w)] = out.get(int(w), 0) + int(f)
    return WeightDistribution(out)


def predicted_weight_count(table: str, q: int, m: int, A: SupportSet, B: SupportSet, C: SupportSet) -> int:
    """Number of nonzero weights claimed by each theorem's consequence clause."""
    full = SupportSet(m, frozenset(range(1, m + 1)))
    if table == "T1":
        return 2 if A <= B else 4
    if table == "T2":
        if B == full:
            return 2
        return 3 if A <= B else 5
    if table == "T3":
        return 2 if (A | B) == full or A <= B else 3
    if table == "T4":
        return 4 if A <= B else 6
    if table == "T6":
        if B != A:
            return 5
        if q == 2 and len(B) == m - 1:
            return 2
        return 3
    if table == "T7":
        return 6
    raise ValueError(f"unknown table {table!r}")


def predicted_dimension(kind: str, q: int, m: int, A: SupportSet, B: SupportSet, C: SupportSet) -> int:
    a, b, c, U = len(A), len(B), len(C), len(A | B)
    return {"S1": m + a + U, "S2": 2 * m + c, "S3": m + a + c, "S4": m + a + U,
            "N2bar": 2 * m + c, "N4bar": m + 2 * a + b}[kind]


def predicted_length(kind: str, q: int, m: int, A: SupportSet, B: SupportSet, C: SupportSet) -> int:
    a, b, c = len(A), len(B), len(C)
    return {
        "S1": 2 * q ** (a + b) * (q**m - q**c),
        "S2": 2 * q ** (b + c) * (q**m - q**a),
        "S3": 2 * q ** (a + c) * (q**m - q**b),
        "S4": 2 * (q**a - 1) * q**b * (q**m - q**c),
        "N2bar": 2 * q ** (b + c) * (q**m - q**a) // (q - 1),
        "N4bar": 2 * (q**m - q**c) * (q**a - 1) * q**b // (q - 1),
    }[kind]


# ---------------------------------------------------------------------------
# certificate bundle


@dataclass
class CertificateBundle:
    params: CodeParams
    t_weights: int
    griesmer: OptimalityCertificate
    sphere_packing_optimal: bool
    self_orthogonal: bool
    minimal: bool | None
    minimal_method: str
    projective: bool | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["params"] = asdict(self.params)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def certify(code: FieldCode, dist: WeightDistribution | None = None, minimal_budget: int = 2**14,
            check_projective: bool = True, **kw) -> CertificateBundle:
    F = code.F
    dist = weight_distribution(code, **kw) if dist is None else dist
    params = CodeParams(code.n, code.k, dist.min_weight)
    if ab_minimality_sufficient(dist, F.q):
        minimal, how = True, "ashikhmin_barg"
    elif F.q**code.k <= minimal_budget:
        minimal, how = is_minimal_exact(code, minimal_budget), "exhaustive"
    else:
        minimal, how = None, "undetermined"
    projective = None
    if check_projective:
        projective = is_projective(code)
    return CertificateBundle(
        params=params,
        t_weights=dist.t,
        griesmer=griesmer_status(params, F.q),
        sphere_packing_optimal=sphere_packing_optimal(params, F.q),
        self_orthogonal=is_self_orthogonal(code),
        minimal=minimal,
        minimal_method=how,
        projective=projective,
    )
