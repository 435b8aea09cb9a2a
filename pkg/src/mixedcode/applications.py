"""Locality of repair, Massey secret sharing and coset graphs of linear codes."""
from __future__ import annotations

import warnings
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

import numpy as np

from .analysis import (ColumnRelations, CodeParams, OptimalityCertificate, _normalized,
                       ab_minimality_sufficient, griesmer_sum, is_minimal_exact,
                       weight_distribution)
from .complexes import SupportSet
from .construct import FieldCode, projective_representatives
from .errors import (LoopError, NotFoundWithinCap, NotMinimalWarning, OutOfRange, Overflow,
                     TooLarge, ZeroColumn)
from .galois import DTYPE, FieldSpec, kernel_basis, make_field

# ---------------------------------------------------------------------------
# locality


@dataclass(frozen=True)
class RepairWitness:
    column: int
    helpers: tuple[int, ...]
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class LocalityReport:
    locality: int
    witnesses: dict = field(repr=False)  # column -> RepairWitness
    searched_up_to: int

    def verify(self, code: FieldCode) -> bool:
        F, G = code.F, code.G
        for j, w in self.witnesses.items():
            acc = np.zeros(G.shape[0], dtype=DTYPE)
            for i, c in zip(w.helpers, w.coefficients):
                if i == j:
                    return False
                acc = F.add(acc, F.mul(c, G[:, i]))
            if not np.array_equal(acc, G[:, j]):
                return False
        return True


def _column_repair(rel: ColumnRelations, j: int, cap: int) -> RepairWitness | None:
    if rel.zero[j]:
        # a zero column is 0 times any other column
        other = 0 if j != 0 else 1
        return RepairWitness(j, (other,), (0,)) if rel.n > 1 else None
    for r in range(1, cap + 1):
        helpers = rel.relation(j, r)
        if helpers is not None:
            coeffs = rel.coefficients(j, helpers)
            return RepairWitness(j, tuple(helpers), tuple(coeffs))
    return None


def locality(code: FieldCode, cap: int = 4) -> LocalityReport:
    """Least r such that every column is a combination of at most r others."""
    if not 1 <= cap <= 4:
        raise OutOfRange("locality search supports 1 <= cap <= 4")
    # column relations are the same for any spanning matrix of the code
    rel = ColumnRelations(code.F, code.basis)
    witnesses = {}
    for j in range(code.n):
        w = _column_repair(rel, j, cap)
        if w is None:
            raise NotFoundWithinCap(f"column {j} has no repair set of size <= {cap}")
        witnesses[j] = w
    r = max((len(w.helpers) for w in witnesses.values()), default=0)
    return LocalityReport(r, witnesses, cap)


def kopt_griesmer_proxy(n: int, d: int, q: int) -> int:
    """Largest k with a Griesmer sum <= n; an upper bound on the true k_opt(n, d)."""
    if n < d or d < 1:
        return 0
    k = 0
    while k < n and griesmer_sum(k + 1, d, q) <= n:
        k += 1
    return k


def cadambe_mazumdar_bound(n: int, k: int, d: int, r: int, q: int) -> int | None:
    """min over 1 <= i <= ceil(k/r) - 1 of r i + k_opt(n - i(r+1), d), k_opt from the Griesmer proxy.

    None when the range of i is empty and the bound says nothing.
    """
    top = -(-k // r) - 1
    vals = [r * i + kopt_griesmer_proxy(n - i * (r + 1), d, q) for i in range(1, top + 1)]
    return min(vals) if vals else None


def lrc_optimality(params: CodeParams, r: int, q: int) -> OptimalityCertificate:
    # the proxy only loosens the bound, so meeting it still certifies optimality
    bound = cadambe_mazumdar_bound(params.n, params.k, params.d, r, q)
    if bound is not None and params.k == bound:
        verdict = "alphabet-optimal under Griesmer proxy"
    else:
        verdict = "not certified"
    return OptimalityCertificate(verdict, dict(n=params.n, k=params.k, d=params.d, r=r, q=q, bound=bound))


# ---------------------------------------------------------------------------
# Massey secret sharing on the dual of a minimal code


@dataclass(frozen=True)
class MasseyReport:
    q: int
    k: int
    participants: int
    minimal_access_sets: int
    dictatorial: tuple[int, ...]  # participant numbers, 1-indexed
    per_participant_membership: int
    minimal: bool | None
    h0: tuple[int, ...]

    def to_json(self) -> dict:
        return dict(q=self.q, k=self.k, participants=self.participants,
                    minimal_access_sets=self.minimal_access_sets, dictatorial=list(self.dictatorial),
                    per_participant_membership=self.per_participant_membership,
                    minimal=self.minimal, h0=list(self.h0))


def _share_matrix(code: FieldCode, permutation=None) -> np.ndarray:
    G = code.G
    if permutation is not None:
        G = G[:, np.asarray(permutation)]
    H = G[np.any(G, axis=1)]
    if H.shape[1] == 0 or np.any(~np.any(H, axis=0)):
        raise ZeroColumn("spanning matrix has a zero column")
    return H


def _certify_minimal(code: FieldCode, budget: int) -> bool | None:
    if code.F.q**code.k <= budget:
        return is_minimal_exact(code, budget)
    return True if ab_minimality_sufficient(weight_distribution(code), code.F.q) else None


def massey_report(code: FieldCode, permutation=None, minimal_budget: int = 2**14) -> MasseyReport:
    """Access structure of Massey's scheme on the dual, via the counting rules for minimal codes.

    h0 is the first column of the zero-row-stripped spanning matrix; pass a
    column permutation to choose another secret coordinate.
    """
    F = code.F
    H = _share_matrix(code, permutation)
    sub = FieldCode(F, H, code.label)
    k, n, q = sub.k, sub.n, F.q
    minimal = _certify_minimal(sub, minimal_budget)
    if not minimal:
        warnings.warn("code is not certified minimal; the counting rules may not apply", NotMinimalWarning)
    normed = _normalized(F, H)
    same = np.all(normed == normed[:, :1], axis=0)
    dictatorial = tuple(int(i) for i in np.flatnonzero(same[1:]) + 1)
    membership = (q - 1) * q ** (k - 2) if k >= 2 else 0
    return MasseyReport(q, k, n - 1, q ** (k - 1), dictatorial, membership, minimal,
                        tuple(int(x) for x in H[:, 0]))


def _superset_closure(flags: np.ndarray, bits: int) -> np.ndarray:
    for b in range(bits):
        v = flags.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return flags


def massey_enumerate_minimal_access(code: FieldCode, permutation=None, max_participants: int = 20,
                                    budget: int = 2**22) -> set[frozenset[int]]:
    """Every minimal access set of Massey's scheme on the dual, by exhaustion over all subsets.

    A set T of participants recovers the secret iff the share-matrix column h0
    of the dual lies in the span of its columns, i.e. iff some codeword x of
    the code has x_0 = 1 and support inside {0} u T. All 2^(n-1) subsets are
    classified, then the minimal ones kept.
    """
    F = code.F
    H = _share_matrix(code, permutation)
    sub = FieldCode(F, H)
    P = sub.n - 1
    if P > max_participants:
        raise TooLarge(f"{P} participants exceed the brute-force limit {max_participants}")
    if F.q**sub.k > budget:
        raise TooLarge(f"{F.q}^{sub.k} codewords exceed the budget {budget}")
    words = sub.codewords()
    words = words[words[:, 0] != 0]
    place = (1 << np.arange(P, dtype=np.int64))
    masks = ((words[:, 1:] != 0).astype(np.int64) * place).sum(axis=1) if P else np.zeros(len(words), np.int64)
    access = np.zeros(1 << P, dtype=bool)
    access[masks] = True
    access = _superset_closure(access, P)
    minimal = access.copy()
    for b in range(P):
        v = minimal.reshape(-1, 2, 1 << b)
        a = access.reshape(-1, 2, 1 << b)
        v[:, 1, :] &= ~a[:, 0, :]
    out = set()
    for T in np.flatnonzero(minimal):
        out.add(frozenset(i + 1 for i in range(P) if (int(T) >> i) & 1))
    return out


def ta3_predicted(q: int, m: int, A, B, C, x0) -> dict:
    """Participant, access-set and dictator counts for the S3 Gray image with secret column x0."""
    A, B, C = (s if isinstance(s, SupportSet) else SupportSet.parse(s, m) for s in (A, B, C))
    F = make_field(q)
    a, b, c = len(A), len(B), len(C)
    x0 = np.asarray(x0, dtype=DTYPE)
    top, w1 = x0[:m], x0[2 * m:]
    bc_mask = ~B.mask()

    def in_bc(v):
        return bool(np.any(v[bc_mask]))
    if in_bc(top):
        # x0 = (w2, w3, w1): branch (a)
        two = in_bc(F.sub(top, w1))
    else:
        # x0 = (w2 + w1, w3, w1): branch (b); w2 + w1 itself is outside Delta_B^c
        two = False
    return dict(
        participants=2 * q ** (a + c) * (q**m - q**b) - 1,
        minimal_access_sets=q ** (m + a + c - 1),
        dictatorial=2 * q - 3 if two else q - 2,
        per_participant_membership=(q - 1) * q ** (m + a + c - 2),
        no_information_up_to=2 * (q - 1) * q ** (a + c - 1) * (q**m - q**b) - 2,
    )


# ---------------------------------------------------------------------------
# coset graphs in syndrome space


def _encode(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    place = F.q ** np.arange(V.shape[-1], dtype=np.int64)
    return (V.astype(np.int64) * place).sum(axis=-1)


def _decode(F: FieldSpec, idx: np.ndarray, r: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return np.stack([(idx // F.q**i) % F.q for i in range(r)], axis=-1).astype(DTYPE)


@dataclass(eq=False)
class CosetGraph:
    """Cayley graph on F_q^r whose generators are the syndromes of weight-1 vectors."""

    F: FieldSpec
    parity_matrix: np.ndarray
    generators: np.ndarray  # distinct nonzero syndromes, encoded
    neighbors: np.ndarray  # vertex_count x degree

    @property
    def vertex_count(self) -> int:
        return self.neighbors.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    def degrees(self) -> np.ndarray:
        return np.array([len(set(row.tolist())) for row in self.neighbors])

    def adjacency(self, dtype=bool) -> np.ndarray:
        N = self.vertex_count
        M = np.zeros((N, N), dtype=dtype)
        M[np.repeat(np.arange(N), self.degree), self.neighbors.ravel()] = 1
        return M

    def edges(self):
        for u in range(self.vertex_count):
            for v in self.neighbors[u]:
                if u < v:
                    yield u, int(v)

    def write_edge_list(self, out: TextIO | None = None) -> str:
        text = "".join(f"{u} {v}\n" for u, v in self.edges())
        if out is not None:
            out.write(text)
        return text


def coset_graph_from_parity(F: FieldSpec, H, budget: int = 2**16) -> CosetGraph:
    H = np.asarray(H, dtype=DTYPE)
    r = H.shape[0]
    if F.q**r > budget:
        raise TooLarge(f"{F.q}^{r} vertices exceed the cap {budget}")
    if H.shape[1] and np.any(~np.any(H, axis=0)):
        raise LoopError("a weight-1 vector lies in the code, its coset edge would be a loop")
    if r == 0:
        return CosetGraph(F, H, np.zeros(0, np.int64), np.zeros((1, 0), np.int64))
    scaled = F.mul_table[np.arange(1, F.q)[:, None, None], H[None, :, :]]  # (q-1) x r x n
    gens = np.unique(_encode(F, scaled.transpose(0, 2, 1).reshape(-1, r)))
    N = F.q**r
    if N * len(gens) > 2**27:
        raise TooLarge("neighbour table too large")
    V = _decode(F, np.arange(N), r)
    G = _decode(F, gens, r)
    nb = np.empty((N, len(gens)), dtype=np.int64)
    for t, g in enumerate(G):
        nb[:, t] = _encode(F, F.add(V, g[None, :]))
    return CosetGraph(F, H, gens, nb)


def coset_graph(code: FieldCode, budget: int = 2**16) -> CosetGraph:
    """Coset graph of ``code``: vertices F_q^n / code, identified with syndromes."""
    H = kernel_basis(code.F, code.basis) if code.k else np.eye(code.n, dtype=DTYPE)
    if H.shape[0] == 0:
        H = np.zeros((0, code.n), dtype=DTYPE)
    return coset_graph_from_parity(code.F, H, budget)


def coset_graph_of_dual(code: FieldCode, budget: int = 2**16) -> CosetGraph:
    """Coset graph of the dual; a spanning matrix of the code is its parity-check matrix."""
    return coset_graph_from_parity(code.F, code.basis, budget)


def is_connected(g: CosetGraph) -> bool:
    N = g.vertex_count
    seen = np.zeros(N, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(g.neighbors[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


@dataclass(frozen=True)
class SWRGReport:
    ell: int
    lambda_ell: int | None
    mu_ell: int | None
    nu_ell: int | None
    spectrum: tuple[tuple[object, int], ...]
    is_swrg: bool
    degree: int | None = None
    vertex_count: int | None = None

    def walk_triple(self) -> tuple:
        return self.lambda_ell, self.mu_ell, self.nu_ell

    def to_json(self) -> dict:
        return dict(ell=self.ell, lambda_ell=self.lambda_ell, mu_ell=self.mu_ell, nu_ell=self.nu_ell,
                    spectrum=[[e, m] for e, m in self.spectrum], is_swrg=self.is_swrg,
                    degree=self.degree, vertex_count=self.vertex_count)


def _spectrum(A: np.ndarray) -> tuple[tuple[object, int], ...]:
    vals = np.linalg.eigvalsh(A.astype(np.float64))
    keys = []
    for v in vals:
        r = round(float(v))
        keys.append(int(r) if abs(v - r) < 1e-6 else round(float(v), 9))
    return tuple(sorted(Counter(keys).items(), key=lambda kv: -kv[0]))


def _matrix_power(A: np.ndarray, ell: int, bound: int, threads: int) -> np.ndarray:
    if bound < 2**53:
        # every partial count is an integer below 2^53, so float products are exact
        Af = A.astype(np.float64)
        P = Af
        for _ in range(ell - 1):
            P = P @ Af
        return np.rint(P).astype(np.uint64)
    Au = A.astype(np.uint64)
    P = Au
    N = A.shape[0]
    blocks = [(i, min(N, i + 256)) for i in range(0, N, 256)]
    for _ in range(ell - 1):
        out = np.empty_like(P)

        def run(lo_hi, P=P, out=out):
            lo, hi = lo_hi
            out[lo:hi] = P[lo:hi] @ Au
        with ThreadPoolExecutor(max(1, threads)) as ex:
            list(ex.map(run, blocks))
        P = out
    return P


def _constant(vals: np.ndarray) -> tuple[bool, int | None]:
    if vals.size == 0:
        return True, None
    return bool(np.all(vals == vals[0])), int(vals[0])


def walk_regularity_check(g: CosetGraph, ell: int, threads: int = 1, max_vertices: int = 2**12) -> SWRGReport:
    """Count length-ell walks exactly and test whether they depend only on the pair's class."""
    if ell < 2:
        raise OutOfRange("walk length must be at least 2")
    N = g.vertex_count
    if N > max_vertices:
        raise TooLarge(f"{N} vertices exceed the dense cap {max_vertices}")
    A = g.adjacency(np.uint8)
    row_max = int(A.sum(axis=1).max()) if N else 0
    bound = row_max**ell
    if bound >= 2**64:
        raise Overflow(f"walk counts up to {row_max}^{ell} exceed 64 bits")
    P = _matrix_power(A, ell, bound, threads)
    eye = np.eye(N, dtype=bool)
    adj = A.astype(bool)
    ok_l, lam = _constant(P[adj])
    ok_m, mu = _constant(P[~adj & ~eye])
    ok_n, nu = _constant(np.diag(P))
    degs = A.sum(axis=1)
    return SWRGReport(ell, lam, mu, nu, _spectrum(A), ok_l and ok_m and ok_n,
                      int(degs[0]) if N and np.all(degs == degs[0]) else None, N)


def swrg_predicted(m: int, c_size: int, ell: int) -> SWRGReport:
    """Walk parameters and spectrum of the coset graph of the dual of the quaternary 3-weight family."""
    if ell < 3 or ell % 2 == 0:
        raise OutOfRange("the prediction covers odd ell >= 3")
    theta = 2 ** (4 * m + 2 * c_size - 3)
    N = 4 ** (2 * m + c_size)
    nu = Fraction((3**ell - 3) * theta**ell, N)
    if nu.denominator != 1:
        raise ValueError("non-integral walk count")
    nu = int(nu)
    spectrum = ((3 * theta, 1), (theta, 6), (0, N - 16), (-theta, 9))
    return SWRGReport(ell, nu + theta ** (ell - 1), nu, nu, spectrum, True, 3 * theta, N)


def shi_code(m: int, c_size: int) -> FieldCode:
    """The projective quaternary 3-weight code: N2bar with q = 4, B = A = {1..m-1}, C = {1..c}."""
    A = SupportSet(m, frozenset(range(1, m)))
    C = SupportSet(m, frozenset(range(1, c_size + 1)))
    return projective_representatives("N2bar", 4, m, A, A, C)


def shi_graph(m: int, c_size: int, budget: int = 2**16) -> CosetGraph:
    vertices = 4 ** (2 * m + c_size)
    if vertices > budget:
        raise TooLarge(f"{vertices} vertices exceed the cap {budget}")
    return coset_graph_of_dual(shi_code(m, c_size), budget)
