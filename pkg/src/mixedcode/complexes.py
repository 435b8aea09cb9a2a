"""Single-facet simplicial complexes of F_q^m and the defining sets built from them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptySupport, LengthMismatch, SideConditionViolated
from .galois import DTYPE, FieldSpec, make_field
from .rings import MixedVector

KINDS = ("S1", "S2", "S3", "S4")


@dataclass(frozen=True)
class SupportSet:
    """A subset of [m], 1-indexed."""

    m: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))
        if self.m < 1:
            raise ValueError("ambient dimension must be positive")
        bad = [i for i in self.members if not 1 <= i <= self.m]
        if bad:
            raise ValueError(f"indices {sorted(bad)} outside [1, {self.m}]")

    @classmethod
    def parse(cls, text: str | Iterable[int], m: int) -> "SupportSet":
        if isinstance(text, str):
            items = [t for t in text.replace(" ", "").split(",") if t]
            return cls(m, frozenset(int(t) for t in items))
        return cls(m, frozenset(text))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __str__(self) -> str:
        return ",".join(str(i) for i in self)

    def mask(self) -> np.ndarray:
        mk = np.zeros(self.m, dtype=bool)
        mk[[i - 1 for i in self.members]] = True
        return mk

    def complement(self) -> "SupportSet":
        return SupportSet(self.m, frozenset(range(1, self.m + 1)) - self.members)

    def is_full(self) -> bool:
        return len(self.members) == self.m

    def __le__(self, other: "SupportSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "SupportSet") -> bool:
        return self.members < other.members

    def __or__(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(self.m, self.members | other.members)

    def __and__(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(self.m, self.members & other.members)


def nonempty_subsets(m: int) -> list[SupportSet]:
    out = []
    for r in range(1, m + 1):
        out.extend(SupportSet(m, frozenset(c)) for c in itertools.combinations(range(1, m + 1), r))
    return out


def all_vectors(q: int, m: int) -> np.ndarray:
    """F_q^m in lexicographic order, first coordinate most significant."""
    idx = np.arange(q**m)
    return np.stack([(idx // q ** (m - 1 - j)) % q for j in range(m)], axis=1).astype(DTYPE)


def enumerate_complex(q: int, s: SupportSet, variant: str = "delta") -> np.ndarray:
    """Rows of Delta_A (``delta``), its complement, or Delta_A minus zero (``star``)."""
    V = all_vectors(q, s.m)
    inside = ~np.any(V[:, ~s.mask()], axis=1)
    if variant == "delta":
        return V[inside]
    if variant == "complement":
        return V[~inside]
    if variant == "star":
        return V[inside & np.any(V, axis=1)]
    raise ValueError(f"unknown complex variant {variant!r}")


def complex_size(q: int, s: SupportSet, variant: str) -> int:
    return {"delta": q ** len(s), "complement": q**s.m - q ** len(s), "star": q ** len(s) - 1}[variant]


# (w1, w2, w3) complex variants per kind, and the side conditions they need
RANGES = {
    "S1": ("delta", "delta", "complement"),
    "S2": ("complement", "delta", "delta"),
    "S3": ("delta", "complement", "delta"),
    "S4": ("star", "delta", "complement"),
}


def side_condition_failures(kind: str, m: int, A: SupportSet, B: SupportSet, C: SupportSet,
                            q: int | None = None) -> list[str]:
    """Violated side conditions; ``q=None`` applies the strictest form of each."""
    bad = [f"{n} must be nonempty" for n, s in (("A", A), ("B", B), ("C", C)) if len(s) == 0]
    if kind in ("S1", "S4") and len(C) >= m:
        bad.append("|C| < m")
    # a single-vector Delta_A^* only breaks the S4 family over GF(2)
    if kind == "S4" and len(A) < 2 and (q is None or q == 2):
        bad.append("|A| >= 2 when q = 2")
    if kind == "S2" and len(A) >= m:
        bad.append("|A| < m")
    if kind == "S3" and len(B) >= m:
        bad.append("|B| < m")
    if kind == "N2bar" and not (B <= A and len(A) < m):
        bad.append("B ⊆ A ⊊ [m]")
    if kind == "N4bar":
        if (A & B).members:
            bad.append("A ∩ B = ∅")
        if len(C) >= m:
            bad.append("C ≠ [m]")
        if len(A) < 2:
            bad.append("|A| >= 2")
    return bad


def check_side_conditions(kind: str, m: int, A, B, C, q: int | None = None) -> None:
    bad = side_condition_failures(kind, m, A, B, C, q)
    if bad:
        raise SideConditionViolated(f"{kind} requires " + "; ".join(bad))


def valid_triples(kind: str, m: int, q: int | None = None) -> Iterator[tuple[SupportSet, SupportSet, SupportSet]]:
    subsets = nonempty_subsets(m)
    for A, B, C in itertools.product(subsets, repeat=3):
        if not side_condition_failures(kind, m, A, B, C, q):
            yield A, B, C


@dataclass
class DefiningSetSpec:
    kind: str
    q: int
    m: int
    A: SupportSet | None = None
    B: SupportSet | None = None
    C: SupportSet | None = None
    custom_elements: Sequence[MixedVector] | None = None

    def validate(self) -> None:
        if self.kind == "custom":
            if not self.custom_elements:
                raise SideConditionViolated("a custom defining set needs at least one element")
            return
        if self.kind not in KINDS:
            raise ValueError(f"unknown defining-set kind {self.kind!r}")
        if self.m < 2:
            raise SideConditionViolated("m >= 2 is required")
        for s in (self.A, self.B, self.C):
            if s is None or s.m != self.m:
                raise SideConditionViolated("A, B and C must be subsets of [m]")
        check_side_conditions(self.kind, self.m, self.A, self.B, self.C, self.q)

    def expected_size(self) -> int:
        q, m = self.q, self.m
        a, b, c = len(self.A), len(self.B), len(self.C)
        return {
            "S1": q ** (a + b) * (q**m - q**c),
            "S2": q ** (b + c) * (q**m - q**a),
            "S3": q ** (a + c) * (q**m - q**b),
            "S4": (q**a - 1) * q**b * (q**m - q**c),
        }[self.kind]


@dataclass(frozen=True, eq=False)
class DefiningSet:
    """Elements (w1 + u w2, w3) of R^m as three |D| x m arrays in canonical order."""

    F: FieldSpec
    W1: np.ndarray
    W2: np.ndarray
    W3: np.ndarray

    @property
    def m(self) -> int:
        return self.W1.shape[1]

    def __len__(self) -> int:
        return self.W1.shape[0]

    def __iter__(self) -> Iterator[MixedVector]:
        for i in range(len(self)):
            yield MixedVector(self.W1[i], self.W2[i], self.W3[i])

    def __getitem__(self, i: int) -> MixedVector:
        return MixedVector(self.W1[i], self.W2[i], self.W3[i])

    @classmethod
    def from_elements(cls, F: FieldSpec, elements: Sequence[MixedVector]) -> "DefiningSet":
        elements = list(elements)
        if not elements:
            raise SideConditionViolated("defining set is empty")
        m = len(elements[0])
        if any(len(e) != m for e in elements):
            raise LengthMismatch("defining-set elements differ in length")
        if len({e.key() for e in elements}) != len(elements):
            raise SideConditionViolated("defining set contains duplicate elements")
        W = [np.array([getattr(e, w) for e in elements], dtype=DTYPE).reshape(len(elements), m)
             for w in ("w1", "w2", "w3")]
        return cls(F, *W)


def build_defining_set(spec: DefiningSetSpec) -> DefiningSet:
    spec.validate()
    F = make_field(spec.q)
    if spec.kind == "custom":
        return DefiningSet.from_elements(F, spec.custom_elements)
    r1, r2, r3 = RANGES[spec.kind]
    X1 = enumerate_complex(spec.q, spec.A, r1)
    X2 = enumerate_complex(spec.q, spec.B, r2)
    X3 = enumerate_complex(spec.q, spec.C, r3)
    n1, n2, n3 = len(X1), len(X2), len(X3)
    W1 = np.repeat(X1, n2 * n3, axis=0)
    W2 = np.tile(np.repeat(X2, n3, axis=0), (n1, 1))
    W3 = np.tile(X3, (n1 * n2, 1))
    return DefiningSet(F, W1, W2, W3)


def defining_set(kind: str, q: int, m: int, A, B, C) -> DefiningSet:
    """Convenience wrapper accepting 1-indexed iterables or comma strings."""
    A, B, C = (SupportSet.parse(s, m) if not isinstance(s, SupportSet) else s for s in (A, B, C))
    return build_defining_set(DefiningSetSpec(kind, q, m, A, B, C))


def _require_nonempty(*sets: SupportSet) -> None:
    if any(len(s) == 0 for s in sets):
        raise EmptySupport("P and Q must be nonempty")


def cardinality_xyz(q: int, P: SupportSet, Q: SupportSet, which: str) -> int:
    _require_nonempty(P, Q)
    m, p, qq, u = P.m, len(P), len(Q), len(P | Q)
    return {
        "X": q ** (m - p),
        "Xc": q**m - q ** (m - p),
        "Y": q ** (m - p) - q ** (m - u),
        "Z": q**m - q ** (m - p) - q ** (m - qq) + q ** (m - u),
    }[which]


def cardinality_mn(q: int, P: SupportSet, Q: SupportSet, which: str) -> int:
    _require_nonempty(P, Q)
    m, p, u, i = P.m, len(P), len(P | Q), len(P & Q)
    z = cardinality_xyz(q, P, Q, "Z")
    scale = q ** (2 * m - p - u)
    hat = (q ** (p - i) - 1) * scale
    if which == "M":
        return (q**m - q ** (m - p)) * (q ** (m - len(Q)) - q ** (m - u))
    if which == "Mhat":
        return hat
    if which == "Mtilde":
        return ((q**p - 1) * (q ** (u - len(Q)) - 1) - (q ** (p - i) - 1)) * scale
    if which == "N":
        return (q**m - q ** (m - p)) * z
    if which == "Nhat":
        return q ** (m - p) * z
    if which == "Ntilde":
        return (q**m - 2 * q ** (m - p)) * z
    raise ValueError(f"unknown set {which!r}")
