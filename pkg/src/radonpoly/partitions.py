"""Ordered partitions of [N], partition cones/faces, and inclusion-exclusion weights.

An ordered partition (A, B) consists of two disjoint subsets of [N] = {1,..,N}
(their union may be a proper subset of [N]).  It determines a cone

    C(A, B) = cone{e_i - e_j : i in A, j in B}

and a face F(A, B) = conv{e_i - e_j : i in A, j in B}, both living inside the
hyperplane of vectors with zero coordinate sum.  Membership in either set is a
simple sign/sum condition on the coordinates, implemented here for exact
rational and float64 vectors alike.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from numbers import Rational

__all__ = [
    "Partition",
    "SignedVector",
    "WeightTable",
    "make_partition",
    "cone_contains",
    "face_contains",
    "intersect",
    "subcollection_weight",
    "brute_force_weight",
]

# Absolute per-coordinate tolerance for float-mode membership tests.
FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class Partition:
    """Ordered pair of disjoint index sets inside [n_total]; indices are 1-based.

    The pair is ordered: ``(A, B)`` and ``(B, A)`` are distinct values, and
    ``reverse()`` swaps them.  Either side may be empty, in which case the
    associated cone degenerates to {0}.
    """

    n_total: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if self.n_total < 1:
            raise ValueError("n_total must be a positive integer")
        a = tuple(sorted(self.a))
        b = tuple(sorted(self.b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        for idx in a + b:
            if not (1 <= idx <= self.n_total):
                raise ValueError(f"index {idx} out of range 1..{self.n_total}")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("repeated index within a side")
        overlap = set(a) & set(b)
        if overlap:
            raise ValueError(f"sides overlap on {sorted(overlap)}")

    def reverse(self) -> "Partition":
        """The partition (B, A); an involution."""
        return Partition(self.n_total, self.b, self.a)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.a + self.b))

    def contains(self, other: "Partition") -> bool:
        """Component-wise containment: other.a <= a and other.b <= b."""
        return set(other.a) <= set(self.a) and set(other.b) <= set(self.b)

    def label(self) -> str:
        """Compact label like ``"14,3"``; indices above 9 are dash-joined."""
        if self.n_total <= 9:
            return "".join(map(str, self.a)) + "," + "".join(map(str, self.b))
        return "-".join(map(str, self.a)) + "," + "-".join(map(str, self.b))

    def __repr__(self):
        return f"Partition({self.n_total}, {set(self.a) or '{}'}, {set(self.b) or '{}'})"


def make_partition(n_total: int, a, b) -> Partition:
    """Validated ordered partition (A, B) in [n_total]."""
    return Partition(n_total, tuple(a), tuple(b))


def _is_exact(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class SignedVector:
    """A vector in R^N with zero coordinate sum (an affine dependence pattern).

    Coordinates may be exact rationals (Fractions/ints) or floats; the
    zero-sum invariant is checked exactly in the first case and within
    ``FLOAT_TOL * N`` otherwise.
    """

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("empty coordinate vector")
        total = sum(coords)
        if self.is_exact:
            if total != 0:
                raise ValueError(f"coordinates sum to {total}, expected 0")
        elif abs(total) > FLOAT_TOL * len(coords):
            raise ValueError(f"coordinates sum to {total!r}, expected ~0")

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __neg__(self) -> "SignedVector":
        return SignedVector(tuple(-c for c in self.coords))

    def scaled(self, factor) -> "SignedVector":
        return SignedVector(tuple(c * factor for c in self.coords))

    def positive_support(self, tol: float = FLOAT_TOL) -> tuple[int, ...]:
        """1-based indices of strictly positive coordinates."""
        cut = 0 if self.is_exact else tol
        return tuple(i + 1 for i, c in enumerate(self.coords) if c > cut)

    def negative_support(self, tol: float = FLOAT_TOL) -> tuple[int, ...]:
        cut = 0 if self.is_exact else tol
        return tuple(i + 1 for i, c in enumerate(self.coords) if c < -cut)


def _check_dims(alpha: SignedVector, p: Partition):
    if alpha.n != p.n_total:
        raise ValueError(f"vector length {alpha.n} != partition ambient {p.n_total}")


def cone_contains(alpha: SignedVector, p: Partition) -> bool:
    """Whether alpha lies in the cone C(A, B).

    The condition is sign-wise: alpha_i >= 0 on A, alpha_j <= 0 on B, and
    alpha_k = 0 off A u B.  Together with the zero-sum invariant this
    automatically yields C(A, B) = {0} whenever A or B is empty.
    """
    _check_dims(alpha, p)
    tol = 0 if alpha.is_exact else FLOAT_TOL
    a_set, b_set = set(p.a), set(p.b)
    for i, c in enumerate(alpha.coords, start=1):
        if i in a_set:
            if c < -tol:
                return False
        elif i in b_set:
            if c > tol:
                return False
        elif abs(c) > tol:
            return False
    return True


def face_contains(alpha: SignedVector, p: Partition) -> bool:
    """Whether alpha lies on the face F(A, B): cone membership plus unit sums.

    The extra conditions are sum(alpha_i for i in A) = 1 and
    sum(alpha_j for j in B) = -1.
    """
    if not cone_contains(alpha, p):
        return False
    tol = 0 if alpha.is_exact else FLOAT_TOL * max(1, alpha.n)
    pos = sum(alpha.coords[i - 1] for i in p.a)
    neg = sum(alpha.coords[j - 1] for j in p.b)
    if alpha.is_exact:
        return pos == 1 and neg == -1
    return abs(pos - 1) <= tol and abs(neg + 1) <= tol


def intersect(p1: Partition, p2: Partition) -> Partition:
    """Component-wise intersection: C(A1,B1) n C(A2,B2) = C(A1 n A2, B1 n B2).

    The result may have an empty side, meaning the zero cone.
    """
    if p1.n_total != p2.n_total:
        raise ValueError("partitions live in different ambient sets")
    return Partition(
        p1.n_total,
        tuple(set(p1.a) & set(p2.a)),
        tuple(set(p1.b) & set(p2.b)),
    )


def subcollection_weight(m: int, t: int, u: int) -> int:
    """Signed count of subcollections of {C(A, [m+n]-A) : {} != A <= [m]} by support sizes.

    Over all nonempty collections of distinct nonempty subsets of [m] whose
    intersection has size t and union size u, sums (-1)^(|collection|+1).
    Closed form: (-1)^(u-t) * C(m,t) * C(m-t,u-t), verified against
    :func:`brute_force_weight` for all m <= 4 in the test suite and trusted
    beyond (enumeration is infeasible for m >= 5).
    """
    if not (1 <= t <= u <= m):
        raise ValueError(f"need 1 <= t <= u <= m, got (m,t,u)=({m},{t},{u})")
    return (-1) ** (u - t) * comb(m, t) * comb(m - t, u - t)


@lru_cache(maxsize=None)
def _brute_force_table(m: int) -> dict:
    subsets = [frozenset(s) for r in range(1, m + 1) for s in combinations(range(m), r)]
    n_sub = len(subsets)
    table: dict[tuple[int, int], int] = {}
    for mask in range(1, 1 << n_sub):
        chosen = [subsets[i] for i in range(n_sub) if mask >> i & 1]
        inter = frozenset.intersection(*chosen)
        union = frozenset.union(*chosen)
        if not inter:
            continue
        key = (len(inter), len(union))
        table[key] = table.get(key, 0) + (-1) ** (len(chosen) + 1)
    return table


def brute_force_weight(m: int, t: int, u: int) -> int:
    """Enumeration oracle for :func:`subcollection_weight`; only feasible for m <= 4."""
    if m > 4:
        raise ValueError("brute-force enumeration is limited to m <= 4")
    if not (1 <= t <= u <= m):
        raise ValueError(f"need 1 <= t <= u <= m, got (m,t,u)=({m},{t},{u})")
    return _brute_force_table(m).get((t, u), 0)


@dataclass(frozen=True)
class WeightTable:
    """All weights sigma(m; t, u) for a fixed m, as a (t, u) -> int map."""

    m: int
    entries: dict = field(default_factory=dict)

    @classmethod
    def closed_form(cls, m: int) -> "WeightTable":
        entries = {
            (t, u): subcollection_weight(m, t, u)
            for t in range(1, m + 1)
            for u in range(t, m + 1)
        }
        return cls(m, entries)

    @classmethod
    def brute_force(cls, m: int) -> "WeightTable":
        entries = {
            (t, u): brute_force_weight(m, t, u)
            for t in range(1, m + 1)
            for u in range(t, m + 1)
        }
        return cls(m, entries)
