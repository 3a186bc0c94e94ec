"""Radon polytopes of explicit point configurations.

A configuration of N points spanning R^d affinely determines the subspace
V = {w : sum_i w_i x_i = 0, sum_i w_i = 0} of dimension N-d-1.  A partition
(A, B) is a Radon partition exactly when the face F(A, B) meets V, i.e. when
there is an affine dependence with the partition's sign pattern; vertices of
the polytope P_N cap V are the minimal Radon partitions, supported on d+2
points when the configuration is in general position.

This module builds that structure explicitly: LP-based Radon tests with an
exact-rational fallback on thin margins, minimal-partition enumeration from
(d+2)-subset null vectors, the graded face lattice by up-closure from the
vertices, tolerance detection (two independent methods), Reay-partition
search, and deterministic JSON/DOT export.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from numbers import Rational

import numpy as np
from scipy.linalg import null_space

from .feasibility import phase1_feasibility
from .partitions import Partition, SignedVector

__all__ = [
    "DegenerateConfigError",
    "InternalConsistencyError",
    "NumericDegeneracyWarning",
    "PointConfig",
    "FaceLattice",
    "ReayTriple",
    "subspace_from_points",
    "sample_subspace",
    "is_radon",
    "minimal_partitions",
    "face_lattice",
    "is_tolerant",
    "tolerant_partitions",
    "find_reay",
    "has_reay_partition",
    "export_lattice",
    "line_points",
    "circle_points",
    "pentagon_center_points",
    "moment_curve_points",
    "load_points_csv",
]

# LP decisions with phase-1 residual in (this, AMBIGUOUS) are clearly infeasible;
# residuals inside the band trigger the exact rational re-solve.
_DECIDED_FEASIBLE = 1e-12
_AMBIGUOUS = 1e-9

_KERNEL_RESIDUAL = 1e-10
_GENERAL_POSITION_RTOL = 1e-9

LATTICE_SCHEMA = "radonpoly.lattice.v1"


class DegenerateConfigError(ValueError):
    """Points fail the affine-span or general-position requirement."""


class InternalConsistencyError(RuntimeError):
    """Two supposedly equivalent computations disagreed."""


class NumericDegeneracyWarning(UserWarning):
    """A float decision was too close to call and was re-solved exactly."""


class PointConfig:
    """N points in R^d together with the affine-dependence subspace V.

    Points may be given as floats or as exact rationals; in the second case
    an exact mirror is kept and downstream computations (null vectors,
    membership tests) can run in rational arithmetic.
    """

    def __init__(self, points, kernel: np.ndarray | None = None):
        pts = list(points)
        if not pts:
            raise ValueError("no points given")
        first = tuple(np.atleast_1d(pts[0]).tolist()) if not isinstance(pts[0], (tuple, list)) else pts[0]
        exact = all(
            isinstance(c, Rational)
            for p in pts
            for c in (p if isinstance(p, (tuple, list)) else np.atleast_1d(p).tolist())
        )
        if exact:
            self.exact_points: tuple | None = tuple(
                tuple(Fraction(c) for c in (p if isinstance(p, (tuple, list)) else [p]))
                for p in pts
            )
            self.points = np.array([[float(c) for c in p] for p in self.exact_points])
        else:
            self.exact_points = None
            self.points = np.asarray(pts, dtype=float)
            if self.points.ndim == 1:
                self.points = self.points[:, None]
        self.n, self.d = self.points.shape
        if self.n < self.d + 1:
            raise DegenerateConfigError(f"{self.n} points cannot span R^{self.d} affinely")

        lift = np.vstack([self.points.T, np.ones(self.n)])
        if np.linalg.matrix_rank(lift) < self.d + 1:
            raise DegenerateConfigError("points lie in a proper affine subspace")
        if kernel is None:
            kernel = null_space(lift).T
        self.kernel = np.asarray(kernel, dtype=float)
        if self.kernel.shape != (self.n - self.d - 1, self.n):
            raise DegenerateConfigError(
                f"kernel has shape {self.kernel.shape}, expected ({self.n - self.d - 1}, {self.n})"
            )
        if self.kernel.size:
            resid = max(
                np.abs(lift @ self.kernel.T).max(),
                0.0,
            )
            if resid > _KERNEL_RESIDUAL:
                raise DegenerateConfigError(f"kernel residual {resid:.2e} too large")

    @property
    def codim_subspace_dim(self) -> int:
        return self.n - self.d - 1

    @property
    def kernel_basis(self) -> tuple[SignedVector, ...]:
        return tuple(SignedVector(tuple(row)) for row in self.kernel)

    @property
    def is_exact(self) -> bool:
        return self.exact_points is not None

    def drop_point(self, index: int) -> tuple[np.ndarray, tuple | None]:
        """Raw coordinates with the 1-based point `index` removed."""
        keep = [i for i in range(self.n) if i != index - 1]
        pts = self.points[keep]
        ex = None
        if self.exact_points is not None:
            ex = tuple(self.exact_points[i] for i in keep)
        return pts, ex

    def __repr__(self):
        mode = "exact" if self.is_exact else "float"
        return f"PointConfig(n={self.n}, d={self.d}, {mode})"


def subspace_from_points(points) -> PointConfig:
    """Build the configuration and its dependence subspace from explicit points."""
    return PointConfig(points)


def sample_subspace(n_points: int, d: int, rng) -> PointConfig:
    """Uniformly random Radon configuration via Gram-Schmidt.

    Draws n_points - 1 rotation-invariant vectors in the zero-sum hyperplane,
    orthonormalizes (1, v_1, ..., v_{N-1}) into w_0, ..., w_{N-1}, and reads
    off x_i as the last d coordinates of e_i in the w basis.  The dependence
    subspace of the resulting points is span{w_1, ..., w_{N-d-1}}, which is
    uniformly distributed among codimension-d subspaces of the zero-sum
    hyperplane.
    """
    if n_points < d + 2:
        raise ValueError("need at least d + 2 points")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    n = n_points
    while True:
        g = rng.standard_normal((n, n - 1))
        g -= g.mean(axis=0, keepdims=True)  # project draws into the zero-sum hyperplane
        m = np.hstack([np.ones((n, 1)), g])
        q, r = np.linalg.qr(m)
        if np.abs(np.diag(r)).min() > 1e-10:
            break
    points = q[:, n - d:]
    kernel = q[:, 1:n - d].T
    return PointConfig(points, kernel=kernel)


# -- Radon partition test ----------------------------------------------------


def _radon_system(points, a_idx, b_idx):
    """Equality system for: convex combination of A-points equals one of B-points."""
    d = len(points[0])
    cols = len(a_idx) + len(b_idx)
    rows = []
    rows.append([1] * len(a_idx) + [0] * len(b_idx))
    rows.append([0] * len(a_idx) + [1] * len(b_idx))
    for c in range(d):
        row = [points[i - 1][c] for i in a_idx] + [-points[j - 1][c] for j in b_idx]
        rows.append(row)
    rhs = [1, 1] + [0] * d
    assert all(len(r) == cols for r in rows)
    return rows, rhs


def _radon_feasible(points_float, points_exact, a_idx, b_idx, *, exact: bool = False) -> bool:
    if not a_idx or not b_idx:
        return False
    if exact or points_float is None:
        src = points_exact if points_exact is not None else [
            tuple(Fraction(c) for c in p) for p in points_float
        ]
        rows, rhs = _radon_system(src, a_idx, b_idx)
        return phase1_feasibility(rows, rhs, exact=True).feasible
    rows, rhs = _radon_system(points_float, a_idx, b_idx)
    res = phase1_feasibility(rows, rhs)
    if res.objective <= _DECIDED_FEASIBLE:
        return True
    if res.objective >= _AMBIGUOUS:
        return False
    warnings.warn(
        f"Radon decision margin {res.objective:.2e} below {_AMBIGUOUS}; re-solving exactly",
        NumericDegeneracyWarning,
        stacklevel=3,
    )
    return _radon_feasible(points_float, points_exact, a_idx, b_idx, exact=True)


def is_radon(cfg: PointConfig, p: Partition, *, exact: bool | None = None) -> bool:
    """Whether (A, B) is a Radon partition of the configuration.

    Decided as a small phase-1 linear feasibility problem over the support
    variables; margins thinner than 1e-9 are re-solved in exact rational
    arithmetic (of the float64-rounded coordinates when no exact mirror
    exists).
    """
    if p.n_total != cfg.n:
        raise ValueError(f"partition over [{p.n_total}] against {cfg.n} points")
    force_exact = cfg.is_exact if exact is None else exact
    return _radon_feasible(cfg.points, cfg.exact_points, p.a, p.b, exact=force_exact)


# -- minimal partitions and the face lattice ---------------------------------


def _det_exact(mat: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in mat]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return det


def _null_vector_exact(lift_cols: list[tuple[Fraction, ...]]) -> list[Fraction]:
    # lift_cols: d+2 columns of length d+1; alpha_c = (-1)^c det(minor without column c)
    k = len(lift_cols)
    alpha = []
    for c in range(k):
        minor = [
            [lift_cols[j][r] for j in range(k) if j != c]
            for r in range(k - 1)
        ]
        alpha.append((-1) ** c * _det_exact(minor))
    return alpha


def _null_vector_float(lift_cols: np.ndarray) -> np.ndarray:
    k = lift_cols.shape[1]
    alpha = np.empty(k)
    for c in range(k):
        minor = np.delete(lift_cols, c, axis=1)
        alpha[c] = (-1) ** c * np.linalg.det(minor)
    return alpha


def minimal_partitions(cfg: PointConfig) -> list[tuple[Partition, SignedVector]]:
    """All minimal Radon partitions with their dependence vectors.

    For every (d+2)-subset the affine dependence is the (unique up to scale)
    null vector of the lifted coordinate matrix, computed by cofactor
    expansion; general position guarantees full support on the subset.  Each
    dependence is normalized so its positive part sums to 1 and emitted in
    both orientations.  Float results that look degenerate are re-derived in
    exact rational arithmetic; an exactly vanishing coordinate means the
    configuration violates general position.
    """
    n, d = cfg.n, cfg.d
    results: list[tuple[Partition, SignedVector]] = []
    exact_pts = cfg.exact_points
    lift_f = np.vstack([cfg.points.T, np.ones(cfg.n)])

    for subset in combinations(range(n), d + 2):
        if exact_pts is not None:
            cols = [tuple(exact_pts[i]) + (Fraction(1),) for i in subset]
            alpha = _null_vector_exact(cols)
            if all(a == 0 for a in alpha) or any(a == 0 for a in alpha):
                raise DegenerateConfigError(
                    f"points {tuple(i + 1 for i in subset)} are not in general position"
                )
            results.append(_emit_exact(n, subset, alpha))
            continue
        alpha = _null_vector_float(lift_f[:, subset])
        scale = np.abs(alpha).max()
        if scale == 0.0 or np.abs(alpha).min() <= _GENERAL_POSITION_RTOL * scale:
            cols = [tuple(Fraction(float(c)) for c in cfg.points[i]) + (Fraction(1),)
                    for i in subset]
            alpha_x = _null_vector_exact(cols)
            if all(a == 0 for a in alpha_x) or any(a == 0 for a in alpha_x):
                raise DegenerateConfigError(
                    f"points {tuple(i + 1 for i in subset)} are not in general position"
                )
            warnings.warn(
                f"thin dependence margin on subset {tuple(i + 1 for i in subset)}; "
                "recomputed exactly",
                NumericDegeneracyWarning,
                stacklevel=2,
            )
            alpha = np.array([float(a) for a in alpha_x])
        results.append(_emit_float(n, subset, alpha))

    out: list[tuple[Partition, SignedVector]] = []
    for pair in results:
        out.append(pair)
        p, sv = pair
        out.append((p.reverse(), -sv))
    out.sort(key=lambda t: (t[0].a, t[0].b))
    return out


def _emit_exact(n, subset, alpha) -> tuple[Partition, SignedVector]:
    first = next(a for a in alpha if a != 0)
    if first < 0:
        alpha = [-a for a in alpha]
    pos_sum = sum(a for a in alpha if a > 0)
    alpha = [a / pos_sum for a in alpha]
    coords = [Fraction(0)] * n
    for i, a in zip(subset, alpha):
        coords[i] = a
    a_side = tuple(i + 1 for i, a in zip(subset, alpha) if a > 0)
    b_side = tuple(i + 1 for i, a in zip(subset, alpha) if a < 0)
    return Partition(n, a_side, b_side), SignedVector(tuple(coords))


def _emit_float(n, subset, alpha) -> tuple[Partition, SignedVector]:
    if alpha[np.flatnonzero(alpha)[0]] < 0:
        alpha = -alpha
    pos_sum = alpha[alpha > 0].sum()
    alpha = alpha / pos_sum
    coords = np.zeros(n)
    coords[list(subset)] = alpha
    coords -= coords.sum() / n  # absorb cofactor roundoff into the zero-sum invariant
    a_side = tuple(i + 1 for i, a in zip(subset, alpha) if a > 0)
    b_side = tuple(i + 1 for i, a in zip(subset, alpha) if a < 0)
    return Partition(n, a_side, b_side), SignedVector(tuple(coords.tolist()))


@dataclass(frozen=True)
class FaceLattice:
    """Faces of the Radon polytope, graded by generic dimension |A|+|B|-2-d."""

    n_total: int
    d: int
    vertices: tuple[tuple[Partition, SignedVector], ...]
    faces_by_dim: dict[int, tuple[Partition, ...]]

    @property
    def f_vector(self) -> tuple[int, ...]:
        top = self.n_total - self.d - 2
        return tuple(len(self.faces_by_dim.get(g, ())) for g in range(top + 1))

    def face_set(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {
            (p.a, p.b)
            for faces in self.faces_by_dim.values()
            for p in faces
        }

    def edges(self) -> list[tuple[Partition, Partition]]:
        """Vertex pairs joined by the 1-faces (the polytope's skeleton)."""
        vparts = [p for p, _ in self.vertices]
        out = []
        for face in self.faces_by_dim.get(1, ()):
            ends = [vp for vp in vparts if face.contains(vp)]
            if len(ends) == 2:
                out.append((ends[0], ends[1]))
        return out


def face_lattice(cfg: PointConfig) -> FaceLattice:
    """Every Radon partition, generated as the up-closure of the vertex set.

    A partition is Radon exactly when it contains a minimal one side-wise, so
    the lattice is the superset closure of the vertex partitions, graded by
    support size.
    """
    verts = minimal_partitions(cfg)
    n, d = cfg.n, cfg.d
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for p, _ in verts:
        base_a, base_b = set(p.a), set(p.b)
        free = [i for i in range(1, n + 1) if i not in base_a and i not in base_b]
        for assign in product((0, 1, 2), repeat=len(free)):
            a = set(base_a)
            b = set(base_b)
            for idx, where in zip(free, assign):
                if where == 1:
                    a.add(idx)
                elif where == 2:
                    b.add(idx)
            seen.add((tuple(sorted(a)), tuple(sorted(b))))
    by_dim: dict[int, list[Partition]] = {}
    for a, b in seen:
        g = len(a) + len(b) - 2 - d
        by_dim.setdefault(g, []).append(Partition(n, a, b))
    faces = {g: tuple(sorted(ps, key=lambda p: (p.a, p.b))) for g, ps in by_dim.items()}
    return FaceLattice(n, d, tuple(verts), faces)


# -- tolerance ----------------------------------------------------------------


def _reduced_partition(p: Partition, drop: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    shift = lambda i: i if i < drop else i - 1
    a = tuple(shift(i) for i in p.a if i != drop)
    b = tuple(shift(i) for i in p.b if i != drop)
    return a, b


def is_tolerant(cfg: PointConfig, p: Partition, lattice: FaceLattice | None = None) -> bool:
    """Whether the full-support Radon partition survives deletion of any point.

    Two routes are always compared when available: (a) the definition, an LP
    Radon test of (A - i, B - i) on the remaining points for every i; and
    (b) the face-lattice criterion, the facet having N ridges.  Disagreement
    raises InternalConsistencyError.  For configurations where the lattice
    cannot be built (general-position violation) only route (a) is used.
    """
    n = cfg.n
    if set(p.a) | set(p.b) != set(range(1, n + 1)):
        raise ValueError("tolerance is defined for full-support partitions")
    if not is_radon(cfg, p):
        raise ValueError("tolerance is defined for Radon partitions")

    by_definition = True
    for drop in range(1, n + 1):
        pts, ex = cfg.drop_point(drop)
        a, b = _reduced_partition(p, drop)
        if not _radon_feasible(pts, ex, a, b, exact=cfg.is_exact):
            by_definition = False
            break

    if lattice is None:
        try:
            lattice = face_lattice(cfg)
        except DegenerateConfigError:
            return by_definition
    faces = lattice.face_set()
    ridges = 0
    for drop in range(1, n + 1):
        sub = (
            tuple(i for i in p.a if i != drop),
            tuple(i for i in p.b if i != drop),
        )
        if sub in faces:
            ridges += 1
    by_ridges = ridges == n
    if by_ridges != by_definition:
        raise InternalConsistencyError(
            f"tolerance methods disagree on {p.label()}: "
            f"definition={by_definition}, ridge count={ridges}/{n}"
        )
    return by_definition


def tolerant_partitions(cfg: PointConfig) -> list[Partition]:
    """All full-support tolerant partitions, one orientation each (1 in A)."""
    lattice = face_lattice(cfg)
    top = cfg.n - cfg.d - 2
    out = []
    for p in lattice.faces_by_dim.get(top, ()):
        if len(p.a) + len(p.b) == cfg.n and 1 in p.a:
            if is_tolerant(cfg, p, lattice):
                out.append(p)
    return out


# -- Reay partitions ----------------------------------------------------------


@dataclass(frozen=True)
class ReayTriple:
    """Three pairwise-disjoint sets, each pairing a verified Radon partition."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def label(self) -> str:
        return "|".join("".join(map(str, side)) for side in (self.a, self.b, self.c))


def _pair_checker(cfg: PointConfig):
    cache: dict[tuple, bool] = {}

    def check(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
        key = (x, y) if x < y else (y, x)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = is_radon(cfg, Partition(cfg.n, x, y))
        return hit

    return check


def _canonical_triples(n: int):
    """Unordered triples of disjoint nonempty subsets of [n], each exactly once.

    Assignments are restricted-growth sequences over {none, A, B, C}: the
    first point placed in a set defines A, the next new set B, then C.
    """
    for assign in product((0, 1, 2, 3), repeat=n):
        seen_order = []
        ok = True
        for lab in assign:
            if lab and lab not in seen_order:
                if lab != len(seen_order) + 1:
                    ok = False
                    break
                seen_order.append(lab)
        if not ok or len(seen_order) != 3:
            continue
        sides = ([], [], [])
        for i, lab in enumerate(assign, start=1):
            if lab:
                sides[lab - 1].append(i)
        yield tuple(tuple(s) for s in sides)


def find_reay(cfg: PointConfig, *, max_points: int = 10,
              first_only: bool = False) -> list[ReayTriple]:
    """All Reay partitions: triples (A, B, C) with every pairing Radon.

    Enumerates the 4^N side assignments with pair decisions memoized across
    triples; N is capped because the assignment space grows exponentially.
    """
    if cfg.n > max_points:
        raise ValueError(f"enumeration bound exceeded: {cfg.n} > {max_points}")
    check = _pair_checker(cfg)
    out = []
    for a, b, c in _canonical_triples(cfg.n):
        if check(a, b) and check(a, c) and check(b, c):
            out.append(ReayTriple(a, b, c))
            if first_only:
                break
    out.sort(key=lambda t: (t.a, t.b, t.c))
    return out


def has_reay_partition(cfg: PointConfig, *, max_points: int = 10) -> bool:
    return bool(find_reay(cfg, max_points=max_points, first_only=True))


# -- export -------------------------------------------------------------------


def _coord_payload(sv: SignedVector):
    if sv.is_exact:
        return [str(c) for c in sv.coords]
    return [float(c) for c in sv.coords]


def export_lattice(lat: FaceLattice, fmt: str = "json") -> str:
    """Serialize the lattice deterministically as JSON (schema v1) or DOT."""
    if fmt == "json":
        doc = {
            "schema": LATTICE_SCHEMA,
            "n_points": lat.n_total,
            "dim": lat.d,
            "exact": bool(lat.vertices and lat.vertices[0][1].is_exact),
            "f_vector": list(lat.f_vector),
            "vertices": [
                {
                    "a": list(p.a),
                    "b": list(p.b),
                    "label": p.label(),
                    "coords": _coord_payload(sv),
                }
                for p, sv in lat.vertices
            ],
            "faces": {
                str(g): [
                    {"a": list(p.a), "b": list(p.b), "label": p.label()}
                    for p in lat.faces_by_dim.get(g, ())
                ]
                for g in range(lat.n_total - lat.d - 1)
            },
        }
        return json.dumps(doc, indent=2, sort_keys=True)
    if fmt == "dot":
        lines = ["graph radon_polytope {"]
        for p, _ in lat.vertices:
            lines.append(f'  "{p.label()}";')
        edge_labels = sorted(
            tuple(sorted((u.label(), v.label()))) for u, v in lat.edges()
        )
        for u, v in edge_labels:
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


# -- fixtures and I/O ----------------------------------------------------------


def line_points(n: int) -> PointConfig:
    """x_i = i on the real line, exact."""
    return PointConfig([(Fraction(i),) for i in range(1, n + 1)])


def circle_points(n: int) -> PointConfig:
    """The n-th roots of unity in R^2 (float64)."""
    ang = 2.0 * math.pi * np.arange(n) / n
    return PointConfig(np.column_stack([np.cos(ang), np.sin(ang)]))


def pentagon_center_points() -> PointConfig:
    """Regular pentagon on the unit circle plus its center as the sixth point."""
    ang = 2.0 * math.pi * np.arange(5) / 5
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    return PointConfig(np.vstack([pts, np.zeros((1, 2))]))


def moment_curve_points(n: int, d: int) -> PointConfig:
    """(t, t^2, ..., t^d) at t = 1..n, exact."""
    return PointConfig([
        tuple(Fraction(t) ** e for e in range(1, d + 1)) for t in range(1, n + 1)
    ])


def load_points_csv(path) -> PointConfig:
    """One point per row, d columns; a non-numeric first row is treated as a header."""
    rows: list[list[float]] = []
    with open(path, newline="") as fh:
        for i, rec in enumerate(csv.reader(fh)):
            rec = [c.strip() for c in rec if c.strip() != ""]
            if not rec:
                continue
            try:
                rows.append([float(c) for c in rec])
            except ValueError:
                if i == 0:
                    continue
                raise
    if not rows:
        raise ValueError(f"no points found in {path}")
    return PointConfig(np.asarray(rows))
