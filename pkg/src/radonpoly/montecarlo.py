"""Seeded Monte Carlo estimation of Radon / Reay / tolerance probabilities.

Sampling is counter-based: sample index i always consumes the same Philox
counter block for a given seed, so estimates are bit-identical for any
worker count or batch split.  Normal variates use the inverse CDF applied to
53-bit uniforms (u = (raw >> 11) * 2^-53 + 2^-54), chosen over Box-Muller /
ziggurat because it consumes a fixed number of words per variate and is
platform-stable.

Per-sample Radon structure is derived from the minimal-partition patterns of
every (d+2)-subset (the sign pattern of the subset's affine dependence),
batched across samples with cofactor determinants; a fixed partition is
Radon exactly when some pattern is contained in it side-wise.  This matches
the LP-based geometry tests on general-position inputs, which Gaussian
clouds are almost surely.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.special import ndtri
from scipy.stats import chi2_contingency

from .geometry import sample_subspace

__all__ = [
    "Estimate",
    "GaussianStream",
    "sample_gaussian_points",
    "estimate_partition_probability",
    "estimate_reay_probability",
    "estimate_tolerance_probability",
    "compare_samplers",
    "SamplerComparison",
]

_BLOCK = 8192


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo frequency with its 3-sigma (99.7%) half-width."""

    p_hat: float
    samples: int
    ci_half_width: float
    seed: int
    workers: int

    def to_dict(self) -> dict:
        return {
            "p_hat": self.p_hat,
            "samples": self.samples,
            "ci": self.ci_half_width,
            "seed": self.seed,
            "workers": self.workers,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _make_estimate(hits: int, samples: int, seed: int, workers: int) -> Estimate:
    p = hits / samples
    ci = 3.0 * math.sqrt(p * (1.0 - p) / samples)
    return Estimate(p, samples, ci, seed, workers)


class GaussianStream:
    """Counter-based stream of N x d standard-normal clouds, keyed by sample index."""

    def __init__(self, seed: int, n_points: int, d: int):
        self.seed = int(seed)
        self.n_points = n_points
        self.d = d
        per = n_points * d
        self._words = -(-per // 4) * 4  # Philox counters advance in 4-word blocks

    def batch(self, lo: int, hi: int) -> np.ndarray:
        """Clouds for sample indices [lo, hi), shape (hi-lo, n_points, d)."""
        if hi <= lo:
            return np.empty((0, self.n_points, self.d))
        bg = np.random.Philox(key=self.seed)
        bg.advance(lo * self._words // 4)
        raw = bg.random_raw((hi - lo) * self._words).reshape(hi - lo, self._words)
        u = (raw >> np.uint64(11)) * 2.0**-53 + 2.0**-54
        z = ndtri(u[:, : self.n_points * self.d])
        return z.reshape(hi - lo, self.n_points, self.d)

    def points(self, index: int) -> np.ndarray:
        return self.batch(index, index + 1)[0]


def sample_gaussian_points(n_points: int, d: int, stream, index: int = 0) -> np.ndarray:
    """One cloud of n_points standard Gaussians in R^d from a seeded stream."""
    if not isinstance(stream, GaussianStream):
        stream = GaussianStream(int(stream), n_points, d)
    if (stream.n_points, stream.d) != (n_points, d):
        raise ValueError("stream was created for a different cloud shape")
    return stream.points(index)


# -- batched minimal-partition patterns ----------------------------------------


def _dets(mats: np.ndarray) -> np.ndarray:
    k = mats.shape[-1]
    if k == 1:
        return mats[..., 0, 0]
    if k == 2:
        return mats[..., 0, 0] * mats[..., 1, 1] - mats[..., 0, 1] * mats[..., 1, 0]
    if k == 3:
        a, b, c = mats[..., 0, 0], mats[..., 0, 1], mats[..., 0, 2]
        d_, e, f = mats[..., 1, 0], mats[..., 1, 1], mats[..., 1, 2]
        g, h, i = mats[..., 2, 0], mats[..., 2, 1], mats[..., 2, 2]
        return a * (e * i - f * h) - b * (d_ * i - f * g) + c * (d_ * h - e * g)
    return np.linalg.det(mats)


def _batch_patterns(pts: np.ndarray):
    """Sign patterns of the affine dependence on every (d+2)-subset.

    Returns (subsets, P, M): bitmask arrays of the positive/negative supports,
    shape (batch, n_subsets), bit i set for 0-based point i.
    """
    batch, n, d = pts.shape
    lift = np.concatenate([pts, np.ones((batch, n, 1))], axis=2)
    subsets = list(combinations(range(n), d + 2))
    P = np.zeros((batch, len(subsets)), dtype=np.uint32)
    M = np.zeros((batch, len(subsets)), dtype=np.uint32)
    for s, sub in enumerate(subsets):
        cols = lift[:, sub, :]  # (batch, d+2, d+1); rows are lifted points
        alpha = np.empty((batch, d + 2))
        for c in range(d + 2):
            keep = [j for j in range(d + 2) if j != c]
            alpha[:, c] = (-1) ** c * _dets(cols[:, keep, :])
        for c, orig in enumerate(sub):
            bit = np.uint32(1 << orig)
            P[:, s] |= np.where(alpha[:, c] > 0, bit, np.uint32(0))
            M[:, s] |= np.where(alpha[:, c] < 0, bit, np.uint32(0))
    return subsets, P, M


def _contained(P, M, x_mask: int, y_mask: int):
    """Pattern fits side-wise into (X, Y) in either orientation (vectorized)."""
    inv_x = np.uint32(~np.uint32(x_mask))
    inv_y = np.uint32(~np.uint32(y_mask))
    fwd = ((P & inv_x) == 0) & ((M & inv_y) == 0)
    rev = ((P & inv_y) == 0) & ((M & inv_x) == 0)
    return fwd | rev


# -- per-kind block counters -----------------------------------------------------


def _count_radon_block(d: int, m: int, n: int, seed: int, lo: int, hi: int) -> int:
    stream = GaussianStream(seed, m + n, d)
    pts = stream.batch(lo, hi)
    _, P, M = _batch_patterns(pts)
    a_mask = (1 << m) - 1
    b_mask = ((1 << (m + n)) - 1) ^ a_mask
    ok = np.zeros(pts.shape[0], dtype=bool)
    for s in range(P.shape[1]):
        ok |= _contained(P[:, s], M[:, s], a_mask, b_mask)
    return int(ok.sum())


@lru_cache(maxsize=None)
def _pair_matchings_6():
    """The 15 partitions of {0..5} into three pairs, as bitmask triples."""
    out = []
    for j in range(1, 6):
        p1 = (1 << 0) | (1 << j)
        rest = [i for i in range(1, 6) if i != j]
        for k in range(1, 4):
            p2 = (1 << rest[0]) | (1 << rest[k])
            others = [i for i in rest[1:] if i != rest[k]]
            p3 = (1 << others[0]) | (1 << others[1])
            out.append((p1, p2, p3))
    return tuple(out)


def _count_reay_block_6_2(seed: int, lo: int, hi: int) -> int:
    stream = GaussianStream(seed, 6, 2)
    pts = stream.batch(lo, hi)
    subsets, P, _ = _batch_patterns(pts)
    sub_index = {frozenset(s): i for i, s in enumerate(subsets)}
    crossing: dict[tuple[int, int], np.ndarray] = {}

    def cross(pa: int, pb: int) -> np.ndarray:
        key = (pa, pb) if pa < pb else (pb, pa)
        hit = crossing.get(key)
        if hit is None:
            union = pa | pb
            s = sub_index[frozenset(i for i in range(6) if union >> i & 1)]
            hit = crossing[key] = (P[:, s] == pa) | (P[:, s] == pb)
        return hit

    ok = np.zeros(pts.shape[0], dtype=bool)
    for pa, pb, pc in _pair_matchings_6():
        ok |= cross(pa, pb) & cross(pa, pc) & cross(pb, pc)
    return int(ok.sum())


@lru_cache(maxsize=None)
def _canonical_triple_masks(n: int):
    """Unordered triples of disjoint nonempty subsets of n points, as masks."""
    out = []
    for assign in np.ndindex(*([4] * n)):
        order = []
        ok = True
        for lab in assign:
            if lab and lab not in order:
                if lab != len(order) + 1:
                    ok = False
                    break
                order.append(lab)
        if not ok or len(order) != 3:
            continue
        masks = [0, 0, 0]
        for i, lab in enumerate(assign):
            if lab:
                masks[lab - 1] |= 1 << i
        out.append(tuple(masks))
    return tuple(out)


def _count_reay_block_general(n: int, d: int, seed: int, lo: int, hi: int) -> int:
    stream = GaussianStream(seed, n, d)
    pts = stream.batch(lo, hi)
    _, P, M = _batch_patterns(pts)
    triples = _canonical_triple_masks(n)
    hits = 0
    for row in range(pts.shape[0]):
        pats = list(zip(P[row].tolist(), M[row].tolist()))
        memo: dict[tuple[int, int], bool] = {}

        def radon(x: int, y: int) -> bool:
            key = (x, y) if x < y else (y, x)
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = any(
                    (p & ~x) == 0 and (mm & ~y) == 0 or (p & ~y) == 0 and (mm & ~x) == 0
                    for p, mm in pats
                )
            return hit

        for a, b, c in triples:
            if radon(a, b) and radon(a, c) and radon(b, c):
                hits += 1
                break
    return hits


def _count_tolerance_block(n: int, d: int, seed: int, lo: int, hi: int) -> int:
    stream = GaussianStream(seed, n, d)
    pts = stream.batch(lo, hi)
    subsets, P, M = _batch_patterns(pts)
    avoiding = [
        [s for s, sub in enumerate(subsets) if i not in sub] for i in range(n)
    ]
    full = (1 << n) - 1
    ok = np.zeros(pts.shape[0], dtype=bool)
    for a_bits in range(1, full, 2):  # point 0 always on the A side
        b_bits = full ^ a_bits
        if b_bits == 0:
            continue
        good = np.ones(pts.shape[0], dtype=bool)
        for i in range(n):
            found = np.zeros(pts.shape[0], dtype=bool)
            for s in avoiding[i]:
                found |= _contained(P[:, s], M[:, s], a_bits, b_bits)
            good &= found
            if not good.any():
                break
        ok |= good
    return int(ok.sum())


def _count_block(kind: str, params: tuple, seed: int, lo: int, hi: int) -> int:
    if kind == "radon":
        d, m, n = params
        return _count_radon_block(d, m, n, seed, lo, hi)
    if kind == "reay":
        n, d = params
        if (n, d) == (6, 2):
            return _count_reay_block_6_2(seed, lo, hi)
        return _count_reay_block_general(n, d, seed, lo, hi)
    if kind == "tolerance":
        n, d = params
        return _count_tolerance_block(n, d, seed, lo, hi)
    raise ValueError(f"unknown simulation kind {kind!r}")


def _run(kind: str, params: tuple, samples: int, seed: int, workers: int) -> int:
    blocks = [(lo, min(lo + _BLOCK, samples)) for lo in range(0, samples, _BLOCK)]
    if workers <= 1:
        return sum(_count_block(kind, params, seed, lo, hi) for lo, hi in blocks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_count_block, kind, params, seed, lo, hi) for lo, hi in blocks
        ]
        return sum(f.result() for f in futures)


# -- public estimators ------------------------------------------------------------


def estimate_partition_probability(d: int, m: int, n: int, samples: int,
                                   seed: int, workers: int = 1) -> Estimate:
    """Frequency with which ({1..m}, {m+1..m+n}) is Radon for Gaussian clouds in R^d."""
    if m < 1 or n < 1 or m + n < 2:
        raise ValueError("need m, n >= 1")
    if m + n < d + 2:
        return _make_estimate(0, samples, seed, workers)
    hits = _run("radon", (d, m, n), samples, seed, workers)
    return _make_estimate(hits, samples, seed, workers)


def estimate_reay_probability(n_points: int, d: int, samples: int,
                              seed: int, workers: int = 1) -> Estimate:
    """Frequency with which a Gaussian cloud admits a Reay partition.

    (6, 2) is served by a vectorized segment-pairing kernel; other shapes run
    the general per-sample search (enumeration bound n_points <= 10).
    """
    if n_points > 10:
        raise ValueError("Reay enumeration bound is n_points <= 10")
    hits = _run("reay", (n_points, d), samples, seed, workers)
    return _make_estimate(hits, samples, seed, workers)


def estimate_tolerance_probability(n_points: int, d: int, samples: int,
                                   seed: int, workers: int = 1) -> Estimate:
    """Frequency with which a Gaussian cloud has a full-support tolerant partition."""
    if n_points > 16:
        raise ValueError("tolerance enumeration bound is n_points <= 16")
    hits = _run("tolerance", (n_points, d), samples, seed, workers)
    return _make_estimate(hits, samples, seed, workers)


# -- sampler comparison ------------------------------------------------------------


@dataclass(frozen=True)
class SamplerComparison:
    """Chi-square homogeneity of minimal-partition type counts between samplers."""

    n_points: int
    d: int
    samples: int
    p_value: float
    dof: int
    n_types: int

    def to_dict(self) -> dict:
        return {
            "N": self.n_points, "d": self.d, "samples": self.samples,
            "p_value": self.p_value, "dof": self.dof, "n_types": self.n_types,
        }


def _type_counts(pts: np.ndarray) -> dict[tuple[int, int], int]:
    """Counts of the orientation-canonical split of every (d+2)-subset."""
    subsets, P, M = _batch_patterns(pts)
    counts: dict[tuple[int, int], int] = {}
    for s in range(len(subsets)):
        canon = np.minimum(P[:, s], M[:, s])
        vals, cnt = np.unique(canon, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            counts[(s, v)] = counts.get((s, v), 0) + int(c)
    return counts


def _chi2_homogeneity(counts_a: dict, counts_b: dict) -> tuple[float, int, int]:
    keys = sorted(set(counts_a) | set(counts_b))
    table = np.array([
        [counts_a.get(k, 0) for k in keys],
        [counts_b.get(k, 0) for k in keys],
    ])
    keep = table.sum(axis=0) > 0
    table = table[:, keep]
    res = chi2_contingency(table)
    return float(res.pvalue), int(res.dof), int(table.shape[1])


def compare_samplers(n_points: int, d: int, samples: int, seed: int) -> SamplerComparison:
    """Minimal-partition type frequencies: Gram-Schmidt subspaces vs Gaussian clouds.

    Both samplers induce the uniform distribution on Radon configurations, so
    the per-subset split-type counts should be homogeneous; reports the
    chi-square p-value over the pooled contingency table.
    """
    stream = GaussianStream(seed, n_points, d)
    counts_g = _type_counts(stream.batch(0, samples))

    rng = np.random.default_rng([seed, 0x5D5])
    pts = np.stack([sample_subspace(n_points, d, rng).points for _ in range(samples)])
    counts_s = _type_counts(pts)

    p, dof, ntypes = _chi2_homogeneity(counts_g, counts_s)
    return SamplerComparison(n_points, d, samples, p, dof, ntypes)
