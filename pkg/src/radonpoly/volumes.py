"""Conic intrinsic volumes v_k(m, n) of partition cones and Radon probabilities.

v_k(m, n) denotes the k-th conic intrinsic volume of a partition cone C(A, B)
with |A| = m, |B| = n (well defined: cones with equal side sizes are
isometric, and v_k(m, n) = v_k(n, m)).  Engines:

  * k = 0        : exactly 1 / binom(m+n, m), as a rational.
  * m = 1        : v_k(1, n) = binom(n, k) g_k(-1/(k+1)) g_{n-k}(1/(k+1)).
  * m = 2, 3     : closed combinations of g values at +-1/(k+1).
  * k = m+n-1    : sum_{i<m} (-1)^i binom(m, i) g_{n+i}(-1/(m+n)).
  * general      : inclusion-exclusion over the cone family
                   {C(A, [m+n]-A) : {} != A <= [m]}, whose union is a
                   subspace-plus-simplicial-cone with known volumes;
                   recursion on the first side size.

The probability that a fixed partition with side sizes (m, n) of m+n
independent standard Gaussian points in R^d is a Radon partition is

    P_d(m, n) = 2 * sum over odd i >= 1 of v_{d+i}(m, n),

with v_k(m, n) = 0 for k >= m+n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .gfun import GEvaluator, default_evaluator
from .partitions import subcollection_weight

__all__ = [
    "VkRequest",
    "v0_exact",
    "vk",
    "vk_value",
    "radon_probability",
    "check_gauss_bonnet",
    "check_symmetry",
    "balanced_probe",
    "GaussBonnetReport",
    "SymmetryReport",
    "BalanceProbe",
]

_METHODS = ("auto", "m1", "m2", "m3", "kmax", "general")

# Per-g-evaluation tolerance floor; below this float64 quadrature cannot
# certify, so engine budgets are clamped here.
_G_TOL_FLOOR = 1e-12


def v0_exact(m: int, n: int) -> Fraction:
    """v_0(m, n) = 1 / binom(m+n, m), exactly."""
    if m < 1 or n < 1:
        raise ValueError("side sizes must be >= 1")
    return Fraction(1, comb(m + n, m))


def _binom0(n: int, k: int) -> int:
    # binomial with the convention binom(n, k) = 0 for k < 0 or k > n
    return comb(n, k) if 0 <= k <= n else 0


def _g_budget(tol: float, mass: float) -> float:
    return max(tol / (2.0 * max(mass, 1.0)), _G_TOL_FLOOR)


def _vk_m1(n: int, k: int, tol: float, ev: GEvaluator) -> float:
    """v_k(1, n) for k >= 1."""
    if k > n or k < 1:
        return 0.0
    c = comb(n, k)
    gt = _g_budget(tol, 2 * c)
    x = 1.0 / (k + 1)
    return c * ev.g(k, -x, gt) * ev.g(n - k, x, gt)


def _vk_m2(n: int, k: int, tol: float, ev: GEvaluator) -> float:
    """v_k(2, n) for k >= 1, via the closed two-cone inclusion-exclusion form."""
    if k < 1 or k > n + 1:
        return 0.0
    x = 1.0 / (k + 1)
    c1 = _binom0(n, k - 1)
    c2 = _binom0(n, k)
    c3 = _binom0(n + 1, k)
    gt = _g_budget(tol, c1 + 2 * (c2 + c3))
    total = 0.0
    if c1:
        total += c1 * ev.g(k - 1, -x, gt) * ev.g(n - k + 1, x, gt)
    inner = 0.0
    if c2:
        inner += c2 * ev.g(n - k, x, gt)
    if c3:
        inner -= c3 * ev.g(n - k + 1, x, gt)
    if c2 or c3:
        total += 2.0 * ev.g(k, -x, gt) * inner
    return total


def _vk_m3(n: int, k: int, tol: float, ev: GEvaluator) -> float:
    """v_k(3, n) for k >= 1, via the closed three-cone inclusion-exclusion form."""
    if k < 1 or k > n + 2:
        return 0.0
    x = 1.0 / (k + 1)
    ca = _binom0(n, k - 2)
    cb1, cb2 = _binom0(n, k - 1), _binom0(n + 1, k - 1)
    cc1, cc2, cc3 = _binom0(n, k), _binom0(n + 1, k), _binom0(n + 2, k)
    gt = _g_budget(tol, ca + 3 * (cb1 + cb2) + 3 * (cc1 + 2 * cc2 + cc3))

    def gm(ell):  # g_ell(-1/(k+1)); only called with ell >= 0
        return ev.g(ell, -x, gt)

    def gp(ell):
        return ev.g(ell, x, gt)

    total = 0.0
    if ca:
        total += ca * gm(k - 2) * gp(n - k + 2)
    inner = 0.0
    if cb1:
        inner += cb1 * gp(n - k + 1)
    if cb2:
        inner -= cb2 * gp(n - k + 2)
    if cb1 or cb2:
        total += 3.0 * gm(k - 1) * inner
    inner = 0.0
    if cc1:
        inner += cc1 * gp(n - k)
    if cc2:
        inner -= 2.0 * cc2 * gp(n - k + 1)
    if cc3:
        inner += cc3 * gp(n - k + 2)
    if cc1 or cc2 or cc3:
        total += 3.0 * gm(k) * inner
    return total


def _vk_kmax(m: int, n: int, tol: float, ev: GEvaluator) -> float:
    """v_{m+n-1}(m, n) = sum_{i=0}^{m-1} (-1)^i binom(m, i) g_{n+i}(-1/(m+n))."""
    mass = sum(comb(m, i) for i in range(m))
    gt = _g_budget(tol, mass)
    x = -1.0 / (m + n)
    return math.fsum((-1) ** i * comb(m, i) * ev.g(n + i, x, gt) for i in range(m))


def _norm_factor(ell: int, r: Fraction) -> tuple[int, Fraction]:
    # g_0 is identically 1, so its argument is irrelevant to the product key
    return (0, Fraction(0)) if ell == 0 else (ell, r)


@lru_cache(maxsize=None)
def _general_terms(m: int, n: int, k: int):
    """Exact expansion of v_k(m, n), k >= 1, as sum of c * g_a(x) * g_b(y) terms.

    Returned as a sorted tuple of ((a, x, b, y), c) with Fraction arguments
    and coefficients.  The recursion subtracts, for every admissible support
    pattern (t, u) != (m, m), the signed subcollection weight times the
    expansion of v_k(t, m+n-u), and adds the union term: zero for k < m-1,
    else v_{k-m+1}(C_n(1/m)) whose factors sit at +-1/(m+k-m+1).
    """
    if k < 1 or k >= m + n:
        return ()
    if m == 1:
        if k > n:
            return ()
        x = Fraction(1, k + 1)
        key = (*_norm_factor(k, -x), *_norm_factor(n - k, x))
        return ((key, Fraction(comb(n, k))),)
    acc: dict[tuple, Fraction] = {}
    j = k - (m - 1)
    if 0 <= j <= n:
        x = Fraction(1, m + j)
        key = (*_norm_factor(j, -x), *_norm_factor(n - j, x))
        acc[key] = acc.get(key, Fraction(0)) + comb(n, j)
    for t in range(1, m):
        for u in range(t, m + 1):
            w = subcollection_weight(m, t, u)
            for key, c in _general_terms(t, m + n - u, k):
                acc[key] = acc.get(key, Fraction(0)) - w * c
    return tuple(sorted((key, c) for key, c in acc.items() if c != 0))


def _vk_general(m: int, n: int, k: int, tol: float, ev: GEvaluator) -> float:
    terms = _general_terms(m, n, k)
    if not terms:
        return 0.0
    mass = float(sum(abs(c) for _, c in terms))
    gt = _g_budget(tol, 2.0 * mass)
    vals = [
        float(c) * ev.g(a, float(x), gt) * ev.g(b, float(y), gt)
        for (a, x, b, y), c in terms
    ]
    return math.fsum(vals)


@dataclass(frozen=True)
class VkRequest:
    """A request for v_k(m, n) with an engine selection and error budget.

    By symmetry v_k(m, n) = v_k(n, m); `auto` dispatch normalizes to m <= n
    and picks the cheapest sufficient engine.  Explicit methods require the
    matching shape (`m1` needs a side of size 1, `kmax` needs k = m+n-1, ...).
    """

    m: int
    n: int
    k: int
    method: str = "auto"
    tol: float = 1e-9

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("side sizes must be >= 1")
        if self.k < 0 or self.k > self.m + self.n - 1:
            raise ValueError(f"need 0 <= k <= m+n-1, got k={self.k}")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}; options: {_METHODS}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        small = min(self.m, self.n)
        if self.method in ("m1", "m2", "m3") and small != int(self.method[1]):
            raise ValueError(f"method {self.method} requires min(m, n) = {self.method[1]}")
        if self.method == "kmax" and self.k != self.m + self.n - 1:
            raise ValueError("method kmax requires k = m + n - 1")


def vk(req: VkRequest, evaluator: GEvaluator | None = None) -> float:
    """Evaluate v_k(m, n) per the request; k = 0 always routes to the exact rational."""
    ev = evaluator or default_evaluator
    m, n, k, tol = req.m, req.n, req.k, req.tol
    if k == 0:
        return float(v0_exact(m, n))
    method = req.method
    if method == "auto":
        m, n = min(m, n), max(m, n)
        if m <= 3:
            method = f"m{m}"
        elif k == m + n - 1:
            method = "kmax"
        else:
            method = "general"
    if method in ("m1", "m2", "m3"):
        m, n = min(m, n), max(m, n)
        return {"m1": _vk_m1, "m2": _vk_m2, "m3": _vk_m3}[method](n, k, tol, ev)
    if method == "kmax":
        return _vk_kmax(m, n, tol, ev)
    return _vk_general(m, n, k, tol, ev)


def vk_value(m: int, n: int, k: int, method: str = "auto", tol: float = 1e-9,
             evaluator: GEvaluator | None = None) -> float:
    return vk(VkRequest(m, n, k, method, tol), evaluator)


def radon_probability(d: int, m: int, n: int, tol: float = 1e-9,
                      evaluator: GEvaluator | None = None) -> float:
    """P_d(m, n) = 2 sum_{i >= 1 odd} v_{d+i}(m, n); exactly 0 when m+n < d+2."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    if m < 1 or n < 1:
        raise ValueError("side sizes must be >= 1")
    if m + n < d + 2:
        return 0.0
    ks = list(range(d + 1, m + n, 2))
    term_tol = tol / (2.0 * len(ks))
    return 2.0 * math.fsum(vk_value(m, n, k, "auto", term_tol, evaluator) for k in ks)


@dataclass(frozen=True)
class GaussBonnetReport:
    m: int
    n: int
    even_sum: float
    odd_sum: float
    tol: float

    @property
    def residuals(self) -> tuple[float, float]:
        return abs(self.even_sum - 0.5), abs(self.odd_sum - 0.5)

    @property
    def ok(self) -> bool:
        return max(self.residuals) < self.tol

    def to_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n,
            "even_sum": self.even_sum, "odd_sum": self.odd_sum,
            "residual_even": self.residuals[0], "residual_odd": self.residuals[1],
            "tol": self.tol, "ok": self.ok,
        }


def check_gauss_bonnet(m: int, n: int, tol: float = 1e-7,
                       evaluator: GEvaluator | None = None) -> GaussBonnetReport:
    """Both parity sums of v_k(m, n) must equal 1/2 for a non-subspace cone."""
    term_tol = tol / (2.0 * (m + n))
    values = [float(v0_exact(m, n))]
    values += [vk_value(m, n, k, "auto", term_tol, evaluator) for k in range(1, m + n)]
    even = math.fsum(values[0::2])
    odd = math.fsum(values[1::2])
    return GaussBonnetReport(m, n, even, odd, tol)


def _literal_engine_value(m: int, n: int, k: int, tol: float, ev: GEvaluator) -> float:
    """v_k via the engine matching the *literal* first side, without swapping.

    Used by the symmetry check so that v_k(m, n) and v_k(n, m) travel
    through genuinely different formulas whenever one exists.
    """
    if k == 0:
        return float(v0_exact(m, n))
    if k == m + n - 1:
        return _vk_kmax(m, n, tol, ev)
    if m == 1:
        return _vk_m1(n, k, tol, ev)
    if m == 2:
        return _vk_m2(n, k, tol, ev)
    if m == 3:
        return _vk_m3(n, k, tol, ev)
    return _vk_general(m, n, k, tol, ev)


@dataclass(frozen=True)
class SymmetryReport:
    m: int
    n: int
    diffs: tuple[float, ...]
    tol: float

    @property
    def max_diff(self) -> float:
        return max(self.diffs)

    @property
    def ok(self) -> bool:
        return self.max_diff < self.tol

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "max_diff": self.max_diff,
                "tol": self.tol, "ok": self.ok}


def check_symmetry(m: int, n: int, tol: float = 1e-7,
                   evaluator: GEvaluator | None = None) -> SymmetryReport:
    """|v_k(m, n) - v_k(n, m)| for all k, computed through independent paths.

    At k = m+n-1 this compares the two alternating-binomial g-sums, whose
    equality is the symmetry identity in its sharpest form.
    """
    ev = evaluator or default_evaluator
    diffs = []
    for k in range(m + n):
        va = _literal_engine_value(m, n, k, tol / 4.0, ev)
        vb = _literal_engine_value(n, m, k, tol / 4.0, ev)
        diffs.append(abs(va - vb))
    return SymmetryReport(m, n, tuple(diffs), tol)


@dataclass(frozen=True)
class BalanceProbe:
    """Ordering probe (not a proof) of P_d over partition balance for fixed N, d.

    Records P_d(a, N-a) for a = 1..floor(N/2); `monotone` reports whether the
    sequence increases strictly with a, i.e. whether more balanced splits
    were more likely on this grid point.
    """

    n_points: int
    d: int
    probabilities: tuple[float, ...] = field(default_factory=tuple)

    @property
    def monotone(self) -> bool:
        p = self.probabilities
        return all(p[i] < p[i + 1] for i in range(len(p) - 1))

    def to_dict(self) -> dict:
        return {"N": self.n_points, "d": self.d,
                "p_by_min_side": list(self.probabilities), "monotone": self.monotone}


def balanced_probe(n_points: int, d: int, tol: float = 1e-9,
                   evaluator: GEvaluator | None = None) -> BalanceProbe:
    probs = tuple(
        radon_probability(d, a, n_points - a, tol, evaluator)
        for a in range(1, n_points // 2 + 1)
    )
    return BalanceProbe(n_points, d, probs)
