"""Minimise the optimal packing area over configurations with a fixed permutation.

The objective (the exact optimum from :mod:`anchorpack.solver`, in float
mode) is only piecewise smooth, so the search is a derivative-free pattern
search: poll coordinate, pairwise-diagonal and a few random directions,
halve the step when nothing improves, stop when the step drops below ``tol``.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .closed_forms import tight_config_for
from .geometry import Configuration, InvalidConfiguration, Point, Scalar
from .permutations import Permutation, inverse, permutation_of
from .solver import max_area, origin_maximal_rects, solve_max

MARGIN = 1e-6
MAX_DENOMINATOR = 10**6


def local_min_certificate(c: Configuration) -> Scalar:
    """Largest difference between the areas of the maximal origin rectangles.

    It vanishes at a locally minimal configuration.
    """
    areas = [r.area for r in origin_maximal_rects(c)]
    return max(areas) - min(areas)


@dataclass(frozen=True)
class MinimaxReport:
    permutation: Permutation
    best_config: Configuration
    best_area: float
    certificate: float
    restarts: int
    converged: bool
    exact_config: Configuration | None = None
    exact_area: Fraction | None = None
    evaluations: int = 0
    runs: tuple = field(default=(), repr=False)


def _chain(vals: list[float], margin: float) -> list[float]:
    """Smallest change making ``vals`` increase by >= margin inside [margin, 1]."""
    out = list(vals)
    prev = 0.0
    for i, v in enumerate(out):
        out[i] = max(v, prev + margin)
        prev = out[i]
    nxt = 1.0 + margin
    for i in range(len(out) - 1, -1, -1):
        out[i] = min(out[i], nxt - margin)
        nxt = out[i]
    return out


class _Problem:
    """Vector <-> configuration mapping for one permutation."""

    def __init__(self, perm: Permutation, margin: float = MARGIN):
        self.perm = perm
        self.L = len(perm)
        self.margin = margin
        # positions (0-based) listed by increasing y-rank
        self.by_rank = sorted(range(self.L), key=lambda i: perm.values[i])

    def project(self, v: Sequence[float]) -> tuple[float, ...]:
        L = self.L
        xs = _chain([min(max(a, 0.0), 1.0) for a in v[:L]], self.margin)
        ys_ranked = _chain([min(max(v[L + i], 0.0), 1.0) for i in self.by_rank], self.margin)
        ys = [0.0] * L
        for r, i in enumerate(self.by_rank):
            ys[i] = ys_ranked[r]
        return tuple(xs) + tuple(ys)

    def config(self, v: Sequence[float]) -> Configuration:
        L = self.L
        return Configuration.from_coords(zip(v[:L], v[L:]))

    def vector(self, c: Configuration) -> tuple[float, ...]:
        pts = c.points[1:]
        return tuple(float(p.x) for p in pts) + tuple(float(p.y) for p in pts)

    def random_start(self, rng: random.Random) -> tuple[float, ...]:
        L = self.L
        xs = sorted(rng.uniform(0, 1) for _ in range(L))
        ys_sorted = sorted(rng.uniform(0, 1) for _ in range(L))
        ys = [ys_sorted[self.perm.values[i] - 1] for i in range(L)]
        return self.project(xs + ys)


def pattern_search(f: Callable[[tuple], float], x0: Sequence[float],
                   project: Callable[[Sequence[float]], tuple],
                   step: float = 0.125, tol: float = 1e-4,
                   rng: random.Random | None = None, n_random: int | None = None,
                   max_evals: int = 50_000):
    """Opportunistic pattern search with step halving.

    Returns (x, f(x), converged, evaluations); ``converged`` means the step
    fell below ``tol`` before ``max_evals`` evaluations.
    """
    rng = rng or random.Random(0)
    x = project(x0)
    fx = f(x)
    evals = 1
    dim = len(x)
    n_random = dim if n_random is None else n_random
    base = []
    for i in range(dim):
        e = [0.0] * dim
        e[i] = 1.0
        base.append(tuple(e))
        base.append(tuple(-a for a in e))
    for i in range(dim):
        for j in range(i + 1, dim):
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    e = [0.0] * dim
                    e[i], e[j] = si, sj
                    base.append(tuple(e))
    last = None
    while step >= tol and evals < max_evals:
        extra = []
        for _ in range(n_random):
            g = [rng.gauss(0, 1) for _ in range(dim)]
            norm = math.sqrt(sum(a * a for a in g)) or 1.0
            extra.append(tuple(a / norm for a in g))
        dirs = ([last] if last is not None else []) + base + extra
        improved = False
        for d in dirs:
            y = project([a + step * b for a, b in zip(x, d)])
            if y == x:
                continue
            fy = f(y)
            evals += 1
            if fy < fx - 1e-15:
                x, fx, last, improved = y, fy, d, True
                break
            if evals >= max_evals:
                break
        if not improved:
            step /= 2
            last = None
    return x, fx, step < tol, evals


def _starts(perm: Permutation) -> list[Configuration]:
    seeds = []
    own = tight_config_for(perm.values)
    if own is not None:
        seeds.append(own)
    else:
        inv = tight_config_for(inverse(perm).values)
        if inv is not None:
            seeds.append(inv.reflected())
    return [s.to_float() for s in seeds]


def _run_one(args):
    perm_values, start, tol, run_seed, max_evals = args
    perm = Permutation(perm_values)
    prob = _Problem(perm)
    rng = random.Random(run_seed)
    x0 = start if start is not None else prob.random_start(rng)
    cache: dict = {}

    def f(v):
        if v not in cache:
            try:
                cache[v] = float(max_area(prob.config(v)))
            except InvalidConfiguration:
                cache[v] = math.inf
        return cache[v]

    x, fx, conv, evals = pattern_search(f, x0, prob.project, tol=tol, rng=rng, max_evals=max_evals)
    return x, fx, conv, evals


def _exact_confirmation(c: Configuration, perm: Permutation):
    try:
        q = c.to_exact(MAX_DENOMINATOR)
    except InvalidConfiguration:
        return None, None
    if permutation_of(q) != perm or q.n > 8:
        return None, None
    return q, solve_max(q, canonical=False).area


def minimize_over_configs(p: Permutation | Sequence[int], restarts: int = 16, tol: float = 1e-4,
                          seed: int = 0, workers: int = 1, max_evals: int = 50_000) -> MinimaxReport:
    """Multi-start pattern search for the least optimal area under permutation ``p``.

    Starts are the known extremal configuration of the class (or the
    reflection of the inverse class's one) followed by uniform random
    order-consistent draws; run ``i`` uses RNG seed ``seed * 1_000_003 + i``.
    """
    perm = p if isinstance(p, Permutation) else Permutation(tuple(p))
    if len(perm) == 0:
        c = Configuration.from_coords([]).to_float()
        return MinimaxReport(perm, c, 1.0, 0.0, 0, True, Configuration.from_coords([]), Fraction(1))
    prob = _Problem(perm)
    restarts = max(1, restarts)
    seeds = [prob.vector(s) for s in _starts(perm)][:restarts]
    jobs = []
    for i in range(restarts):
        start = seeds[i] if i < len(seeds) else None
        jobs.append((perm.values, start, tol, seed * 1_000_003 + i, max_evals))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    # ties go to the lowest run index, so the outcome does not depend on scheduling
    best_i = min(range(len(results)), key=lambda i: (results[i][1], i))
    x, fx, conv, _ = results[best_i]
    best = prob.config(x)
    exact_cfg, exact_area = _exact_confirmation(best, perm)
    return MinimaxReport(
        permutation=perm,
        best_config=best,
        best_area=float(max_area(best)),
        certificate=float(local_min_certificate(best)),
        restarts=len(results),
        converged=conv,
        exact_config=exact_cfg,
        exact_area=exact_area,
        evaluations=sum(r[3] for r in results),
        runs=tuple((r[1], r[2]) for r in results),
    )


def check_inverse_symmetry(p: Permutation | Sequence[int], restarts: int = 16, tol: float = 1e-4,
                           seed: int = 0, workers: int = 1) -> tuple[float, float]:
    """Minimax areas of ``p`` and of its inverse."""
    perm = p if isinstance(p, Permutation) else Permutation(tuple(p))
    a = minimize_over_configs(perm, restarts, tol, seed, workers)
    inv = inverse(perm)
    if inv == perm:
        return a.best_area, a.best_area
    b = minimize_over_configs(inv, restarts, tol, seed, workers)
    return a.best_area, b.best_area


def mountain_inequality(k, m, x, y):
    """Left-hand side of the inequality equivalent to the mountain-end conjecture.

    Works elementwise on numpy arrays; x**2/y is taken as 0 at y = 0.
    """
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(y > 0, x * x / np.where(y > 0, y, 1.0), 0.0)
        tail = np.where(k > 0.5, 1.0 / (2.0 * (m + 1.0 / np.where(k > 0.5, 2 * k - 1, 1.0))), 0.0)
    const = 0.5 - tail
    return k * ratio + (m - 1) * x * y ** (1.0 / (m - 1)) + const - (m - 2 + 2 * k) * x - (1 - k) * y


@dataclass(frozen=True)
class ScanReport:
    grid: float
    evaluations: int
    min_value: float
    argmin: dict
    violations: int
    worst: tuple = ()
    x0_min: float = 0.0
    x0_negative: int = 0


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    count = (hi - lo) / step
    n = int(round(count))
    if abs(n - count) > 1e-9:
        n = int(math.floor(count))
        return np.append(lo + step * np.arange(n + 1), hi)
    return np.linspace(lo, hi, n + 1)


def verify_mountain_inequality(grid=Fraction(1, 50), m_values: Sequence[int] = range(2, 21),
                               tolerance: float = 1e-9) -> ScanReport:
    """Evaluate the inequality on k in [1/2, 1], m in ``m_values``, 0 <= x <= y <= 1."""
    step = float(grid)
    if step <= 0:
        raise ValueError("grid step must be positive")
    ks = _grid(0.5, 1.0, step)
    us = _grid(0.0, 1.0, step)
    X, Y = np.meshgrid(us, us, indexing="ij")
    mask = X <= Y
    X, Y = X[mask], Y[mask]
    best = (math.inf, None)
    violations = 0
    worst = []
    x0_min, x0_neg = math.inf, 0
    evals = 0
    for m in m_values:
        K = ks[:, None]
        F = mountain_inequality(K, m, X[None, :], Y[None, :])
        evals += F.size
        i = np.unravel_index(np.argmin(F), F.shape)
        if F[i] < best[0]:
            best = (float(F[i]), {"k": float(ks[i[0]]), "m": m,
                                  "x": float(X[i[1]]), "y": float(Y[i[1]])})
        bad = F < -tolerance
        violations += int(bad.sum())
        for a, b in zip(*np.nonzero(bad)):
            if len(worst) < 10:
                worst.append((float(ks[a]), m, float(X[b]), float(Y[b]), float(F[a, b])))
        zero = F[:, X == 0]
        x0_min = min(x0_min, float(zero.min()))
        x0_neg += int((zero < -tolerance).sum())
    return ScanReport(step, evals, best[0], best[1], violations, tuple(worst), x0_min, x0_neg)
