"""Exact maximum-area anchored rectangle packing by branch and bound.

Every free right (top) edge of a rectangle in some optimal packing can be
pushed until it meets the vertical (horizontal) line through another point
or the frame boundary: left and bottom edges of rectangles all lie on anchor
lines.  So it suffices to choose each upper-right corner among
``{x_j > x_i} U {right}`` x ``{y_j > y_i} U {top}``, plus the degenerate
corner at the anchor itself.

Only pairs of incomparable points can clash.  If ``P_i`` lies left of and
above ``P_j``, their rectangles overlap iff ``right_i > x_j`` and
``top_j > y_i``; comparable pairs never overlap unless a point lies inside a
rectangle, which the candidate filter already excludes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    Configuration,
    FLOAT_TOL,
    Packing,
    Point,
    Rect,
    Scalar,
    final_decreasing_run,
    staircase_region,
)
from .permutations import greedy_decreasing_subsequence, permutation_of

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class CandidateSet:
    """Per point: candidate right edges, top edges and feasible corner pairs.

    ``pairs[i]`` holds every (right, top) whose open rectangle contains no
    configuration point, including the degenerate corner (x_i, y_i).
    """

    rights: tuple[tuple[Scalar, ...], ...]
    tops: tuple[tuple[Scalar, ...], ...]
    pairs: tuple[tuple[tuple[Scalar, Scalar], ...], ...]

    def maximal_pairs(self, i: int) -> list[tuple[Scalar, Scalar]]:
        """Feasible pairs not dominated by another feasible pair of point i."""
        ps = [pr for pr in self.pairs[i]]
        return [a for a in ps
                if not any(b != a and b[0] >= a[0] and b[1] >= a[1] for b in ps)]


def candidates(c: Configuration) -> CandidateSet:
    xs, ys = c.xs, c.ys
    n = c.n
    fr, ft = c.frame.right, c.frame.top
    rights, tops, pairs = [], [], []
    for i in range(n):
        r_i = sorted({x for x in xs if x > xs[i]} | {fr})
        t_i = sorted({y for y in ys if y > ys[i]} | {ft})
        ok = [(xs[i], ys[i])]
        for r in r_i:
            for t in t_i:
                if not any(xs[i] < xs[k] < r and ys[i] < ys[k] < t for k in range(n)):
                    ok.append((r, t))
        rights.append(tuple(r_i))
        tops.append(tuple(t_i))
        pairs.append(tuple(ok))
    return CandidateSet(tuple(rights), tuple(tops), tuple(pairs))


@dataclass(frozen=True)
class SolveResult:
    best: Packing
    area: Scalar
    nodes_explored: int
    proof_of_optimality: bool


class _Budget(Exception):
    pass


class _Search:
    """Depth-first search over points in decreasing x.

    The origin is comparable with every point, so it never clashes and is
    handled by adding its best single rectangle at the end.
    """

    def __init__(self, c: Configuration, cand: CandidateSet, budget: int):
        self.xs, self.ys = c.xs, c.ys
        n = c.n
        self.order = list(range(n - 1, 0, -1))
        self.options = []
        for i in range(n):
            opts = [(r, t, (r - self.xs[i]) * (t - self.ys[i])) for r, t in cand.pairs[i]]
            self.options.append(opts)
        best_single = [max(o[2] for o in opts) for opts in self.options]
        # rest[d]: admissible bound for points order[d:] plus the origin
        self.rest = [0] * (len(self.order) + 1)
        acc = best_single[0]
        self.rest[len(self.order)] = acc
        for d in range(len(self.order) - 1, -1, -1):
            acc = acc + best_single[self.order[d]]
            self.rest[d] = acc
        self.origin_best = max(self.options[0], key=lambda o: o[2])
        # for point i: later (already assigned) points lying below-right of it
        self.clash = {i: [j for j in range(i + 1, n) if self.ys[j] < self.ys[i]] for i in range(n)}
        self.budget = budget
        self.nodes = 0
        self.tops = [None] * n
        self.choice = [None] * n

    def _fits(self, i, r):
        xs, ys = self.xs, self.ys
        for j in self.clash[i]:
            if r > xs[j] and self.tops[j] > ys[i]:
                return False
        return True

    def best(self, zero):
        """Maximise the total; returns (area, choices)."""
        self.incumbent = zero
        self.best_choice = None
        by_area = [sorted(o, key=lambda t: t[2], reverse=True) for o in self.options]
        self._max(0, zero, by_area)
        return self.incumbent, self.best_choice

    def _max(self, d, cur, by_area):
        if d == len(self.order):
            total = cur + self.origin_best[2]
            if self.best_choice is None or total > self.incumbent:
                self.incumbent = total
                self.best_choice = list(self.choice)
                self.best_choice[0] = self.origin_best[:2]
            return
        i = self.order[d]
        rest = self.rest[d + 1]
        for r, t, a in by_area[i]:
            if self.best_choice is not None and cur + a + rest <= self.incumbent:
                break
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            if not self._fits(i, r):
                continue
            self.tops[i] = t
            self.choice[i] = (r, t)
            self._max(d + 1, cur + a, by_area)
        self.tops[i] = None

    def first_reaching(self, zero, target, eps):
        """Lexicographically smallest corner vector (in branch order) whose
        total reaches ``target``."""
        lex = [sorted(o, key=lambda t: (t[0], t[1])) for o in self.options]
        origin = [o for o in lex[0] if o[2] >= self.origin_best[2] - eps][0]
        self.found = None
        self._lex(0, zero, lex, origin, target - eps)
        return self.found

    def _lex(self, d, cur, lex, origin, goal):
        if d == len(self.order):
            if cur + origin[2] >= goal:
                self.found = list(self.choice)
                self.found[0] = origin[:2]
                return True
            return False
        i = self.order[d]
        rest = self.rest[d + 1]
        for r, t, a in lex[i]:
            if cur + a + rest < goal:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            if not self._fits(i, r):
                continue
            self.tops[i] = t
            self.choice[i] = (r, t)
            if self._lex(d + 1, cur + a, lex, origin, goal):
                return True
        self.tops[i] = None
        return False


def _packing(c: Configuration, choice) -> Packing:
    return Packing(c, tuple(Rect(p, r, t) for p, (r, t) in zip(c.points, choice)))


def solve_max(c: Configuration, budget: int = DEFAULT_BUDGET, canonical: bool = True) -> SolveResult:
    """Maximum-area packing of ``c``.

    With ``canonical`` the returned packing is, among all optima, the one
    with the lexicographically smallest (right, top) vector in branch order
    (points by decreasing x, origin last).  When the node budget runs out the
    best packing found so far is returned with ``proof_of_optimality=False``.
    """
    cand = candidates(c)
    search = _Search(c, cand, budget)
    zero = c.frame.x0 * 0
    degenerate = [(p.x, p.y) for p in c.points]
    try:
        area, choice = search.best(zero)
    except _Budget:
        choice = search.best_choice
        if choice is None:
            choice = degenerate
            choice[0] = search.origin_best[:2]
        p = _packing(c, choice)
        area = sum((r.area for r in p.rects), zero)
        return SolveResult(p, area, search.nodes, False)
    if canonical:
        eps = 0 if c.exact else FLOAT_TOL
        try:
            lex_choice = search.first_reaching(zero, area, eps)
        except _Budget:
            lex_choice = None
        if lex_choice is not None:
            choice = lex_choice
    p = _packing(c, choice)
    area = sum((r.area for r in p.rects), zero)
    return SolveResult(p, area, search.nodes, True)


def max_area(c: Configuration, budget: int = DEFAULT_BUDGET) -> Scalar:
    """Optimal area only (no tie-breaking pass)."""
    return solve_max(c, budget, canonical=False).area


def origin_maximal_rects(c: Configuration) -> list[Rect]:
    """Maximal rectangles anchored at the origin, by increasing width.

    They are cut out by the points of the greedy decreasing subsequence;
    a rectangle contained in another (possible when a point sits on the
    frame boundary) is dropped.
    """
    f = c.frame
    o = c.points[0]
    if c.n == 1:
        return [Rect(o, f.right, f.top)]
    q = [c.points[i] for i in greedy_decreasing_subsequence(permutation_of(c))]
    rects = [Rect(o, q[0].x, f.top)]
    for a, b in zip(q, q[1:]):
        rects.append(Rect(o, b.x, a.y))
    rects.append(Rect(o, f.right, q[-1].y))
    tol = 0 if c.exact else FLOAT_TOL

    def covers(s, r):
        return s.right >= r.right - tol and s.top >= r.top - tol

    # among mutually covering (equal) rectangles the first is kept
    return [r for k, r in enumerate(rects)
            if not any(covers(s, r) and (not covers(r, s) or j < k)
                       for j, s in enumerate(rects) if j != k)]


def fill_staircase(c: Configuration, partial: Packing) -> Packing:
    """Clip rectangles at the staircase boundary and fill it with vertical strips.

    A rectangle anchored left of the final decreasing run can only meet the
    staircase through the quadrants of run points lying below its bottom
    edge, so cutting its right edge at the first such point keeps everything
    it covered outside the staircase.
    """
    run = final_decreasing_run(c)
    run_set = set(run)
    region = staircase_region(c)
    cells = {idx: cell for idx, cell in zip(run, region.cells)}
    rects = []
    for i, (p, r) in enumerate(zip(c.points, partial.rects)):
        if i in run_set:
            rects.append(cells[i])
            continue
        right = r.right
        for j in run:
            q = c.points[j]
            if q.y < r.y0 and q.x < right and r.height > 0:
                right = q.x
                break
        rects.append(Rect(p, right, r.top))
    return Packing(c, tuple(rects))
