"""Closed-form lower bounds on the packable proportion and their tight configurations.

Rational inputs give exact :class:`~fractions.Fraction` results wherever the
formula stays rational; square roots and exponentials are evaluated in
binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import Configuration, Point, Rect, Scalar, UNIT_SQUARE, is_exact_value, to_scalar


@dataclass(frozen=True)
class BoundResult:
    """A lower bound on the fill proportion.

    ``tight_points`` are the points the formula pins down; ``tight_config``
    is a full configuration realising the bound when one can be built.
    """

    bound: Scalar
    class_tag: str
    params: dict = field(default_factory=dict)
    tight_points: tuple[Point, ...] = ()
    tight_config: Configuration | None = None


def _q(v) -> Scalar:
    """Fraction for exact input, float otherwise."""
    return to_scalar(v, is_exact_value(v))


def embed(inner: Configuration, anchor: Point, right=1, top=1) -> list[tuple]:
    """Non-origin points of ``inner`` (unit square) mapped into [anchor, (right, top)]."""
    inner = inner.normalized()
    w, h = right - anchor.x, top - anchor.y
    return [(anchor.x + w * p.x, anchor.y + h * p.y) for p in inner.points[1:]]


def two_dot_area(x, y) -> Scalar:
    """Maximum area with the origin and one point (x, y)."""
    x, y = _q(x), _q(y)
    return (1 - x) * (1 - y) + max(x, y)


def bound_start1(k, inner: Configuration | None = None) -> BoundResult:
    """Permutation starting with 1, fraction k fillable above-right of P_1."""
    k = _q(k)
    if k >= Fraction(1, 2):
        bound = (4 * k - 1) / (4 * k)
        c = (2 * k - 1) / (2 * k)
    else:
        bound = k
        c = k * 0
    p1 = Point(c, c)
    config = None
    if c > 0 and (inner is not None or k == 1):
        pts = [(c, c)] + (embed(inner, p1) if inner is not None else [])
        config = Configuration.from_coords(pts)
    return BoundResult(bound, "start1", {"k": k}, (p1,), config)


def increasing_start_value(m: int, k) -> Scalar:
    k = _q(k)
    if k < Fraction(1, 2):
        return k
    return ((2 * m + 2) * k - m) / (4 * m * k - (2 * m - 2))


def bound_increasing_start(m: int, k, inner: Configuration | None = None,
                           delta=Fraction(1, 1000)) -> BoundResult:
    """Permutation starting 1..m with fraction k fillable above-right of P_m.

    For k < 1/2 the extremal points all collapse onto the origin; the
    returned ``tight_points`` are the family (delta*i, delta*i) instead.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    k = _q(k)
    bound = increasing_start_value(m, k)
    if k >= Fraction(1, 2):
        step = (2 * k - 1) / (2 * m * k - m + 1)
    else:
        step = _q(delta) if isinstance(k, Fraction) else float(delta)
    pts = [(step * i, step * i) for i in range(1, m + 1)]
    config = None
    if step > 0 and (inner is not None or k == 1):
        tail = embed(inner, Point(*pts[-1])) if inner is not None else []
        config = Configuration.from_coords(pts + tail)
    return BoundResult(bound, "increasing_start", {"m": m, "k": k},
                       tuple(Point(*p) for p in pts), config)


def bound_increasing(n: int) -> BoundResult:
    """n points (origin included) on the diagonal."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pts = [(Fraction(i, n), Fraction(i, n)) for i in range(1, n)]
    return BoundResult(Fraction(1, 2) + Fraction(1, 2 * n), "increasing", {"n": n},
                       tuple(Point(*p) for p in pts), Configuration.from_coords(pts))


def decreasing_value(n: int) -> Fraction:
    return 1 - (1 - Fraction(1, n)) ** n


def bound_decreasing(n: int) -> BoundResult:
    if n < 1:
        raise ValueError("n must be at least 1")
    q = 1 - Fraction(1, n)
    pts = [(q ** (n - i), q ** i) for i in range(1, n)]
    return BoundResult(decreasing_value(n), "decreasing", {"n": n},
                       tuple(Point(*p) for p in pts), Configuration.from_coords(pts))


def bound_cliff(n: int, m: int) -> BoundResult:
    """Permutation (1, ..., m, n-1, ..., m+1)."""
    if not 1 <= m <= n - 1:
        raise ValueError("need 1 <= m <= n-1")
    dec = bound_decreasing(n - m)
    inc = bound_increasing_start(m, dec.bound, inner=dec.tight_config)
    return BoundResult(inc.bound, "cliff", {"n": n, "m": m, "k": dec.bound},
                       inc.tight_points, inc.tight_config)


def _sqrt(v) -> Scalar:
    """Exact square root of a perfect-square fraction, float otherwise."""
    if isinstance(v, Fraction) and v >= 0:
        a, b = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if a * a == v.numerator and b * b == v.denominator:
            return Fraction(a, b)
    return math.sqrt(v)


def start2_end1_right(k) -> Scalar:
    """Right branch (k >= 3/4) of the start-2/end-1 bound."""
    k = _q(k)
    return 1 - 4 * k / 3 + 32 * k * k / 27 + (Fraction(2, 9) - 8 * k / 27) * _sqrt(16 * k * k - 12 * k)


def start2_end1_left(k) -> Scalar:
    k = _q(k)
    return 1 - 1 / (4 * k)


def bound_231(k, inner: Configuration | None = None, y_last=None) -> BoundResult:
    """Permutation starting with 2 and ending with 1; k is the fillable
    fraction of the rectangle between P_1 and (x_{n-1}, 1).

    For k <= 3/4 the last point sits on the right edge and can slide along a
    segment below P_1; ``y_last`` picks it (default: halfway up).
    """
    k = _q(k)
    if k <= 0:
        raise ValueError("k must be positive")
    if k >= Fraction(3, 4):
        bound = start2_end1_right(k)
        x_last = (4 * k - _sqrt(16 * k * k - 12 * k)) / 3
    else:
        # vacuous (negative) once k < 1/4
        bound = 1 - 1 / (4 * k)
        x_last = k ** 0
    if k >= Fraction(1, 2):
        x1 = x_last * (1 - x_last / (2 * k))
    else:
        x1 = k * 0
    if x1 <= 0:
        return BoundResult(bound, "start2_end1", {"k": k})
    y1 = x1 / x_last
    if x_last < 1:
        y_end = x1
    else:
        y_end = _q(y_last) if y_last is not None else x1 / 2
        if not 0 < y_end <= x1:
            raise ValueError("y_last must lie in (0, x_1]")
    p1, plast = Point(x1, y1), Point(x_last, y_end)
    config = None
    if inner is not None:
        mid = embed(inner, p1, right=x_last, top=1)
        config = Configuration.from_coords([tuple(p1), *mid, tuple(plast)])
    return BoundResult(bound, "start2_end1", {"k": k}, (p1, plast), config)


def bound_231_n4(y_last=None) -> BoundResult:
    """Permutation (2, 3, 1): the 2-point increasing case fills 3/4 of the box."""
    inner = bound_increasing(2).tight_config
    return bound_231(Fraction(3, 4), inner=inner, y_last=y_last)


SQRT33 = math.sqrt(33)


def area_213(x1, x2) -> float:
    """Packable area for (2, 1, 3) with equal origin rectangles, as a function of x_1, x_2."""
    return 0.75 - 2.25 * x1 + 0.25 * x2 + x1 * x1 / x2 + x1 * x2 + x1 / (4 * x2)


def stationary_points_213() -> list[tuple[float, float, float]]:
    """Both critical points (x_1, x_2, area) of :func:`area_213`, minimiser last."""
    out = []
    for s in (-1, 1):
        x1 = (19 + s * 3 * SQRT33) / 96
        x2 = (9 + s * SQRT33) / 24
        out.append((x1, x2, area_213(x1, x2)))
    return out


def bound_213() -> BoundResult:
    x = (9 + SQRT33) / 24
    y = (33 + SQRT33) / 48
    pts = [(x * x, x), (x, x * x), (y, y)]
    return BoundResult((837 - 11 * SQRT33) / 1152, "213", {"n": 4},
                       tuple(Point(*p) for p in pts), Configuration.from_coords(pts))


def sparse_value(k, l: int) -> Scalar:
    k = _q(k)
    if k * (l + 1) < 1:
        return k
    return k * (1 - (1 - 1 / (k * (l + 1))) ** (l + 1))


def bound_sparse(k, l: int) -> BoundResult:
    """Fraction k of the staircase of l untouchable points is fillable.

    When k(l+1) < 1 the optimising point leaves the square; the bound is
    clamped to k there.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    k = _q(k)
    bound = sparse_value(k, l)
    pts: tuple[Point, ...] = ()
    if k * (l + 1) >= 1:
        h_last = 1 - 1 / (k * (l + 1))
        if h_last > 0:
            hs = [h_last ** (l + 1 - i) for i in range(1, l + 1)]
            vs = [hs[0] / hs[i + 1] for i in range(l - 1)] + [hs[0]]
            pts = tuple(Point(h, v) for h, v in zip(hs, vs))
    return BoundResult(bound, "sparse", {"k": k, "l": l}, pts)


def bound_sparse_limit(k) -> BoundResult:
    k = float(k)
    return BoundResult(k * (1 - math.exp(-1 / k)), "sparse_limit", {"k": k})


#: proven minima for n <= 4 points: 1, 3/4, 2/3, 5/8
KNOWN_MINIMA = {n: Fraction(1, 2) + Fraction(1, 2 * n) for n in range(1, 5)}


def kn_table(n_max: int, exact: bool = False, known: dict | None = KNOWN_MINIMA) -> list[tuple[int, Scalar]]:
    """Lower bounds k_n on the fill proportion for n points.

    k_n = min over l of the sparse bound with k_{n-l}; where a better value is
    already known (``known``, default: the proven n <= 4 minima) the larger
    of the two is used.  The recursion alone gives 0.6214 at n = 4.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    one = Fraction(1) if exact else 1.0
    k = {1: one}
    for n in range(2, n_max + 1):
        val = min(sparse_value(k[n - l], l) for l in range(1, n))
        if known and n in known:
            val = max(val, known[n] if exact else float(known[n]))
        k[n] = val
    return [(n, k[n]) for n in range(1, n_max + 1)]


def threshold_prelayer(m: int) -> Fraction:
    """Smallest x_1 for which a decreasing prefix of length m keeps half the square."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return 2 * (1 - Fraction(1, 2 * m)) ** m - 1


def threshold_prelayer_limit() -> float:
    return 2 * math.exp(-0.5) - 1


def mountain_end_bound(m: int, k) -> Scalar:
    """Conjectured bound 1/2 + 1/(2(m + 1/(2k-1))) for a mountain ending in m-1..1."""
    k = _q(k)
    if k == Fraction(1, 2):
        return Fraction(1, 2)
    return Fraction(1, 2) + 1 / (2 * (m + 1 / (2 * k - 1)))


def tight_config_for(values: Sequence[int]) -> Configuration | None:
    """A configuration attaining the known minimum for this permutation, if any."""
    vals = tuple(values)
    L = len(vals)
    n = L + 1
    if not vals:
        return Configuration((UNIT_SQUARE.anchor,))
    if vals == tuple(range(1, n)):
        return bound_increasing(n).tight_config
    if vals == tuple(range(L, 0, -1)):
        return bound_decreasing(n).tight_config
    # cliff (1..m, L..m+1)
    for m in range(1, L):
        if vals == tuple(range(1, m + 1)) + tuple(range(L, m, -1)):
            return bound_cliff(n, m).tight_config
    if vals == (2, 1, 3):
        return bound_213().tight_config
    if vals == (2, 3, 1):
        return bound_231_n4().tight_config
    if vals == (3, 1, 2):
        return bound_231_n4().tight_config.reflected()
    return None
