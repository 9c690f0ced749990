"""Points, rectangles, configurations and packings in the unit square.

Coordinates are either all :class:`fractions.Fraction` (exact mode) or all
``float`` (binary64 mode).  The mode is picked when a configuration is built:
ints, fractions and decimal strings give exact values, any float switches the
whole object to float mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

#: absolute tolerance for float-mode comparisons
FLOAT_TOL = 1e-12


class InvalidConfiguration(ValueError):
    """Raised when a point set breaks the configuration invariants."""


class InvalidPacking(ValueError):
    """Raised when an operation needs a valid packing and gets an invalid one."""


def to_scalar(value, exact: bool = True) -> Scalar:
    """Convert ``value`` to a Fraction (``exact``) or a float.

    Strings are parsed as decimal literals or ``p/q`` fractions.
    """
    if isinstance(value, str):
        value = Fraction(value.strip())
    if not exact:
        return float(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"float {value!r} cannot be used in exact mode")
    return Fraction(value)


def is_exact_value(value) -> bool:
    return isinstance(value, (Rational, str)) and not isinstance(value, bool)


def _tol(*values) -> float:
    return 0 if all(isinstance(v, Fraction) for v in values) else FLOAT_TOL


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar

    def __iter__(self):
        yield self.x
        yield self.y

    def dominated_by(self, other: "Point") -> bool:
        return self.x <= other.x and self.y <= other.y


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle given by its lower-left anchor and far edges.

    Zero-width or zero-height rectangles are allowed; they have empty interior.
    """

    anchor: Point
    right: Scalar
    top: Scalar

    def __post_init__(self):
        tol = _tol(self.anchor.x, self.right, self.anchor.y, self.top)
        if self.right < self.anchor.x - tol or self.top < self.anchor.y - tol:
            raise ValueError(f"rectangle edges lie below/left of its anchor: {self}")

    @classmethod
    def from_corners(cls, x0, y0, x1, y1) -> "Rect":
        return cls(Point(x0, y0), x1, y1)

    @property
    def x0(self) -> Scalar:
        return self.anchor.x

    @property
    def y0(self) -> Scalar:
        return self.anchor.y

    @property
    def width(self) -> Scalar:
        return self.right - self.anchor.x

    @property
    def height(self) -> Scalar:
        return self.top - self.anchor.y

    @property
    def area(self) -> Scalar:
        return self.width * self.height

    def is_degenerate(self) -> bool:
        tol = _tol(self.right, self.top)
        return self.width <= tol or self.height <= tol

    def interior_contains(self, p: Point) -> bool:
        tol = _tol(p.x, p.y, self.right, self.top)
        return (self.anchor.x + tol < p.x < self.right - tol
                and self.anchor.y + tol < p.y < self.top - tol)

    def overlaps(self, other: "Rect") -> bool:
        """True when the two open interiors intersect."""
        tol = _tol(self.right, other.right, self.top, other.top)
        return (self.anchor.x + tol < other.right and other.anchor.x + tol < self.right
                and self.anchor.y + tol < other.top and other.anchor.y + tol < self.top
                and not self.is_degenerate() and not other.is_degenerate())

    def intersection_area(self, other: "Rect") -> Scalar:
        w = min(self.right, other.right) - max(self.x0, other.x0)
        h = min(self.top, other.top) - max(self.y0, other.y0)
        if w <= 0 or h <= 0:
            return w * 0
        return w * h

    def contains_rect(self, other: "Rect") -> bool:
        tol = _tol(self.right, other.right)
        return (self.x0 - tol <= other.x0 and other.right <= self.right + tol
                and self.y0 - tol <= other.y0 and other.top <= self.top + tol)


UNIT_SQUARE = Rect(Point(Fraction(0), Fraction(0)), Fraction(1), Fraction(1))


def _convert_rect(r: Rect, exact: bool) -> Rect:
    return Rect(Point(to_scalar(r.x0, exact), to_scalar(r.y0, exact)),
                to_scalar(r.right, exact), to_scalar(r.top, exact))


@dataclass(frozen=True)
class Configuration:
    """Point set P_0..P_{n-1} with P_0 at the lower-left corner of ``frame``.

    Non-origin points have strictly increasing x, pairwise distinct y and
    coordinates strictly above the frame's lower-left corner.
    """

    points: tuple[Point, ...]
    frame: Rect = UNIT_SQUARE

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise InvalidConfiguration("a configuration needs at least the origin")
        coords = [c for p in pts for c in p] + [self.frame.x0, self.frame.y0,
                                                 self.frame.right, self.frame.top]
        exact = all(is_exact_value(c) for c in coords)
        pts = tuple(Point(to_scalar(p.x, exact), to_scalar(p.y, exact)) for p in pts)
        frame = _convert_rect(self.frame, exact)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "frame", frame)
        self._check()

    def _check(self):
        f = self.frame
        tol = 0 if self.exact else FLOAT_TOL
        if f.width <= tol or f.height <= tol:
            raise InvalidConfiguration("frame has zero area")
        o = self.points[0]
        if abs(o.x - f.x0) > tol or abs(o.y - f.y0) > tol:
            raise InvalidConfiguration(f"points[0] must be the frame corner, got {o}")
        seen_y = set()
        prev_x = None
        for i, p in enumerate(self.points[1:], start=1):
            if not (f.x0 + tol < p.x <= f.right + tol and f.y0 + tol < p.y <= f.top + tol):
                raise InvalidConfiguration(
                    f"point {i} {tuple(p)} is not in general position inside the frame")
            if prev_x is not None and p.x <= prev_x + tol:
                raise InvalidConfiguration(f"x coordinates must increase strictly (point {i})")
            prev_x = p.x
            if self.exact:
                if p.y in seen_y:
                    raise InvalidConfiguration(f"duplicate y coordinate at point {i}")
                seen_y.add(p.y)
        if not self.exact:
            ys = sorted(p.y for p in self.points[1:])
            for a, b in zip(ys, ys[1:]):
                if b - a <= tol:
                    raise InvalidConfiguration("duplicate y coordinates")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence], frame: Rect | None = None) -> "Configuration":
        """Build from the non-origin points; the origin is prepended.

        Points are sorted by x.  A point equal to the frame corner is dropped.
        """
        frame = UNIT_SQUARE if frame is None else frame
        pts = [Point(x, y) for x, y in coords]
        pts = [p for p in pts if not (p.x == frame.x0 and p.y == frame.y0)]
        pts.sort(key=lambda p: p.x)
        return cls((frame.anchor, *pts), frame)

    @property
    def exact(self) -> bool:
        return isinstance(self.frame.right, Fraction)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> tuple[Scalar, ...]:
        return tuple(p.x for p in self.points)

    @property
    def ys(self) -> tuple[Scalar, ...]:
        return tuple(p.y for p in self.points)

    def coords(self) -> list[tuple[Scalar, Scalar]]:
        """Non-origin points as plain tuples."""
        return [(p.x, p.y) for p in self.points[1:]]

    def to_float(self) -> "Configuration":
        if not self.exact:
            return self
        return Configuration(tuple(Point(float(p.x), float(p.y)) for p in self.points),
                             _convert_rect(self.frame, False))

    def to_exact(self, max_denominator: int | None = None) -> "Configuration":
        """Exact copy; floats are rounded with ``limit_denominator`` when given."""
        if self.exact:
            return self

        def conv(v):
            q = Fraction(v)
            return q.limit_denominator(max_denominator) if max_denominator else q

        return Configuration(tuple(Point(conv(p.x), conv(p.y)) for p in self.points),
                             Rect(Point(conv(self.frame.x0), conv(self.frame.y0)),
                                  conv(self.frame.right), conv(self.frame.top)))

    def normalized(self) -> "Configuration":
        """The same configuration affinely mapped onto the unit square."""
        f = self.frame
        one = Fraction(1) if self.exact else 1.0
        unit = UNIT_SQUARE if self.exact else _convert_rect(UNIT_SQUARE, False)
        if f == unit:
            return self
        pts = tuple(Point((p.x - f.x0) / f.width * one, (p.y - f.y0) / f.height * one)
                    for p in self.points)
        return Configuration(pts, unit)

    def reflected(self) -> "Configuration":
        """Mirror image across the diagonal y = x of the frame (re-sorted by x)."""
        f = self.frame
        frame = Rect(Point(f.y0, f.x0), f.top, f.right)
        return Configuration.from_coords([(p.y, p.x) for p in self.points[1:]], frame)


@dataclass(frozen=True)
class Packing:
    config: Configuration
    rects: tuple[Rect, ...]

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))

    @classmethod
    def from_corners(cls, config: Configuration, corners: Sequence[Sequence]) -> "Packing":
        """One (right, top) pair per configuration point."""
        return cls(config, tuple(Rect(p, r, t) for p, (r, t) in zip(config.points, corners)))


@dataclass(frozen=True)
class Violation:
    kind: str  # "anchor", "count", "overlap", "point-in-interior", "out-of-square"
    indices: tuple[int, ...]
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok


def validate_packing(p: Packing) -> ValidationReport:
    """Collect every violated packing invariant."""
    report = ValidationReport()
    add = report.violations.append
    cfg, rects = p.config, p.rects
    if len(rects) != cfg.n:
        add(Violation("count", (), f"{len(rects)} rectangles for {cfg.n} points"))
    f = cfg.frame
    for i, (pt, r) in enumerate(zip(cfg.points, rects)):
        if r.anchor != pt:
            add(Violation("anchor", (i,), f"rect {i} anchored at {tuple(r.anchor)}, point is {tuple(pt)}"))
        if not f.contains_rect(r):
            add(Violation("out-of-square", (i,), f"rect {i} leaves the frame"))
    for i, a in enumerate(rects):
        for j in range(i + 1, len(rects)):
            if a.overlaps(rects[j]):
                add(Violation("overlap", (i, j), f"rects {i} and {j} overlap"))
    for i, r in enumerate(rects):
        for k, q in enumerate(cfg.points):
            if r.interior_contains(q):
                add(Violation("point-in-interior", (i, k), f"point {k} lies inside rect {i}"))
    return report


def packing_area(p: Packing) -> Scalar:
    report = validate_packing(p)
    if not report.ok:
        raise InvalidPacking(report.violations[0].message)
    total = p.config.frame.x0 * 0
    for r in p.rects:
        total += r.area
    return total


def fill_proportion(p: Packing) -> Scalar:
    return packing_area(p) / p.config.frame.area


def _extension_step(p: Packing) -> Scalar:
    """Half the smallest positive gap between any two relevant coordinates."""
    vals = set()
    for q in p.config.points:
        vals.update((q.x, q.y))
    for r in p.rects:
        vals.update((r.x0, r.y0, r.right, r.top))
    f = p.config.frame
    vals.update((f.x0, f.y0, f.right, f.top))
    ordered = sorted(vals)
    gaps = [b - a for a, b in zip(ordered, ordered[1:]) if b - a > _tol(a, b)]
    step = min(gaps) / 2 if gaps else f.width / 2
    return step


def is_maximal_rect(p: Packing, i: int) -> bool:
    """True iff rect ``i`` cannot grow upward or rightward and stay valid.

    Blocking by a neighbouring rectangle counts, not only by points and the
    frame boundary.
    """
    if not 0 <= i < len(p.rects):
        raise IndexError(f"rectangle index {i} out of range")
    r = p.rects[i]
    step = _extension_step(p)
    for grown in (Rect(r.anchor, r.right + step, r.top), Rect(r.anchor, r.right, r.top + step)):
        rects = p.rects[:i] + (grown,) + p.rects[i + 1:]
        if validate_packing(Packing(p.config, rects)).ok:
            return False
    return True


@dataclass(frozen=True)
class RectilinearRegion:
    cells: tuple[Rect, ...]
    total_area: Scalar


def final_decreasing_run(c: Configuration) -> list[int]:
    """Indices j..n-1 of the longest run with decreasing y ending at the last point."""
    n = c.n
    if n == 1:
        return [0]
    j = n - 1
    while j > 1 and c.points[j - 1].y > c.points[j].y:
        j -= 1
    return list(range(j, n))


def staircase_region(c: Configuration, orientation: str = "vertical") -> RectilinearRegion:
    """Union of the upper-right quadrants of the final decreasing run.

    ``orientation="vertical"`` gives strips ordered by left edge, one per run
    point; ``"horizontal"`` gives the same region cut into horizontal bands.
    """
    run = [c.points[i] for i in final_decreasing_run(c)]
    f = c.frame
    cells = []
    if orientation == "vertical":
        for k, p in enumerate(run):
            right = run[k + 1].x if k + 1 < len(run) else f.right
            cells.append(Rect(p, right, f.top))
    elif orientation == "horizontal":
        # run sorted by x has decreasing y; bands from the bottom up
        for k in range(len(run) - 1, -1, -1):
            p = run[k]
            top = run[k - 1].y if k > 0 else f.top
            cells.append(Rect(p, f.right, top))
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    total = f.x0 * 0
    for cell in cells:
        total += cell.area
    return RectilinearRegion(tuple(cells), total)


def covered_area(rects: Iterable[Rect], region: RectilinearRegion) -> Scalar:
    """Area of ``region`` covered by pairwise interior-disjoint ``rects``."""
    total = region.total_area * 0
    for r in rects:
        for cell in region.cells:
            total += r.intersection_area(cell)
    return total


def rescale_into(p: Packing, target: Rect) -> Packing:
    """Map a packing affinely from its frame onto ``target``."""
    cfg = p.config
    exact = cfg.exact and all(is_exact_value(v) for v in (target.x0, target.y0, target.right, target.top))
    target = _convert_rect(target, exact)
    if target.width <= 0 or target.height <= 0:
        raise ValueError("target rectangle has zero area")
    src = cfg.frame if exact else _convert_rect(cfg.frame, False)
    sx = target.width / src.width
    sy = target.height / src.height

    def mx(v):
        return target.x0 + (to_scalar(v, exact) - src.x0) * sx

    def my(v):
        return target.y0 + (to_scalar(v, exact) - src.y0) * sy

    pts = tuple(Point(mx(q.x), my(q.y)) for q in cfg.points)
    new_cfg = Configuration(pts, target)
    rects = tuple(Rect(Point(mx(r.x0), my(r.y0)), mx(r.right), my(r.top)) for r in p.rects)
    return Packing(new_cfg, rects)
