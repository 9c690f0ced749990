"""Permutation of a configuration and the named permutation classes.

Positions are 1-based throughout so that position ``i`` is configuration
point ``P_i`` (``points[i]``); ``P_0`` is the origin and has no position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .geometry import Configuration, Point


@dataclass(frozen=True)
class Permutation:
    """``values[i-1]`` is the y-rank of the i-th non-origin point."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"{vals} is not a permutation of 1..{len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse comma-separated one-based values such as ``"2,1,3"``."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        try:
            vals = tuple(int(tok) for tok in text.replace(" ", "").split(","))
        except ValueError as exc:
            raise ValueError(f"bad permutation syntax {text!r}") from exc
        return cls(vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __call__(self, position: int) -> int:
        return self.values[position - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.values))

    def inverse(self) -> "Permutation":
        return inverse(self)


def permutation_of(c: Configuration) -> Permutation:
    ys = [p.y for p in c.points[1:]]
    order = sorted(range(len(ys)), key=lambda i: ys[i])
    for a, b in zip(order, order[1:]):
        if ys[a] == ys[b]:
            raise ValueError("configuration has duplicate y coordinates")
    ranks = [0] * len(ys)
    for rank, i in enumerate(order, start=1):
        ranks[i] = rank
    return Permutation(tuple(ranks))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for pos, val in enumerate(p.values, start=1):
        inv[val - 1] = pos
    return Permutation(tuple(inv))


def reflect(c: Configuration) -> Configuration:
    """Swap the coordinates of every point; the result satisfies the inverse."""
    return c.reflected()


def greedy_decreasing_subsequence(p: Permutation | Sequence[int]) -> list[int]:
    """Positions of the elements smaller than everything before them.

    Any sequence of distinct numbers is accepted, not only permutations.
    """
    vals = p.values if isinstance(p, Permutation) else tuple(p)
    out = []
    low = float("inf")
    for pos, v in enumerate(vals, start=1):
        if v < low:
            out.append(pos)
            low = v
    return out


def splitting_points(p: Permutation) -> list[int]:
    """Positions i with p(j) < p(i) exactly when j < i."""
    vals = p.values
    out = []
    prefix_max = 0
    suffix_min = [0] * (len(vals) + 1)
    suffix_min[len(vals)] = len(vals) + 1
    for i in range(len(vals) - 1, -1, -1):
        suffix_min[i] = min(vals[i], suffix_min[i + 1])
    for i, v in enumerate(vals):
        if prefix_max < v < suffix_min[i + 1]:
            out.append(i + 1)
        prefix_max = max(prefix_max, v)
    return out


def decreasing_runs(p: Permutation) -> list[list[int]]:
    """Maximal runs of consecutive positions with decreasing values."""
    runs: list[list[int]] = []
    for pos, v in enumerate(p.values, start=1):
        if runs and p(runs[-1][-1]) > v:
            runs[-1].append(pos)
        else:
            runs.append([pos])
    return runs


def layer_sizes(p: Permutation) -> list[int] | None:
    """Sizes of the layers when ``p`` is layered, otherwise None."""
    sizes = []
    top = 0
    for run in decreasing_runs(p):
        vals = [p(i) for i in run]
        if min(vals) != top + 1 or max(vals) != top + len(vals):
            return None
        top += len(vals)
        sizes.append(len(vals))
    return sizes


def final_decreasing_run_start(p: Permutation) -> int:
    """Position where the final decreasing run starts (0 for the empty permutation)."""
    if not len(p):
        return 0
    return decreasing_runs(p)[-1][0]


def presorted_length(p: Permutation) -> int:
    """Largest m such that p starts with 1, 2, ..., m."""
    m = 0
    for v in p.values:
        if v != m + 1:
            break
        m += 1
    return m


def prelayered_size(p: Permutation) -> int:
    """The m for which p starts with (m, m-1, ..., 1, m+1), or 0."""
    vals = p.values
    if not vals:
        return 0
    m = vals[0]
    if len(vals) < m + 1:
        return 0
    if list(vals[:m]) != list(range(m, 0, -1)) or vals[m] != m + 1:
        return 0
    return m


def cliff_size(p: Permutation) -> int | None:
    """k when p = (1, ..., k, L, L-1, ..., k+1), else None.

    k is where the final decreasing run starts, minus one; decreasing
    permutations are cliffs with k = 0.
    """
    k = final_decreasing_run_start(p) - 1 if len(p) else 0
    if list(p.values[:k]) != list(range(1, k + 1)):
        return None
    return k


def mountain_peak(p: Permutation) -> int | None:
    """Position of the peak when p increases then decreases, else None."""
    vals = p.values
    if not vals:
        return 0
    peak = vals.index(max(vals))
    if all(a < b for a, b in zip(vals[:peak], vals[1:peak + 1])) and \
            all(a > b for a, b in zip(vals[peak:], vals[peak + 1:])):
        return peak + 1
    return None


def sparseness(p: Permutation) -> int:
    """Smallest m for which p is m-sparse decreasing.

    That is one more than the longest block of consecutive positions outside
    the greedy decreasing subsequence.
    """
    members = set(greedy_decreasing_subsequence(p))
    longest = gap = 0
    for pos in range(1, len(p) + 1):
        gap = 0 if pos in members else gap + 1
        longest = max(longest, gap)
    return longest + 1


def is_sparse(p: Permutation, m: int) -> bool:
    return sparseness(p) <= m


@dataclass(frozen=True)
class ClassReport:
    """Membership of a permutation in every named class.

    For the empty permutation (origin only) every class holds vacuously
    except presorted and prelayered, which need at least one point.
    """

    increasing: bool
    decreasing: bool
    presorted: int  # largest m with prefix 1..m; presorted iff >= 1
    prelayered: int  # m of a (m, ..., 1, m+1) prefix, 0 if none
    layers: tuple[int, ...] | None
    split_layer: bool
    cliff: int | None
    mountain: int | None  # peak position
    sparse: int  # minimal m of m-sparse decreasing
    greedy_dec_subseq: tuple[int, ...]
    splitting_points: tuple[int, ...]
    final_dec_run_start: int

    @property
    def layered(self) -> bool:
        return self.layers is not None

    @property
    def is_presorted(self) -> bool:
        return self.presorted >= 1

    @property
    def is_prelayered(self) -> bool:
        return self.prelayered >= 1

    @property
    def is_cliff(self) -> bool:
        return self.cliff is not None

    @property
    def is_mountain(self) -> bool:
        return self.mountain is not None

    def names(self) -> list[str]:
        out = []
        if self.increasing:
            out.append("increasing")
        if self.decreasing:
            out.append("decreasing")
        if self.is_presorted:
            out.append(f"presorted(m={self.presorted})")
        if self.is_prelayered:
            out.append(f"prelayered(m={self.prelayered})")
        if self.layered:
            out.append("layered(" + ",".join(map(str, self.layers)) + ")")
        if self.split_layer:
            out.append("split-layer")
        if self.is_cliff:
            out.append(f"cliff(k={self.cliff})")
        if self.is_mountain:
            out.append(f"mountain(peak={self.mountain})")
        out.append(f"{self.sparse}-sparse")
        return out


def classify(p: Permutation) -> ClassReport:
    vals = p.values
    layers = layer_sizes(p)
    split = layers is not None and all(min(a, b) == 1 for a, b in zip(layers, layers[1:]))
    return ClassReport(
        increasing=all(a < b for a, b in zip(vals, vals[1:])),
        decreasing=all(a > b for a, b in zip(vals, vals[1:])),
        presorted=presorted_length(p),
        prelayered=prelayered_size(p),
        layers=None if layers is None else tuple(layers),
        split_layer=split,
        cliff=cliff_size(p),
        mountain=mountain_peak(p),
        sparse=sparseness(p),
        greedy_dec_subseq=tuple(greedy_decreasing_subsequence(p)),
        splitting_points=tuple(splitting_points(p)),
        final_dec_run_start=final_decreasing_run_start(p),
    )


def dominant_point(c: Configuration, positions: Iterable[int]) -> Point:
    """Coordinatewise maximum of the points at ``positions``."""
    pts = [c.points[i] for i in positions]
    if not pts:
        raise ValueError("dominant point of an empty set")
    return Point(max(p.x for p in pts), max(p.y for p in pts))


def configuration_satisfies(c: Configuration, p: Permutation | Sequence[int]) -> bool:
    values = p.values if isinstance(p, Permutation) else tuple(p)
    return c.n - 1 == len(values) and permutation_of(c).values == values
