"""Plain-text point files.

One point per line, two whitespace-separated values, each a decimal literal
(``0.25``) or a fraction (``1/4``).  Blank lines and lines starting with ``#``
are skipped, as is an explicit ``0 0`` origin line.  Values are read exactly.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .geometry import Configuration, InvalidConfiguration, Scalar


class PointFileError(InvalidConfiguration):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _value(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise PointFileError(f"bad number {tok!r}", line) from None


def parse_points(text: str) -> Configuration:
    coords = []
    lines = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) != 2:
            raise PointFileError(f"expected two values, got {len(toks)}", no)
        x, y = _value(toks[0], no), _value(toks[1], no)
        if x == 0 and y == 0:
            continue
        if not (0 < x <= 1 and 0 < y <= 1):
            raise PointFileError(f"point ({toks[0]}, {toks[1]}) is outside (0, 1]^2", no)
        if x in {c[0] for c in coords}:
            raise PointFileError(f"x = {toks[0]} repeats line {lines[('x', x)]}", no)
        if y in {c[1] for c in coords}:
            raise PointFileError(f"y = {toks[1]} repeats line {lines[('y', y)]}", no)
        lines[("x", x)] = lines[("y", y)] = no
        coords.append((x, y))
    return Configuration.from_coords(coords)


def load_points(path: str | Path) -> Configuration:
    return parse_points(Path(path).read_text())


def format_value(v: Scalar) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def format_points(c: Configuration, header: str | None = None) -> str:
    """Serialise the non-origin points; :func:`parse_points` inverts it exactly."""
    out = []
    if header:
        out.extend(f"# {h}" for h in header.splitlines())
    out.extend(f"{format_value(x)} {format_value(y)}" for x, y in c.coords())
    return "\n".join(out) + "\n"


def save_points(c: Configuration, path: str | Path, header: str | None = None) -> None:
    Path(path).write_text(format_points(c, header))
