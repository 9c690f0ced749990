import xml.etree.ElementTree as ET
from fractions import Fraction as F

from hypothesis import given, settings

from anchorpack.closed_forms import bound_decreasing
from anchorpack.geometry import Configuration, Packing, packing_area
from anchorpack.render import SIZE, render, rect_area_from_svg
from anchorpack.solver import solve_max
from oracles import configs

PAIR = Configuration.from_coords([(F(3, 10), F(2, 5))])


def _tags(text):
    return [el.tag.split("}")[-1] for el in ET.fromstring(text).iter()]


def test_output_is_deterministic():
    p = solve_max(bound_decreasing(5).tight_config).best
    a = render(p, staircase=True, hyperbola=0.3, title="n = 5").text
    b = render(p, staircase=True, hyperbola=0.3, title="n = 5").text
    assert a.encode() == b.encode()


def test_origin_only_fills_the_viewbox():
    p = solve_max(Configuration.from_coords([])).best
    text = render(p).text
    root = ET.fromstring(text)
    assert root.get("viewBox") == f"0 0 {SIZE} {SIZE}"
    rects = [el for el in root.iter() if el.tag.endswith("rect")]
    assert len(rects) == 1
    r = rects[0]
    assert (r.get("x"), r.get("y"), r.get("width"), r.get("height")) == ("0", "0", "1000", "1000")
    assert r.get("fill-opacity") == "0.4"
    assert rect_area_from_svg(text) == 1


def test_two_point_packing():
    p = Packing.from_corners(PAIR, [(1, F(2, 5)), (1, 1)])
    assert packing_area(p) == F(41, 50)
    text = render(p).text
    assert _tags(text).count("rect") == 2
    assert abs(rect_area_from_svg(text) - 0.82) <= 2e-3
    circles = [el for el in ET.fromstring(text).iter() if el.tag.endswith("circle")]
    assert [c.get("r") for c in circles] == ["6", "6"]
    # origin at the bottom-left after the flip
    assert (circles[0].get("cx"), circles[0].get("cy")) == ("0", "1000")


def test_hyperbola_overlay_on_decreasing_15():
    # too many points for an exhaustive solve; the optimum is the origin's
    # tall rectangle followed by one strip per point up to the top edge
    res = bound_decreasing(15)
    c = res.tight_config
    xs = [p.x for p in c.points[1:]] + [1]
    p = Packing.from_corners(c, [(x, 1) for x in xs])
    assert packing_area(p) == res.bound
    text = render(p, hyperbola=float(res.tight_points[0].x * res.tight_points[0].y)).text
    assert "polyline" in _tags(text)
    assert _tags(text).count("rect") == 15
    assert abs(rect_area_from_svg(text) - float(res.bound)) <= 2e-3


def test_staircase_outline():
    p = solve_max(bound_decreasing(3).tight_config).best
    plain, marked = render(p).text, render(p, staircase=True).text
    assert "stroke-dasharray" in marked and "stroke-dasharray" not in plain
    assert rect_area_from_svg(plain) == rect_area_from_svg(marked)


@settings(max_examples=60, deadline=None)
@given(configs(n_max=5))
def test_rendered_area_matches_solver(c):
    res = solve_max(c)
    assert abs(rect_area_from_svg(render(res.best).text) - float(res.area)) <= 2e-3


def test_save(tmp_path):
    fig = render(solve_max(PAIR).best)
    out = tmp_path / "pair.svg"
    fig.save(out)
    assert out.read_text() == fig.text == str(fig)
