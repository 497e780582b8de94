import xml.etree.ElementTree as ET

from classcover.formula import Formula
from classcover.instance import Instance
from classcover.reduction import build_bcc
from classcover.solver import exact_cover
from classcover.svg import render_svg

NS = "{http://www.w3.org/2000/svg}"


def parse(text):
    return ET.fromstring(text.split("\n", 1)[1])


def test_empty_instance_is_valid_svg():
    root = parse(render_svg(Instance()))
    assert root.tag == NS + "svg"
    assert not root.findall(f".//{NS}circle")


def test_variables_only_counts():
    root = parse(render_svg(build_bcc(Formula(2))))
    assert len(root.findall(f".//{NS}circle")) == 8
    stars = root.find(f"{NS}g[@class='red']").findall(f"{NS}polygon")
    assert len(stars) == 18


def test_hover_titles_carry_roles():
    text = render_svg(build_bcc(Formula.from_ints(2, [[1, -2]])))
    assert "<title>clause:0:P (0, 128)</title>" in text
    assert "center:1" in text


def test_every_blue_inside_a_drawn_box():
    inst = build_bcc(Formula.from_ints(2, [[1, -2], [2]]))
    cover, _ = exact_cover(inst)
    root = parse(render_svg(inst, cover))
    boxes = []
    for poly in root.find(f"{NS}g[@class='cover']").findall(f"{NS}polygon"):
        pts = [tuple(map(float, p.split(","))) for p in poly.get("points").split()]
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        boxes.append((min(xs), min(ys), max(xs), max(ys)))
    for c in root.findall(f".//{NS}circle"):
        x, y = float(c.get("cx")), float(c.get("cy"))
        assert any(x0 - 1e-3 <= x <= x1 + 1e-3 and y0 - 1e-3 <= y <= y1 + 1e-3 for x0, y0, x1, y1 in boxes)


def test_viewport_size():
    root = parse(render_svg(build_bcc(Formula(1)), size=300))
    assert max(int(root.get("width")), int(root.get("height"))) <= 300
