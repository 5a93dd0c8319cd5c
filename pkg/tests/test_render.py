import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from srrmds.codes import GeneratorSpec
from srrmds.errors import InvalidArgument
from srrmds.render import points_csv, polytope_edges, region_svg
from srrmds.srr import closed_form_polytope, vertices_2d3d

SVG = "{http://www.w3.org/2000/svg}"


def test_two_dimensional_boundary():
    p = closed_form_polytope(GeneratorSpec(4, 2, 2))
    v = vertices_2d3d(p)
    edges = {(v[a], v[b]) for a, b in polytope_edges(p, v)}
    assert edges == {
        ((0, 0), (0, F(5, 2))),
        ((0, 0), (F(5, 2), 0)),
        ((0, F(5, 2)), (1, 2)),
        ((1, 2), (2, 1)),
        ((2, 1), (F(5, 2), 0)),
    }


@pytest.mark.parametrize("spec, faces", [((4, 3, 3), 6), ((5, 3, 3), 7), ((6, 3, 3), None)])
def test_three_dimensional_euler(spec, faces):
    p = closed_form_polytope(GeneratorSpec(*spec))
    v = vertices_2d3d(p)
    e = polytope_edges(p, v)
    if faces is not None:
        assert len(v) - len(e) + faces == 2
    degree = [0] * len(v)
    for a, b in e:
        degree[a] += 1
        degree[b] += 1
    assert min(degree) >= 3


def test_svg_is_well_formed_and_deterministic():
    p = closed_form_polytope(GeneratorSpec(4, 2, 2))
    v = vertices_2d3d(p)
    text = region_svg(2, p, v, [3, 3], [F(5, 2), F(5, 2)])
    assert text == region_svg(2, p, v, [3, 3], [F(5, 2), F(5, 2)])
    root = ET.fromstring(text)
    titles = [t.text for t in root.iter(SVG + "title")]
    assert titles == ["(0/1, 0/1)", "(0/1, 5/2)", "(1/1, 2/1)", "(2/1, 1/1)", "(5/2, 0/1)"]
    dotted = [l for l in root.iter(SVG + "line") if l.get("stroke-dasharray")]
    assert len(dotted) == 2


def test_svg_dimension_limits():
    with pytest.raises(InvalidArgument):
        region_svg(4, None, [], [1] * 4, [1] * 4)


def test_csv():
    assert points_csv([(F(1, 2), 0)], 2) == "lambda_1,lambda_2\n1/2,0/1\n"
