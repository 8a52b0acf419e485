import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquescope.community import Partition
from cliquescope.graph import WeightedGraph, parse_edge_list
from cliquescope.layout import LCG, export_csv, export_svg, parse_csv, spring_layout
from cliquescope.scores import ScoreVector
from oracles import random_graph

SVG_NS = "{http://www.w3.org/2000/svg}"


def test_lcg_known_sequence():
    # first outputs of the MMIX LCG from seed 0 are the increment, then a*c + c
    r = LCG(0)
    assert r.next_u64() == 1442695040888963407
    assert r.next_u64() == (6364136223846793005 * 1442695040888963407 + 1442695040888963407) % 2**64
    u = LCG(42).uniform()
    assert 0 <= u < 1


def test_layout_deterministic(rng):
    g = random_graph(rng, 40, 0.1, weights=True)
    a = spring_layout(g, seed=3, iterations=30)
    b = spring_layout(g, seed=3, iterations=30)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, spring_layout(g, seed=4, iterations=30))


def test_layout_single_and_empty():
    assert spring_layout(WeightedGraph.from_edges(["x"], [])).tolist() == [[0.5, 0.5]]
    assert spring_layout(WeightedGraph.from_edges([], [])).shape == (0, 2)
    with pytest.raises(ValueError):
        spring_layout(parse_edge_list("a,b"), iterations=0)


def test_layout_k2_separated():
    pos = spring_layout(parse_edge_list("a,b"))
    assert np.linalg.norm(pos[0] - pos[1]) > 1e-3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**64 - 1))
def test_layout_in_unit_square(graph_seed, seed):
    g = random_graph(np.random.default_rng(graph_seed), 15, 0.2, weights=True)
    pos = spring_layout(g, seed=seed, iterations=10)
    assert pos.shape == (15, 2)
    assert np.all(np.isfinite(pos)) and pos.min() >= 0 and pos.max() <= 1


def _parse_svg(doc: bytes):
    root = ET.fromstring(doc)
    assert root.tag == SVG_NS + "svg" and root.get("version") == "1.1"
    circles = root.findall(f".//{SVG_NS}circle")
    lines = root.findall(f".//{SVG_NS}line")
    return circles, lines


def test_svg_partition_colors():
    g = parse_edge_list("a,b\nb,c")
    p = Partition(g.labels, [0, 0, 1])
    circles, lines = _parse_svg(export_svg(g, spring_layout(g), p))
    assert len(circles) == 3 and len(lines) == 2
    fills = [c.get("fill") for c in circles]
    assert len(set(fills)) == 2 and fills[0] == fills[1] != fills[2]


def test_svg_default_and_flat_scores():
    g = parse_edge_list("a,b\nb,c\nc,d")
    coords = spring_layout(g)
    circles, _ = _parse_svg(export_svg(g, coords, Partition((), [])))
    assert len({c.get("fill") for c in circles}) == 1
    circles, _ = _parse_svg(export_svg(g, coords, ScoreVector(g.labels, [2, 2, 2, 2], "degree")))
    assert len({c.get("fill") for c in circles}) == 1
    circles, _ = _parse_svg(export_svg(g, coords, ScoreVector(g.labels, [1, 2, 3, 4], "degree")))
    assert len({c.get("fill") for c in circles}) == 4


def test_svg_escapes_labels():
    g = WeightedGraph.from_edges(["<a&b>", "c"], [(0, 1, 1)])
    circles, _ = _parse_svg(export_svg(g, spring_layout(g)))
    assert circles[0].find(SVG_NS + "title").text == "<a&b>"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_svg_counts_match_graph(seed):
    g = random_graph(np.random.default_rng(seed), 12, 0.3)
    circles, lines = _parse_svg(export_svg(g, spring_layout(g, iterations=5)))
    assert len(circles) == g.n_nodes and len(lines) == g.n_edges


def test_csv_examples():
    assert export_csv({"a": 0, "b": 1}) == "label,value\na,0\nb,1\n"
    assert export_csv({}) == "label,value\n"
    assert export_csv({"x": 1 / 3}) == "label,value\nx,0.333333\n"
    p = Partition(("b", "a"), [0, 1])
    assert export_csv(p) == "label,value\na,1\nb,0\n"
    assert export_csv(ScoreVector(("z", "y"), [2.5, 4], "m")) == "label,value\ny,4\nz,2.5\n"


labels = st.text(st.characters(blacklist_categories=("Cc", "Cs")), min_size=1)


@given(st.dictionaries(labels, st.integers(0, 50)))
def test_csv_round_trip(assignment):
    back = parse_csv(export_csv(assignment))
    assert back == {k: float(v) for k, v in assignment.items()}


def test_csv_uses_lf_only():
    text = export_csv({"a": 1, "b": 2})
    assert "\r" not in text and re.fullmatch(r"(?:[^\n]*\n)+", text)
