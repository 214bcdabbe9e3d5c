import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wapkit.graphic import StepVectors, discrepancy_profile, graphic_points
from wapkit.plotting import TRUNCATED, ascii_plot, figure_graphic, figure_profile, svg_plot, svg_vertices
from wapkit.report import plain, render, to_json, to_text, write_atomic
from wapkit.words import named_word


def test_ascii_up_down_flat():
    path = graphic_points("1100", StepVectors(((1, -1), (1, 1))))
    assert ascii_plot(path).splitlines() == ["1 | /\\", "0 |/  \\"]
    flat = graphic_points("0101", StepVectors(((1, 0), (1, 1))))
    assert ascii_plot(flat).splitlines() == ["1 |  _/", "0 |_/"]


def test_ascii_truncation_marker():
    path = graphic_points(named_word("prop31").prefix(500))
    text = ascii_plot(path, width=100, height=30)
    lines = text.splitlines()
    assert lines[-1].startswith(TRUNCATED)
    assert len(lines) <= 31
    assert all(len(x.split("|", 1)[1]) <= 100 for x in lines[:-1])
    assert TRUNCATED not in ascii_plot(graphic_points("0101"))


@settings(max_examples=50, deadline=None)
@given(u=st.text(alphabet="01", min_size=1, max_size=80))
def test_ascii_one_mark_per_step(u):
    lines = ascii_plot(graphic_points(u)).splitlines()
    body = [x.split("|", 1)[1] for x in lines]
    for n in range(len(u)):
        col = [row[n] for row in body if n < len(row) and row[n] != " "]
        assert col == ["/" if u[n] == "1" else "\\"]


@settings(max_examples=50, deadline=None)
@given(u=st.text(alphabet="01", max_size=300), bx=st.integers(1, 3), by=st.integers(-3, 3))
def test_svg_vertices_equal_graphic(u, bx, by):
    try:
        v = StepVectors(((bx, by), (1, 1)))
    except ValueError:
        return
    path = graphic_points(u, v)
    svg = svg_plot(path)
    assert svg_vertices(svg) == path.points
    assert 'transform="scale(1,-1)"' in svg and 'id="grid"' in svg


def test_figures(tmp_path):
    path = graphic_points(named_word("paperfolding").prefix(32))
    figure_graphic(path, tmp_path / "g.svg", title="paperfolding")
    figure_graphic(graphic_points(named_word("paperfolding").prefix(5000)), tmp_path / "big.pdf")
    d = discrepancy_profile(named_word("paperfolding"), "1/2", 5000)
    figure_profile(d, tmp_path / "d.png", levels=[-1])
    assert (tmp_path / "g.svg").read_text().startswith("<?xml")
    assert (tmp_path / "big.pdf").read_bytes()[:4] == b"%PDF"
    assert (tmp_path / "d.png").stat().st_size > 0


def test_report_plain_is_exact():
    doc = {"r": Fraction(2, 4), "xs": np.arange(3), "n": np.int64(7), "b": True, "z": None}
    assert plain(doc) == {"r": "1/2", "xs": [0, 1, 2], "n": 7, "b": True, "z": None}
    with pytest.raises(TypeError):
        plain({"f": 0.5})
    assert json.loads(to_json(doc))["r"] == "1/2"


def test_report_text():
    doc = {"a": {"b": 1, "c": [1, 2]}, "w": [{"x": Fraction(1, 3)}], "e": []}
    assert to_text(doc) == "a.b: 1\na.c: 1 2\nw[0].x: 1/3\ne: \n"
    assert render(doc, "json") == to_json(doc)


def test_write_atomic(tmp_path):
    p = tmp_path / "out.txt"
    write_atomic(p, "hello\n")
    write_atomic(p, "bye\n")
    assert p.read_text() == "bye\n"
    assert [x.name for x in tmp_path.iterdir()] == ["out.txt"]
    write_atomic(tmp_path / "b.bin", b"\x00\x01")
    assert (tmp_path / "b.bin").read_bytes() == b"\x00\x01"
