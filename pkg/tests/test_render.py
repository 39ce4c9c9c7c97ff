"""Tests for src/visualization/render.py"""

import os

import pytest

from src.data.chain_core import FiniteChain, OpTable
from src.exceptions import UnsupportedArityError
from src.models.gallery import gallery_get
from src.visualization.render import level_sets, render_ascii, render_svg

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def _golden(name):
    with open(os.path.join(GOLDEN, name), "r") as f:
        return f.read()


# ── ASCII ────────────────────────────────────────────────────────────────────

class TestAscii:
    @pytest.mark.parametrize("name", ["fig1_left", "fig1_right"])
    def test_golden(self, name):
        assert render_ascii(gallery_get(name).op) == _golden(f"{name}.txt")

    def test_single_cell(self):
        text = render_ascii(OpTable(FiniteChain(1), 2, [1]))
        assert text.splitlines()[1] == "1 | 1"
        assert text.rstrip("\n").endswith("isolated: (1,1)")

    def test_no_isolated_points(self):
        text = render_ascii(gallery_get("projection_first").op)
        assert text.rstrip("\n").endswith("isolated: none")

    def test_ternary_slices(self):
        lines = render_ascii(gallery_get("median3").op).splitlines()
        assert lines[0] == "k=3 n=3"
        assert [line for line in lines if line.startswith("x1=")] == ["x1=1", "x1=2", "x1=3"]
        assert lines[2] == "3 | 1 2 3"

    def test_unsupported_arity(self):
        with pytest.raises(UnsupportedArityError):
            render_ascii(OpTable(FiniteChain(2), 4, [1] * 16))


# ── level sets ───────────────────────────────────────────────────────────────

class TestLevelSets:
    def test_ordered_by_size_then_value(self):
        sets = level_sets(gallery_get("fig1_left").op)
        assert list(sets) == [3, 2, 4, 1]
        assert sets[2] == [(2, 2), (2, 3), (3, 2)]


# ── SVG ──────────────────────────────────────────────────────────────────────

class TestSvg:
    def test_deterministic(self):
        op = gallery_get("fig1_left").op
        first = render_svg(op)
        assert first.lstrip().startswith("<?xml")
        assert "<svg" in first
        assert render_svg(op) == first

    def test_ternary(self):
        svg = render_svg(gallery_get("median3", k=2).op)
        assert "x1=2" in svg

    def test_unsupported_arity(self):
        with pytest.raises(UnsupportedArityError):
            render_svg(OpTable(FiniteChain(2), 1, [1, 2]))
