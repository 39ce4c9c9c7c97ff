"""Tests for src/data/nop_format.py"""

import pytest

from src.data.chain_core import FiniteChain, GMap, LinearOrdering, OpTable
from src.data.nop_format import (
    dumps_op,
    format_gmap,
    format_ordering,
    loads_op,
    parse_gmap,
    parse_ordering,
    read_op,
    write_op,
)
from src.exceptions import ConstructionError, NopParseError

FIG1_LEFT_NOP = """# max w.r.t. 3,2,4,1
NOP 1
k=4 n=2
1 1 1 1
1 2 2 4
1 2 3 4
1 4 4 4
"""


# ── writer ───────────────────────────────────────────────────────────────────

class TestDumps:
    def test_binary_table_is_written_as_matrix(self):
        op = OpTable(FiniteChain(4), 2, [1, 1, 1, 1, 1, 2, 2, 4, 1, 2, 3, 4, 1, 4, 4, 4])
        assert dumps_op(op, ["max w.r.t. 3,2,4,1"]) == FIG1_LEFT_NOP

    def test_file_round_trip(self, tmp_path):
        op = OpTable(FiniteChain(2), 3, [1, 2, 2, 1, 2, 1, 1, 2])
        path = tmp_path / "t.nop"
        write_op(op, path, comments=["ternary"])
        assert read_op(path) == op


# ── parser ───────────────────────────────────────────────────────────────────

class TestLoads:
    def test_parses_with_comments_and_blank_lines(self):
        op = loads_op("\n# header\n" + FIG1_LEFT_NOP + "\n\n")
        assert (op.k, op.n) == (4, 2)
        assert op(4, 2) == 4
        assert op(3, 3) == 3

    def test_values_may_span_lines_freely(self):
        op = loads_op("NOP 1\nk=2 n=2\n1 2 2\n2\n")
        assert op.values.tolist() == [1, 2, 2, 2]

    def test_empty(self):
        with pytest.raises(NopParseError) as info:
            loads_op("")
        assert (info.value.line, info.value.column) == (1, 1)

    def test_wrong_version(self):
        with pytest.raises(NopParseError, match="unsupported NOP version") as info:
            loads_op("NOP 2\nk=2 n=2\n1 2 2 2\n")
        assert info.value.line == 1
        assert info.value.column == 5

    def test_bad_header(self):
        with pytest.raises(NopParseError) as info:
            loads_op("NOP 1\nk=2\n1 2 2 2\n")
        assert info.value.line == 2

    def test_non_integer_position(self):
        with pytest.raises(NopParseError, match="not an integer") as info:
            loads_op("NOP 1\nk=2 n=2\n1 2\n2 x\n")
        assert (info.value.line, info.value.column) == (4, 3)
        assert str(info.value).startswith("line 4, column 3: ")

    def test_value_out_of_range(self):
        with pytest.raises(NopParseError, match="outside 1..2"):
            loads_op("NOP 1\nk=2 n=2\n1 2 3 2\n")

    def test_truncated(self):
        with pytest.raises(NopParseError, match="expected 4 values, got 3"):
            loads_op("NOP 1\nk=2 n=2\n1 2 2\n")

    def test_too_many_values(self):
        with pytest.raises(NopParseError, match="more than 4"):
            loads_op("NOP 1\nk=2 n=2\n1 2 2 2 1\n")


# ── orderings and g-maps ─────────────────────────────────────────────────────

class TestOrderingAndGMapText:
    def test_ordering(self):
        ordering = parse_ordering("3, 2,4,1")
        assert ordering == LinearOrdering(FiniteChain(4), (3, 2, 4, 1))
        assert format_ordering(ordering) == "3,2,4,1"

    def test_ordering_not_integers(self):
        with pytest.raises(NopParseError):
            parse_ordering("3,a,1")

    def test_ordering_not_permutation(self):
        with pytest.raises(ConstructionError):
            parse_ordering("1,1,2")

    def test_gmap(self):
        chain = FiniteChain(4)
        gm = parse_gmap("e=3; g=4,3,3", chain)
        assert gm == GMap(chain, 3, (4, 3, 3))
        assert format_gmap(gm) == "e=3; g=4,3,3"

    def test_gmap_malformed(self):
        with pytest.raises(NopParseError):
            parse_gmap("g=4,3,3", FiniteChain(4))
