"""Tests for src/cli.py"""

import os

import pytest
from click.testing import CliRunner

from src.cli import EXIT_GUARD, EXIT_MISMATCH, EXIT_USAGE, cli
from src.config import get_settings
from src.data.chain_core import FiniteChain, LinearOrdering
from src.data.nop_format import dumps_op, loads_op
from src.features.properties import PROPERTY_CHECKS, is_associative
from src.models.constructors import max_wrt
from src.models.gallery import gallery_get

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fig1_left(tmp_path):
    path = tmp_path / "fig1_left.nop"
    path.write_text(dumps_op(gallery_get("fig1_left").op))
    return str(path)


# ── check ────────────────────────────────────────────────────────────────────

class TestCheck:
    def test_fig1_left(self, runner, fig1_left):
        result = runner.invoke(cli, ["check", fig1_left])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        for name in ("quasitrivial", "symmetric", "nondecreasing", "associative"):
            assert f"PROP {name} HOLDS" in lines
        assert "NEUTRAL {3}" in lines
        assert "ISOLATED {(3,3)}" in lines

    def test_failing_property_is_not_an_error(self, runner, tmp_path):
        path = tmp_path / "median3_L2.nop"
        path.write_text(dumps_op(gallery_get("median3", k=2).op))
        result = runner.invoke(cli, ["check", str(path), "-p", "associative"])
        assert result.exit_code == 0
        assert result.output == ("PROP associative FAILS tuple=(1,1,1,2,2) i=1 "
                                 "left=2 right=1\n")

    def test_truncated_file(self, runner, tmp_path):
        path = tmp_path / "bad.nop"
        path.write_text("NOP 1\nk=2 n=2\n1 2 2\n")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == EXIT_USAGE
        assert "line 3, column 1" in result.output

    def test_config_file_reaches_library_defaults(self, runner, fig1_left, tmp_path,
                                                  monkeypatch):
        config = tmp_path / "alt.yaml"
        config.write_text("chunk_size: 5\nsamples: 11\n")
        seen = []

        def associative(op):
            seen.append((get_settings().chunk_size, get_settings().samples))
            return is_associative(op)

        monkeypatch.setitem(PROPERTY_CHECKS, "associative", associative)
        result = runner.invoke(cli, ["--config", str(config), "check", fig1_left,
                                     "-p", "associative"])
        assert result.exit_code == 0
        assert seen == [(5, 11)]
        assert get_settings().chunk_size != 5

    def test_bisymmetry_guard(self, runner, tmp_path):
        path = tmp_path / "median.nop"
        path.write_text(dumps_op(gallery_get("median3").op))
        result = runner.invoke(cli, ["--guard", "100", "check", str(path), "-p", "bisymmetric"])
        assert result.exit_code == EXIT_GUARD


# ── construct ────────────────────────────────────────────────────────────────

class TestConstruct:
    def test_max_is_fig1_left(self, runner):
        result = runner.invoke(cli, ["construct", "max", "--order", "3,2,4,1", "--n", "2"])
        assert result.exit_code == 0
        assert loads_op(result.output) == gallery_get("fig1_left").op

    def test_gmap_gives_same_table(self, runner):
        result = runner.invoke(cli, ["construct", "gmap", "--k", "4", "--e", "3",
                                     "--g", "4,3,3", "--n", "2"])
        assert result.exit_code == 0
        assert loads_op(result.output) == gallery_get("fig1_left").op

    def test_reduce_and_lift_through_files(self, runner, tmp_path):
        ternary = tmp_path / "tern.nop"
        binary = tmp_path / "bin.nop"
        result = runner.invoke(cli, ["construct", "max", "--order", "1,2,3", "--n", "3",
                                     "--out", str(ternary)])
        assert result.exit_code == 0 and result.output == ""
        runner.invoke(cli, ["construct", "reduce", "--in", str(ternary), "--out", str(binary)])
        natural = LinearOrdering.natural(FiniteChain(3))
        assert loads_op(binary.read_text()) == max_wrt(natural, 2)
        result = runner.invoke(cli, ["construct", "lift", "--in", str(binary), "--n", "3"])
        assert loads_op(result.output) == loads_op(ternary.read_text())

    def test_derive_and_neutral(self, runner, fig1_left, tmp_path):
        derived = tmp_path / "derived.nop"
        runner.invoke(cli, ["construct", "derive", "--in", fig1_left, "--n", "3",
                            "--out", str(derived)])
        result = runner.invoke(cli, ["construct", "neutral", "--in", str(derived)])
        assert result.exit_code == 0
        assert loads_op(result.output) == gallery_get("fig1_left").op

    def test_contour(self, runner):
        result = runner.invoke(cli, ["construct", "contour", "--k", "4", "--n", "2",
                                     "--choices", "010"])
        assert result.exit_code == 0
        assert loads_op(result.output) == gallery_get("fig1_left").op
        assert "# class 3: 1 points" in result.output

    def test_missing_parameter(self, runner):
        result = runner.invoke(cli, ["construct", "max", "--order", "3,2,4,1"])
        assert result.exit_code == EXIT_USAGE
        assert "--n" in result.output

    def test_precondition_failure(self, runner, tmp_path):
        path = tmp_path / "abc.nop"
        path.write_text(dumps_op(gallery_get("ab_c_flat").op))
        result = runner.invoke(cli, ["construct", "derive", "--in", str(path), "--n", "3"])
        assert result.exit_code == EXIT_USAGE
        assert "associative" in result.output


# ── enumerate ────────────────────────────────────────────────────────────────

class TestEnumerate:
    def test_orderings(self, runner):
        result = runner.invoke(cli, ["enumerate", "orderings", "--k", "3"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["1,2,3", "2,1,3", "2,3,1", "3,2,1", "count=4"]

    def test_single_element(self, runner):
        result = runner.invoke(cli, ["enumerate", "orderings", "--k", "1"])
        assert result.output.splitlines() == ["1", "count=1"]

    def test_uninorms(self, runner):
        result = runner.invoke(cli, ["enumerate", "uninorms", "--k", "4", "--n", "2"])
        assert result.exit_code == 0
        assert result.output.count("NOP 1") == 8
        assert result.output.rstrip("\n").endswith("count=8")

    def test_gmaps(self, runner):
        result = runner.invoke(cli, ["enumerate", "gmaps", "--k", "3"])
        assert result.output.splitlines() == ["e=1; g=1", "e=2; g=2,2", "e=2; g=3,2",
                                              "e=3; g=3,3,3", "count=4"]

    def test_guard(self, runner):
        result = runner.invoke(cli, ["--guard", "3", "enumerate", "uninorms", "--k", "4"])
        assert result.exit_code == EXIT_GUARD


# ── verify ───────────────────────────────────────────────────────────────────

class TestVerify:
    def test_lines_format(self, runner):
        result = runner.invoke(cli, ["--format", "lines", "verify", "cor24f", "--k", "3",
                                     "--n", "3"])
        assert result.exit_code == 0
        assert result.output == "SUITE cor24f k=3 n=3 pop=192 verdict=holds\n"

    def test_mismatch_exit_code(self, runner):
        result = runner.invoke(cli, ["verify", "marmaytor", "--k", "3", "--constraint", "q,s"])
        assert result.exit_code == EXIT_MISMATCH
        assert "verdict     fails" in result.output

    def test_all_with_csv(self, runner, tmp_path):
        path = tmp_path / "summary.csv"
        result = runner.invoke(cli, ["--format", "lines", "verify", "--all", "--k", "2",
                                     "--csv", str(path)])
        assert result.exit_code == 0
        assert path.exists()
        assert result.output.count("SUITE ") == path.read_text().count("\n") - 1

    def test_needs_suite_or_all(self, runner):
        result = runner.invoke(cli, ["verify", "--k", "3"])
        assert result.exit_code == EXIT_USAGE

    def test_samples_and_exhaustive_conflict(self, runner):
        result = runner.invoke(cli, ["verify", "cor24f", "--k", "3", "--exhaustive",
                                     "--samples", "5"])
        assert result.exit_code == EXIT_USAGE

    def test_guard(self, runner):
        result = runner.invoke(cli, ["--guard", "50", "verify", "prop21ft", "--k", "3"])
        assert result.exit_code == EXIT_GUARD

    def test_command_guard(self, runner):
        result = runner.invoke(cli, ["verify", "prop21ft", "--k", "3", "--guard", "50"])
        assert result.exit_code == EXIT_GUARD
        assert "error:" in result.output

    def test_command_guard_overrides_global(self, runner):
        result = runner.invoke(cli, ["--guard", "1", "--format", "lines", "verify", "cor24f",
                                     "--k", "2", "--guard", "1000"])
        assert result.exit_code == 0
        assert result.output.startswith("SUITE cor24f k=2 n=2")


# ── render and gallery ───────────────────────────────────────────────────────

class TestRenderAndGallery:
    def test_render_golden(self, runner, fig1_left):
        result = runner.invoke(cli, ["render", fig1_left])
        assert result.exit_code == 0
        with open(os.path.join(GOLDEN, "fig1_left.txt")) as f:
            assert result.output == f.read()

    def test_render_svg_to_file(self, runner, fig1_left, tmp_path):
        out = tmp_path / "fig.svg"
        result = runner.invoke(cli, ["render", fig1_left, "--format", "svg", "--output", str(out)])
        assert result.exit_code == 0
        assert "<svg" in out.read_text()

    def test_render_unsupported_arity(self, runner, tmp_path):
        path = tmp_path / "four.nop"
        path.write_text("NOP 1\nk=1 n=4\n1\n")
        result = runner.invoke(cli, ["render", str(path)])
        assert result.exit_code == EXIT_USAGE

    def test_gallery_entry(self, runner):
        result = runner.invoke(cli, ["gallery", "majority_e"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert "EXPECT associative FAILS" in lines
        assert "NEUTRAL {2}" in lines
        assert "ISOLATED {}" in lines
        assert loads_op(result.output.split("\n\n")[0]) == gallery_get("majority_e").op

    def test_gallery_unknown(self, runner):
        result = runner.invoke(cli, ["gallery", "nothing"])
        assert result.exit_code == EXIT_USAGE

    def test_gallery_list(self, runner):
        result = runner.invoke(cli, ["gallery", "--list"])
        assert "z2_H'" in result.output.splitlines()
