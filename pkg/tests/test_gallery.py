"""Tests for src/models/gallery.py"""

import pytest

from src.exceptions import PreconditionError, UnknownNameError
from src.features.properties import (
    is_ultrabisymmetric,
    isolated_points,
    neutral_elements,
    replay_witness,
)
from src.models.gallery import ALIASES, GALLERY, PROFILE_NAMES, gallery_get, gallery_names


class TestLookup:
    def test_names(self):
        assert gallery_names() == tuple(GALLERY)
        assert "z2_H'" in gallery_names()
        assert len(gallery_names()) == 13

    def test_alias(self):
        assert gallery_get("z2_H_prime").op == gallery_get("z2_H'").op
        assert set(ALIASES.values()) <= set(GALLERY)

    def test_unknown_name_lists_choices(self):
        with pytest.raises(UnknownNameError) as info:
            gallery_get("median5")
        assert "median3" in info.value.choices
        assert "median5" in str(info.value)

    def test_median_sizes(self):
        assert gallery_get("median3", k=4).op.k == 4
        with pytest.raises(PreconditionError):
            gallery_get("median3", k=5)
        with pytest.raises(PreconditionError):
            gallery_get("median3", n=2)

    def test_projection_arity(self):
        assert gallery_get("projection_first", n=3).op.n == 3
        with pytest.raises(PreconditionError):
            gallery_get("projection_first", n=4)


class TestProfiles:
    @pytest.mark.parametrize("name", gallery_names())
    def test_neutral_and_isolated(self, name):
        entry = gallery_get(name)
        assert neutral_elements(entry.op) == entry.neutral
        assert isolated_points(entry.op) == entry.isolated

    def test_every_profile_is_complete(self):
        for name in gallery_names():
            assert set(gallery_get(name).expected) == set(PROFILE_NAMES)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_median_profile_holds_on_each_chain(self, k):
        entry = gallery_get("median3", k=k)
        report = is_ultrabisymmetric(entry.op)
        assert not report
        assert replay_witness(entry.op, report)

    def test_fig1_panels_are_uninorms(self):
        for name in ("fig1_left", "fig1_right"):
            assert all(gallery_get(name).expected.values())
