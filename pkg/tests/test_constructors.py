"""Tests for src/models/constructors.py"""

from itertools import product

import pytest

from src.data.chain_core import FiniteChain, GMap, LinearOrdering, OpTable
from src.exceptions import ConstructionError, PreconditionError, StructureError
from src.features.properties import (
    is_associative,
    is_nondecreasing,
    is_quasitrivial,
    is_single_peaked,
    is_symmetric,
    isolated_points,
    neutral_elements,
)
from src.models.constructors import (
    ABOVE,
    BELOW,
    choices_of,
    contour_construct,
    enumerate_gmaps,
    enumerate_single_peaked,
    from_gmap,
    gbar,
    gmap_of,
    iterate_binary,
    lift_binary,
    max_wrt,
    neutral_reduction,
    order_from_binary,
    ordering_from_choices,
    reduce_binary,
)
from src.models.gallery import gallery_get

L4 = FiniteChain(4)
FIG1_ORDER = LinearOrdering(L4, (3, 2, 4, 1))


def _binary(k, rule):
    chain = FiniteChain(k)
    return OpTable(chain, 2, [rule(x, y) for x, y in product(chain.elements, repeat=2)])


# ── max_wrt ──────────────────────────────────────────────────────────────────

class TestMaxWrt:
    def test_fig1_left_rows(self):
        op = max_wrt(FIG1_ORDER, 2)
        assert op.as_array().tolist() == [[1, 1, 1, 1], [1, 2, 2, 4], [1, 2, 3, 4], [1, 4, 4, 4]]

    def test_natural_order_is_max(self):
        op = max_wrt(LinearOrdering.natural(FiniteChain(3)), 3)
        assert op == OpTable(FiniteChain(3), 3, [max(t) for t in product(range(1, 4), repeat=3)])

    def test_always_quasitrivial_symmetric_associative(self):
        op = max_wrt(LinearOrdering(L4, (2, 4, 1, 3)), 3)
        assert is_quasitrivial(op)
        assert is_symmetric(op)
        assert is_associative(op)
        assert not is_nondecreasing(op)

    def test_arity_one_is_identity(self):
        assert max_wrt(FIG1_ORDER, 1).values.tolist() == [1, 2, 3, 4]

    def test_bad_arity(self):
        with pytest.raises(PreconditionError):
            max_wrt(FIG1_ORDER, 0)


# ── lift / reduce ────────────────────────────────────────────────────────────

class TestLiftReduce:
    def test_reduce_of_lift(self):
        g = max_wrt(FIG1_ORDER, 2)
        assert reduce_binary(lift_binary(g, 3)) == g

    def test_lift_of_uninorm_reduction(self):
        op = max_wrt(FIG1_ORDER, 3)
        assert lift_binary(reduce_binary(op), 3) == op

    def test_reduce_reads_repeated_first_argument(self):
        op = gallery_get("projection_first", n=3).op
        assert reduce_binary(op) == gallery_get("projection_first").op

    def test_lift_needs_binary(self):
        with pytest.raises(PreconditionError) as info:
            lift_binary(gallery_get("median3").op, 3)
        assert info.value.property_name == "arity"


# ── order_from_binary ────────────────────────────────────────────────────────

class TestOrderFromBinary:
    def test_recovers_fig1_ordering(self):
        assert order_from_binary(max_wrt(FIG1_ORDER, 2)) == FIG1_ORDER

    def test_round_trip_all_orderings_l4(self):
        from itertools import permutations
        for seq in permutations(L4.elements):
            ordering = LinearOrdering(L4, seq)
            assert order_from_binary(max_wrt(ordering, 2)) == ordering

    def test_projection_is_not_a_total_order(self):
        with pytest.raises(StructureError) as info:
            order_from_binary(gallery_get("projection_first").op)
        assert info.value.witness == (1, 2)

    def test_needs_quasitrivial(self):
        with pytest.raises(PreconditionError) as info:
            order_from_binary(gallery_get("h_const").op)
        assert info.value.property_name == "quasitrivial"

    def test_needs_associative(self):
        # rock-paper-scissors: quasitrivial and symmetric, not associative
        beats = {(1, 2): 2, (2, 3): 3, (1, 3): 1}
        op = _binary(3, lambda x, y: x if x == y else beats[(min(x, y), max(x, y))])
        with pytest.raises(PreconditionError) as info:
            order_from_binary(op)
        assert info.value.property_name == "associative"


# ── single-peaked orderings and contour plots ────────────────────────────────

class TestSinglePeakedOrderings:
    def test_fig1_choices(self):
        assert choices_of(FIG1_ORDER) == (BELOW, ABOVE, BELOW)
        assert ordering_from_choices(L4, (0, 1, 0)) == FIG1_ORDER

    def test_choices_accept_a_string(self):
        assert ordering_from_choices(L4, "111").seq == (1, 2, 3, 4)
        assert ordering_from_choices(L4, "000").seq == (4, 3, 2, 1)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_bijection(self, k):
        chain = FiniteChain(k)
        orderings = list(enumerate_single_peaked(chain))
        assert len(orderings) == len(set(orderings)) == 2 ** (k - 1)
        assert all(is_single_peaked(o) for o in orderings)
        for bits in product((0, 1), repeat=k - 1):
            assert choices_of(ordering_from_choices(chain, bits)) == bits

    def test_wrong_number_of_bits(self):
        with pytest.raises(ConstructionError):
            ordering_from_choices(L4, (0, 1))

    def test_choices_of_needs_single_peaked(self):
        with pytest.raises(PreconditionError):
            choices_of(LinearOrdering(FiniteChain(3), (1, 3, 2)))

    def test_contour_matches_fig1(self):
        op, classes = contour_construct(L4, 2, "010")
        assert op == max_wrt(FIG1_ORDER, 2)
        assert [c.value for c in classes] == [3, 2, 4, 1]
        assert classes[0].points == ((3, 3),)
        assert [len(c.points) for c in classes] == [1, 3, 5, 7]
        assert isolated_points(op) == {(3, 3)}

    def test_contour_ternary_sizes(self):
        _, classes = contour_construct(FiniteChain(3), 3, "1" * 2)
        assert [len(c.points) for c in classes] == [1, 7, 19]

    @pytest.mark.parametrize("k, n", [(2, 2), (3, 2), (4, 3), (5, 2)])
    def test_contour_agrees_with_max_for_every_choice(self, k, n):
        chain = FiniteChain(k)
        for bits in product((0, 1), repeat=k - 1):
            op, classes = contour_construct(chain, n, bits)
            assert op == max_wrt(ordering_from_choices(chain, bits), n)
            assert sum(len(c.points) for c in classes) == len(op)

    def test_contour_classes_grow_inside_the_interval(self):
        _, classes = contour_construct(L4, 2, "010")
        seen = []
        for c in classes:
            seen.append(c.value)
            low, high = min(seen), max(seen)
            for p in c.points:
                assert all(low <= x <= high for x in p)
                assert c.value in p


# ── g-maps ───────────────────────────────────────────────────────────────────

class TestGMaps:
    def test_fig1_gmap(self):
        gm = gmap_of(max_wrt(FIG1_ORDER, 2))
        assert gm == GMap(L4, 3, (4, 3, 3))
        assert gbar(gm) == (4, 3, 3, 1)

    def test_from_gmap_matches_max(self):
        assert from_gmap(GMap(L4, 3, (4, 3, 3)), 2) == max_wrt(FIG1_ORDER, 2)

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_count_and_inverse(self, k):
        chain = FiniteChain(k)
        gmaps = list(enumerate_gmaps(chain))
        assert len(gmaps) == 2 ** (k - 1)
        for gm in gmaps:
            op = from_gmap(gm, 2)
            assert neutral_elements(op) == {gm.e}
            assert gmap_of(op) == gm

    def test_ternary_inverse(self):
        for gm in enumerate_gmaps(FiniteChain(4)):
            assert gmap_of(from_gmap(gm, 3)) == gm

    def test_enumeration_order(self):
        gmaps = list(enumerate_gmaps(FiniteChain(3)))
        assert [(gm.e, gm.g) for gm in gmaps] == [
            (1, (1,)), (2, (2, 2)), (2, (3, 2)), (3, (3, 3, 3))]

    def test_gmap_of_names_missing_property(self):
        with pytest.raises(PreconditionError) as info:
            gmap_of(gallery_get("l3_flat").op)
        assert info.value.property_name == "nondecreasing"


# ── iterates and neutral reductions ──────────────────────────────────────────

class TestIterates:
    def test_non_idempotent_reductions_are_not_unique(self):
        constant = gallery_get("constant_a3").op
        assert iterate_binary(gallery_get("h_cc").op, 3) == constant
        assert iterate_binary(gallery_get("h_const").op, 3) == constant

    def test_mod2_iterates(self):
        mod2 = gallery_get("mod2_sum").op
        assert iterate_binary(gallery_get("z2_H").op, 3) == mod2
        assert iterate_binary(gallery_get("z2_H'").op, 3) == mod2

    def test_iterate_of_max_is_max(self):
        assert iterate_binary(max_wrt(FIG1_ORDER, 2), 4) == max_wrt(FIG1_ORDER, 4)

    def test_iterate_needs_associative(self):
        with pytest.raises(PreconditionError):
            iterate_binary(gallery_get("ab_c_flat").op, 3)

    def test_neutral_reduction_recovers_generator(self):
        h = max_wrt(FIG1_ORDER, 2)
        assert neutral_reduction(iterate_binary(h, 3)) == h

    def test_neutral_reduction_uses_least_neutral(self):
        assert neutral_reduction(gallery_get("mod2_sum").op) == gallery_get("z2_H").op

    def test_neutral_reduction_binary_is_identity(self):
        h = max_wrt(FIG1_ORDER, 2)
        assert neutral_reduction(h) is h

    def test_neutral_reduction_needs_neutral(self):
        with pytest.raises(PreconditionError) as info:
            neutral_reduction(gallery_get("constant_a3").op)
        assert info.value.property_name == "neutral_element"
