"""
Constructors
============
Every constructive representation of quasitrivial symmetric
nondecreasing associative operations on a finite chain:

* maxima with respect to an alternative linear ordering,
* lifting a binary table through (min, max) and reducing back,
* reading the ordering off a quasitrivial associative binary table,
* the single-peaked orderings and the contour-plot construction,
* the g-map form of idempotent uninorms,
* iterates of binary operations and reductions through a neutral element.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.data.chain_core import GMap, LinearOrdering, OpTable, all_tuples
from src.exceptions import ConstructionError, PreconditionError, StructureError
from src.features.properties import (
    is_associative,
    is_idempotent,
    is_nondecreasing,
    is_quasitrivial,
    is_single_peaked,
    is_symmetric,
    neutral_elements,
)

logger = logging.getLogger(__name__)


def _require(report, message):
    if not report.holds:
        raise PreconditionError(f"{message}: {report.to_line()}", property_name=report.name)


def _require_binary(op, what):
    if op.n != 2:
        raise PreconditionError(f"{what} needs a binary table, got arity {op.n}",
                                property_name="arity")


def _require_arity(n, minimum=2):
    if not isinstance(n, int) or n < minimum:
        raise PreconditionError(f"arity must be an integer >= {minimum}, got {n!r}",
                                property_name="arity")


# ==============================================================================
# Maximum with respect to an ordering
# ==============================================================================

def max_wrt(ordering, n):
    """
    F(x_1, ..., x_n) = the argument ranked highest by ``ordering``.

    Parameters
    ----------
    ordering : LinearOrdering
    n : int
        Arity, at least 1.

    Returns
    -------
    OpTable
        Always quasitrivial, symmetric and associative.
    """
    _require_arity(n, minimum=1)
    tuples = all_tuples(ordering.chain, n)
    ranks = ordering.rank_array()[tuples]
    winners = np.argmax(ranks, axis=1)
    return OpTable(ordering.chain, n, tuples[np.arange(len(tuples)), winners])


# ==============================================================================
# Binary lift and reduction
# ==============================================================================

def lift_binary(g, n):
    """F(x_1, ..., x_n) = G(min x_i, max x_i) in the natural order."""
    _require_binary(g, "lift_binary")
    _require_arity(n)
    tuples = all_tuples(g.chain, n)
    bounds = np.column_stack([tuples.min(axis=1), tuples.max(axis=1)])
    return OpTable(g.chain, n, g.evaluate_many(bounds))


def reduce_binary(op):
    """G(x, y) = F((n-1).x, y)."""
    _require_arity(op.n)
    pairs = all_tuples(op.chain, 2)
    rows = np.hstack([np.repeat(pairs[:, :1], op.n - 1, axis=1), pairs[:, 1:]])
    return OpTable(op.chain, 2, op.evaluate_many(rows))


def order_from_binary(h):
    """
    The linear ordering x <= y iff H(x, y) = y.

    Raises
    ------
    PreconditionError
        If ``h`` is not a quasitrivial associative binary table.
    StructureError
        If the relation is not total, antisymmetric and transitive; the
        error carries the first violating pair or triple.
    """
    _require_binary(h, "order_from_binary")
    _require(is_quasitrivial(h), "order_from_binary needs a quasitrivial table")
    _require(is_associative(h), "order_from_binary needs an associative table")

    k = h.k
    relation = h.as_array() == np.arange(1, k + 1)[None, :]
    for x in range(k):
        for y in range(x + 1, k):
            if not relation[x, y] and not relation[y, x]:
                raise StructureError(f"relation is not total: neither {x + 1} <= {y + 1} "
                                     f"nor {y + 1} <= {x + 1}", witness=(x + 1, y + 1))
            if relation[x, y] and relation[y, x]:
                raise StructureError(f"relation is not antisymmetric on ({x + 1},{y + 1})",
                                     witness=(x + 1, y + 1))
    for x in range(k):
        for y in range(k):
            for z in range(k):
                if relation[x, y] and relation[y, z] and not relation[x, z]:
                    raise StructureError(f"relation is not transitive on "
                                         f"({x + 1},{y + 1},{z + 1})",
                                         witness=(x + 1, y + 1, z + 1))
    below = relation.sum(axis=0)
    seq = tuple(int(x) + 1 for x in np.argsort(below, kind="stable"))
    return LinearOrdering(h.chain, seq)


# ==============================================================================
# Single-peaked orderings and contour plots
# ==============================================================================

BELOW, ABOVE = 0, 1


def ordering_from_choices(chain, choices):
    """
    Build a single-peaked ordering from k-1 choice bits.

    Bit i (0-based) says whether a_(i+2) extends the interval C_(i+1)
    below (0) or above (1). The starting element is determined by the
    bits, a_1 = 1 + number of zeros, so every bit string of length k-1
    is feasible and the map is a bijection onto single-peaked orderings.
    """
    choices = tuple(int(c) for c in choices)
    if len(choices) != chain.k - 1 or any(c not in (BELOW, ABOVE) for c in choices):
        raise ConstructionError(f"expected {chain.k - 1} choice bits in {{0,1}}, got {choices}")
    first = 1 + choices.count(BELOW)
    low = high = first
    seq = [first]
    for c in choices:
        if c == BELOW:
            low -= 1
            seq.append(low)
        else:
            high += 1
            seq.append(high)
    return LinearOrdering(chain, tuple(seq))


def choices_of(ordering):
    """Inverse of ordering_from_choices for single-peaked orderings."""
    _require(is_single_peaked(ordering), "choices_of needs a single-peaked ordering")
    first = ordering.minimum
    return tuple(BELOW if a < first else ABOVE for a in ordering.seq[1:])


def enumerate_single_peaked(chain):
    """
    Every single-peaked ordering exactly once, depth first with the
    nearest element below tried before the nearest element above.
    2^(k-1) orderings in total.
    """
    k = chain.k

    def extend(seq, low, high):
        if len(seq) == k:
            yield LinearOrdering(chain, tuple(seq))
            return
        if low > 1:
            yield from extend(seq + [low - 1], low - 1, high)
        if high < k:
            yield from extend(seq + [high + 1], low, high + 1)

    for first in chain.elements:
        yield from extend([first], first, first)


@dataclass(frozen=True)
class ContourClass:
    """One level set of a contour plot: value and its points in code order."""

    value: int
    points: tuple


def contour_construct(chain, n, choices):
    """
    Build an idempotent n-ary uninorm by growing C_i one nearest element
    at a time; every point of C_i^n outside C_(i-1)^n gets the value a_i.

    Returns
    -------
    (OpTable, list[ContourClass])
        The table and its level sets in construction order. The first
        class is the single isolated point (n.a_1).
    """
    ordering = ordering_from_choices(chain, choices)
    tuples = all_tuples(chain, n)
    values = np.zeros(len(tuples), dtype=np.int64)
    covered = np.zeros(len(tuples), dtype=bool)
    low = high = ordering.minimum
    classes = []
    for a in ordering.seq:
        low, high = min(low, a), max(high, a)
        inside = np.all((tuples >= low) & (tuples <= high), axis=1)
        fresh = inside & ~covered
        values[fresh] = a
        covered |= inside
        points = tuple(tuple(int(v) for v in t) for t in tuples[fresh])
        classes.append(ContourClass(a, points))
    logger.debug("contour for %s: %s", ordering.seq, [len(c.points) for c in classes])
    return OpTable(chain, n, values), classes


# ==============================================================================
# g-maps
# ==============================================================================

def gbar(gm):
    """
    The total map derived from a g-map, as the tuple (gbar(1), ..., gbar(k)).

    gbar(x) = g(x) for x <= e, max{z <= e : g(z) >= x} for e <= x <= g(1),
    and 1 above g(1).
    """
    k, e = gm.chain.k, gm.e
    values = []
    for x in range(1, k + 1):
        if x <= e:
            values.append(gm(x))
        elif x <= gm(1):
            candidates = [z for z in range(1, e + 1) if gm(z) >= x]
            assert candidates, "g(1) >= x guarantees z = 1 qualifies"
            values.append(max(candidates))
        else:
            values.append(1)
    return tuple(values)


def from_gmap(gm, n):
    """
    The idempotent n-ary uninorm with neutral element e:
    min of the arguments when max <= gbar(min) and min <= gbar(1),
    max of the arguments otherwise.
    """
    _require_arity(n)
    lookup = np.array((0,) + gbar(gm), dtype=np.int64)
    tuples = all_tuples(gm.chain, n)
    low, high = tuples.min(axis=1), tuples.max(axis=1)
    use_min = (high <= lookup[low]) & (low <= lookup[1])
    return OpTable(gm.chain, n, np.where(use_min, low, high))


def gmap_of(op):
    """
    Recover the g-map of an idempotent n-ary uninorm:
    g(x) = max{y : F((n-1).x, y) = x} for x <= e.

    Raises
    ------
    PreconditionError
        Naming the first missing property (idempotent, symmetric,
        nondecreasing, associative, neutral_element).
    """
    _require_arity(op.n)
    for check in (is_idempotent, is_symmetric, is_nondecreasing, is_associative):
        _require(check(op), "gmap_of needs an idempotent uninorm")
    neutral = neutral_elements(op)
    if not neutral:
        raise PreconditionError("gmap_of needs an operation with a neutral element",
                                property_name="neutral_element")
    e = min(neutral)
    g = []
    for x in range(1, e + 1):
        ys = [y for y in op.chain.elements if op(*((x,) * (op.n - 1)), y) == x]
        g.append(max(ys))
    return GMap(op.chain, e, tuple(g))


def enumerate_gmaps(chain):
    """Every valid g-map: e ascending, then g in lexicographic order."""
    k = chain.k

    def tails(length, low, high):
        if length == 0:
            yield ()
            return
        for v in range(low, high + 1):
            for rest in tails(length - 1, low, v):
                yield (v,) + rest

    for e in chain.elements:
        for head in tails(e - 1, e, k):
            yield GMap(chain, e, head + (e,))


# ==============================================================================
# Iterates and neutral reductions
# ==============================================================================

def iterate_binary(h, n):
    """
    F(x_1, ..., x_n) = x_1 o x_2 o ... o x_n, folded from the left.

    Raises
    ------
    PreconditionError
        If ``h`` is not associative.
    """
    _require_binary(h, "iterate_binary")
    _require_arity(n)
    _require(is_associative(h), "iterate_binary needs an associative table")
    tuples = all_tuples(h.chain, n)
    acc = tuples[:, 0]
    for j in range(1, n):
        acc = h.evaluate_many(np.column_stack([acc, tuples[:, j]]))
    return OpTable(h.chain, n, acc)


def neutral_reduction(op):
    """
    H(x, y) = F(x, (n-2).e, y) with e the least neutral element.

    Raises
    ------
    PreconditionError
        If ``op`` is not associative or has no neutral element.
    """
    _require_arity(op.n)
    _require(is_associative(op), "neutral_reduction needs an associative operation")
    neutral = neutral_elements(op)
    if not neutral:
        raise PreconditionError("neutral_reduction needs an operation with a neutral element",
                                property_name="neutral_element")
    e = min(neutral)
    if op.n == 2:
        return op
    pairs = all_tuples(op.chain, 2)
    rows = np.hstack([pairs[:, :1], np.full((len(pairs), op.n - 2), e), pairs[:, 1:]])
    return OpTable(op.chain, 2, op.evaluate_many(rows))
