"""
Gallery
=======
Named example operations with their expected property profiles. Tables
are built from rules, not typed in.

==================  =====  ==================================================
name                chain  rule
==================  =====  ==================================================
median3             L_m    ternary median, m in 2..4 (default 3)
projection_first    L_3    F(x_1, ..., x_n) = x_1, n in {2, 3} (default 2)
l3_flat             L_3    1 on (1,1,1), 2 if 2 is an argument, else 3
mod2_sum            L_2    x_1 + x_2 + x_3 mod 2 with 0/1 written as 1/2
z2_H                L_2    x + y mod 2
z2_H' (z2_H_prime)  L_2    x + y + 1 mod 2
majority_e          L_3    a=1, e=2, b=3: a if more a's than b's, b if more
                           b's than a's, e otherwise
ab_c_flat           L_3    F(1,3) = 1, 2 elsewhere
fig1_left           L_4    max w.r.t. the ordering 3,2,4,1
fig1_right          L_4    binary max
constant_a3         L_3    ternary constant 1
h_cc                L_3    H(3,3) = 2, 1 elsewhere
h_const             L_3    binary constant 1
==================  =====  ==================================================
"""

from dataclasses import dataclass, field

import numpy as np

from src.data.chain_core import FiniteChain, LinearOrdering, OpTable, all_tuples
from src.exceptions import PreconditionError, UnknownNameError
from src.models.constructors import max_wrt

PROFILE_NAMES = ("idempotent", "quasitrivial", "symmetric", "nondecreasing", "associative",
                 "bisymmetric", "ultrabisymmetric")


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    op: OpTable
    expected: dict
    neutral: frozenset = field(default_factory=frozenset)
    isolated: frozenset = field(default_factory=frozenset)
    description: str = ""


def _profile(idem, quasi, sym, nd, assoc, bisym, ultra):
    return dict(zip(PROFILE_NAMES, (idem, quasi, sym, nd, assoc, bisym, ultra)))


def _from_rule(k, n, rule):
    chain = FiniteChain(k)
    tuples = all_tuples(chain, n)
    return OpTable(chain, n, [rule(tuple(int(v) for v in t)) for t in tuples])


def _check_size(name, value, allowed, what):
    if value not in allowed:
        raise PreconditionError(f"{name} is defined for {what} in {sorted(allowed)}, got {value}",
                                property_name=what)


# ==============================================================================
# Entries
# ==============================================================================

def _median3(k, n):
    k = 3 if k is None else k
    _check_size("median3", k, {2, 3, 4}, "k")
    _check_size("median3", 3 if n is None else n, {3}, "n")
    op = _from_rule(k, 3, lambda t: sorted(t)[1])
    return GalleryEntry("median3", op, _profile(True, True, True, True, False, False, False),
                        description="ternary median")


def _projection_first(k, n):
    n = 2 if n is None else n
    _check_size("projection_first", 3 if k is None else k, {3}, "k")
    _check_size("projection_first", n, {2, 3}, "n")
    op = _from_rule(3, n, lambda t: t[0])
    return GalleryEntry("projection_first", op,
                        _profile(True, True, False, True, True, True, False),
                        description="projection onto the first argument")


def _l3_flat(k, n):
    def rule(t):
        if t == (1, 1, 1):
            return 1
        return 2 if 2 in t else 3
    return GalleryEntry("l3_flat", _from_rule(3, 3, rule),
                        _profile(True, True, True, False, True, True, True),
                        neutral=frozenset({1}), isolated=frozenset({(1, 1, 1)}),
                        description="quasitrivial symmetric associative, not nondecreasing")


def _mod2_sum(k, n):
    # quasitrivial: on L_2 every output either repeats an input or the inputs cover {1, 2}
    op = _from_rule(2, 3, lambda t: (sum(x - 1 for x in t) % 2) + 1)
    return GalleryEntry("mod2_sum", op, _profile(True, True, True, False, True, True, True),
                        neutral=frozenset({1, 2}),
                        description="ternary sum mod 2; two neutral elements")


def _z2_h(k, n):
    op = _from_rule(2, 2, lambda t: ((t[0] - 1 + t[1] - 1) % 2) + 1)
    return GalleryEntry("z2_H", op, _profile(False, False, True, False, True, True, True),
                        neutral=frozenset({1}), description="binary sum mod 2")


def _z2_h_prime(k, n):
    op = _from_rule(2, 2, lambda t: ((t[0] - 1 + t[1] - 1 + 1) % 2) + 1)
    return GalleryEntry("z2_H'", op, _profile(False, False, True, False, True, True, True),
                        neutral=frozenset({2}), description="binary sum plus one mod 2")


A, E, B = 1, 2, 3


def _majority_e(k, n):
    def rule(t):
        a, b = t.count(A), t.count(B)
        if a > b:
            return A
        if b > a:
            return B
        return E
    return GalleryEntry("majority_e", _from_rule(3, 3, rule),
                        _profile(True, True, True, True, False, False, False),
                        neutral=frozenset({E}),
                        description="majority of a/b, else e, with a < e < b")


def _ab_c_flat(k, n):
    op = _from_rule(3, 2, lambda t: 1 if t == (1, 3) else 2)
    return GalleryEntry("ab_c_flat", op, _profile(False, False, False, False, False, True, True),
                        isolated=frozenset({(1, 3)}),
                        description="ultrabisymmetric but not symmetric")


def _fig1_left(k, n):
    op = max_wrt(LinearOrdering(FiniteChain(4), (3, 2, 4, 1)), 2)
    return GalleryEntry("fig1_left", op, _profile(*(True,) * 7),
                        neutral=frozenset({3}), isolated=frozenset({(3, 3)}),
                        description="binary uninorm on L_4 for the ordering 3,2,4,1")


def _fig1_right(k, n):
    op = max_wrt(LinearOrdering.natural(FiniteChain(4)), 2)
    return GalleryEntry("fig1_right", op, _profile(*(True,) * 7),
                        neutral=frozenset({1}), isolated=frozenset({(1, 1)}),
                        description="binary max on L_4")


_NON_IDEMPOTENT_ASSOCIATIVE = _profile(False, False, True, True, True, True, True)


def _constant_a3(k, n):
    op = OpTable(FiniteChain(3), 3, np.ones(27, dtype=np.int64))
    return GalleryEntry("constant_a3", op, _NON_IDEMPOTENT_ASSOCIATIVE,
                        description="ternary constant 1")


def _h_cc(k, n):
    op = _from_rule(3, 2, lambda t: 2 if t == (3, 3) else 1)
    return GalleryEntry("h_cc", op, _NON_IDEMPOTENT_ASSOCIATIVE, isolated=frozenset({(3, 3)}),
                        description="binary, 2 at (3,3) and 1 elsewhere; iterates to constant 1")


def _h_const(k, n):
    op = OpTable(FiniteChain(3), 2, np.ones(9, dtype=np.int64))
    return GalleryEntry("h_const", op, _NON_IDEMPOTENT_ASSOCIATIVE,
                        description="binary constant 1; iterates to constant 1")


GALLERY = {
    "median3": _median3,
    "projection_first": _projection_first,
    "l3_flat": _l3_flat,
    "mod2_sum": _mod2_sum,
    "z2_H": _z2_h,
    "z2_H'": _z2_h_prime,
    "majority_e": _majority_e,
    "ab_c_flat": _ab_c_flat,
    "fig1_left": _fig1_left,
    "fig1_right": _fig1_right,
    "constant_a3": _constant_a3,
    "h_cc": _h_cc,
    "h_const": _h_const,
}

ALIASES = {"z2_H_prime": "z2_H'"}


def gallery_names():
    return tuple(GALLERY)


def gallery_get(name, k=None, n=None):
    """
    Look up a gallery entry by name.

    Parameters
    ----------
    name : str
        One of ``gallery_names()`` or an alias.
    k, n : int or None
        Chain size and arity for the entries that accept them
        (``median3`` takes k in 2..4, ``projection_first`` takes n in
        {2, 3}); ignored by the others.

    Raises
    ------
    UnknownNameError
        For a name that is not registered.
    """
    builder = GALLERY.get(ALIASES.get(name, name))
    if builder is None:
        raise UnknownNameError("gallery entry", name, gallery_names())
    return builder(k, n)
