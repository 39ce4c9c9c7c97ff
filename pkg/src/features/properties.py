"""
Property Deciders
=================
Exhaustive decision procedures for the algebraic properties of an n-ary
operation on a finite chain. Each decider returns a PropertyReport; a
failing report carries the lexicographically first violation found
(smallest TupleCode first, then smallest auxiliary index), so verdicts
and witnesses are reproducible.

All scans are vectorised with numpy over batches of ``chunk_size``
tuples (or matrices for the bisymmetry family).
"""

import logging
from itertools import combinations

import numpy as np

from src.config import get_settings
from src.data.chain_core import (
    PropertyReport,
    all_tuples,
    constant_tuple,
    decode_codes,
    op_eval,
)
from src.exceptions import PreconditionError, ResourceGuardError

logger = logging.getLogger(__name__)


def _holds(name):
    return PropertyReport(name, True)


def _fails(name, **witness):
    return PropertyReport(name, False, witness)


def _tuple(row):
    return tuple(int(v) for v in row)


def _matrix(rows):
    return tuple(_tuple(r) for r in rows)


def _chunk(chunk_size):
    return chunk_size or get_settings().chunk_size


# ==============================================================================
# Pointwise properties
# ==============================================================================

def is_idempotent(op):
    """F(n.x) = x for every x; witness = offending x and its value."""
    elements = np.arange(1, op.k + 1)
    diagonal = op.evaluate_many(np.repeat(elements[:, None], op.n, axis=1))
    bad = np.flatnonzero(diagonal != elements)
    if bad.size:
        x = int(bad[0]) + 1
        return _fails("idempotent", x=x, value=int(diagonal[bad[0]]))
    return _holds("idempotent")


def is_quasitrivial(op):
    """Every output is one of its inputs; witness = tuple and value."""
    tuples = all_tuples(op.chain, op.n)
    inside = (tuples == op.values[:, None]).any(axis=1)
    bad = np.flatnonzero(~inside)
    if bad.size:
        code = bad[0]
        return _fails("quasitrivial", tuple=_tuple(tuples[code]), value=int(op.values[code]))
    return _holds("quasitrivial")


def is_symmetric(op):
    """
    Permutation invariance, checked against the sorted representative of
    each tuple. Witness = the representative, the permuted tuple and
    their two different values.
    """
    tuples = all_tuples(op.chain, op.n)
    representatives = np.sort(tuples, axis=1)
    rep_values = op.evaluate_many(representatives)
    bad = np.flatnonzero(op.values != rep_values)
    if bad.size:
        code = bad[0]
        return _fails(
            "symmetric",
            first=_tuple(representatives[code]),
            second=_tuple(tuples[code]),
            first_value=int(rep_values[code]),
            second_value=int(op.values[code]),
        )
    return _holds("symmetric")


def is_nondecreasing(op):
    """
    Monotonicity in each coordinate. Single-step increments suffice by
    transitivity. Witness = tuple, 1-based coordinate, and the outputs
    before and after raising that coordinate by one.
    """
    tuples = all_tuples(op.chain, op.n)
    first = None
    for j in range(op.n):
        step = op.k ** (op.n - 1 - j)
        codes = np.flatnonzero(tuples[:, j] < op.k)
        bad = codes[op.values[codes] > op.values[codes + step]]
        if bad.size and (first is None or (bad[0], j) < first):
            first = (int(bad[0]), j)
    if first is not None:
        code, j = first
        step = op.k ** (op.n - 1 - j)
        return _fails(
            "nondecreasing",
            tuple=_tuple(tuples[code]),
            coordinate=j + 1,
            value=int(op.values[code]),
            raised_value=int(op.values[code + step]),
        )
    return _holds("nondecreasing")


def is_surjective(op):
    """Every element of the chain is attained; witness = smallest missing element."""
    attained = np.zeros(op.k + 1, dtype=bool)
    attained[op.values] = True
    missing = np.flatnonzero(~attained[1:])
    if missing.size:
        return _fails("surjective", missing=int(missing[0]) + 1)
    return _holds("surjective")


# ==============================================================================
# Associativity
# ==============================================================================

def _nested_values(op, xs):
    """
    For each (2n-1)-tuple row of xs, the n values obtained by placing the
    inner evaluation at positions 1..n. Returns a (m, n) array.
    """
    n = op.n
    columns = []
    for i in range(n):
        inner = op.evaluate_many(xs[:, i:i + n])
        outer = np.concatenate([xs[:, :i], inner[:, None], xs[:, i + n:]], axis=1)
        columns.append(op.evaluate_many(outer))
    return np.stack(columns, axis=1)


def is_associative(op, chunk_size=None):
    """
    For every (2n-1)-tuple and every i in [n-1], the inner evaluation at
    position i and at position i+1 agree. Arity 1 holds vacuously.
    Witness = tuple, i, and both values. Cost O(k^(2n-1) n).
    """
    if op.n == 1:
        return _holds("associative")
    m = 2 * op.n - 1
    total = op.chain.size(m)
    step = _chunk(chunk_size)
    for start in range(0, total, step):
        xs = decode_codes(op.chain, m, np.arange(start, min(total, start + step)))
        nested = _nested_values(op, xs)
        bad = nested[:, :-1] != nested[:, 1:]
        rows = np.flatnonzero(bad.any(axis=1))
        if rows.size:
            r = rows[0]
            i = int(np.flatnonzero(bad[r])[0])
            return _fails(
                "associative",
                tuple=_tuple(xs[r]),
                i=i + 1,
                left=int(nested[r, i]),
                right=int(nested[r, i + 1]),
            )
    return _holds("associative")


# ==============================================================================
# Bisymmetry family
# ==============================================================================

def _matrix_guard(op, guard):
    bound = guard or get_settings().bisymmetry_guard
    estimate = op.k ** (op.n * op.n)
    if estimate > bound:
        logger.warning("refusing %d-ary matrix scan on L_%d: %d > %d", op.n, op.k, estimate, bound)
        raise ResourceGuardError(
            f"{op.n}x{op.n} matrix scan on L_{op.k} needs {estimate} matrices, "
            f"above the bisymmetry guard {bound}",
            estimate=estimate,
            bound=bound,
        )
    return estimate


def _matrix_batches(op, guard, chunk_size):
    total = _matrix_guard(op, guard)
    step = _chunk(chunk_size)
    n = op.n
    for start in range(0, total, step):
        flat = decode_codes(op.chain, n * n, np.arange(start, min(total, start + step)))
        yield flat.reshape(-1, n, n)


def aggregate_rows(op, matrices):
    """F(F(r_1), ..., F(r_n)) for a (m, n, n) stack of matrices."""
    m, n, _ = matrices.shape
    row_values = op.evaluate_many(matrices.reshape(m * n, n)).reshape(m, n)
    return op.evaluate_many(row_values)


def is_bisymmetric(op, guard=None, chunk_size=None):
    """
    F of the row aggregates equals F of the column aggregates for every
    n x n matrix. Witness = the matrix (rows) and both values.

    Raises
    ------
    ResourceGuardError
        When k^(n^2) exceeds the guard (default ``bisymmetry_guard``).
    """
    for matrices in _matrix_batches(op, guard, chunk_size):
        by_rows = aggregate_rows(op, matrices)
        by_columns = aggregate_rows(op, matrices.transpose(0, 2, 1))
        bad = np.flatnonzero(by_rows != by_columns)
        if bad.size:
            r = bad[0]
            return _fails(
                "bisymmetric",
                matrix=_matrix(matrices[r]),
                rows_value=int(by_rows[r]),
                columns_value=int(by_columns[r]),
            )
    return _holds("bisymmetric")


def _changing_swap(op, matrix):
    """
    Walk a selection sort from ``matrix`` to its sorted rearrangement and
    return the first single swap that changes the nested aggregate.
    """
    n = op.n
    current = np.array(matrix).reshape(-1)
    value = int(aggregate_rows(op, current.reshape(1, n, n))[0])
    for p in range(current.size):
        q = p + int(np.argmin(current[p:]))
        if current[q] == current[p]:
            continue
        before = current.copy()
        current[p], current[q] = current[q], current[p]
        swapped = int(aggregate_rows(op, current.reshape(1, n, n))[0])
        if swapped != value:
            return before.reshape(n, n), (divmod(p, n), divmod(q, n)), value, swapped
        value = swapped
    raise AssertionError("matrix and its rearrangement have equal aggregates")


def is_ultrabisymmetric(op, guard=None, chunk_size=None):
    """
    The nested aggregate F(F(rows)) is unchanged by exchanging any two
    entries. Exchanges generate every rearrangement, so this is checked
    by comparing each matrix against its sorted rearrangement; on the
    first mismatch a single offending exchange is extracted. Witness =
    matrix, the two 1-based (row, column) positions and both values.
    """
    n = op.n
    for matrices in _matrix_batches(op, guard, chunk_size):
        m = matrices.shape[0]
        values = aggregate_rows(op, matrices)
        canonical = np.sort(matrices.reshape(m, n * n), axis=1).reshape(m, n, n)
        bad = np.flatnonzero(values != aggregate_rows(op, canonical))
        if bad.size:
            matrix, (p, q), value, swapped = _changing_swap(op, matrices[bad[0]])
            return _fails(
                "ultrabisymmetric",
                matrix=_matrix(matrix),
                positions=((p[0] + 1, p[1] + 1), (q[0] + 1, q[1] + 1)),
                value=value,
                swapped_value=swapped,
            )
    return _holds("ultrabisymmetric")


# ==============================================================================
# Neutral elements and isolated points
# ==============================================================================

def _insertions(k, n, e, i):
    """Rows (e, ..., x, ..., e) with x = 1..k at 0-based position i."""
    rows = np.full((k, n), e, dtype=np.int64)
    rows[:, i] = np.arange(1, k + 1)
    return rows


def neutral_elements(op):
    """All e with F((i-1).e, x, (n-i).e) = x for every x and i."""
    elements = np.arange(1, op.k + 1)
    found = set()
    for e in op.chain.elements:
        if all(np.array_equal(op.evaluate_many(_insertions(op.k, op.n, e, i)), elements)
               for i in range(op.n)):
            found.add(e)
    return frozenset(found)


def isolated_points(op):
    """Tuples whose value is attained at no other tuple."""
    counts = np.bincount(op.values, minlength=op.k + 1)
    codes = np.flatnonzero(counts[op.values] == 1)
    return frozenset(_tuple(t) for t in decode_codes(op.chain, op.n, codes))


# ==============================================================================
# Reduction identities
# ==============================================================================

def _reduction_pairs(op):
    pairs = all_tuples(op.chain, 2)
    x, y = pairs[:, :1], pairs[:, 1:]
    return pairs, x, y


def has_balanced_reduction(op):
    """F((n-1).x, y) = F(x, (n-1).y) for all x, y; witness = x, y and both values."""
    n = op.n
    pairs, x, y = _reduction_pairs(op)
    left = op.evaluate_many(np.hstack([np.repeat(x, n - 1, axis=1), y]))
    right = op.evaluate_many(np.hstack([x, np.repeat(y, n - 1, axis=1)]))
    bad = np.flatnonzero(left != right)
    if bad.size:
        r = bad[0]
        return _fails("balanced_reduction", x=int(pairs[r, 0]), y=int(pairs[r, 1]),
                      left=int(left[r]), right=int(right[r]))
    return _holds("balanced_reduction")


def is_insertion_invariant(op):
    """
    F((i-1).x, y, (n-i).x) does not depend on i. Witness = x, y, the
    first position i = 1 and the first position j disagreeing with it.
    """
    n = op.n
    pairs, x, y = _reduction_pairs(op)
    values = []
    for i in range(n):
        rows = np.repeat(x, n, axis=1)
        rows[:, i] = y[:, 0]
        values.append(op.evaluate_many(rows))
    values = np.stack(values, axis=1)
    bad = values != values[:, :1]
    rows = np.flatnonzero(bad.any(axis=1))
    if rows.size:
        r = rows[0]
        j = int(np.flatnonzero(bad[r])[0])
        return _fails("insertion_invariant", x=int(pairs[r, 0]), y=int(pairs[r, 1]), i=1, j=j + 1,
                      value_i=int(values[r, 0]), value_j=int(values[r, j]))
    return _holds("insertion_invariant")


def check_lemma_cons65(op):
    """
    For every pair (x, y) some threshold t in [n] gives
    F((t-1).x, (n-t+1).y) = y and F(t.x, (n-t).y) = x.

    Raises
    ------
    PreconditionError
        If op is not quasitrivial.
    """
    if not is_quasitrivial(op):
        raise PreconditionError("threshold lemma needs a quasitrivial operation",
                                property_name="quasitrivial")
    n = op.n
    for x in op.chain.elements:
        for y in op.chain.elements:
            if not any(op_eval(op, (x,) * (t - 1) + (y,) * (n - t + 1)) == y
                       and op_eval(op, (x,) * t + (y,) * (n - t)) == x
                       for t in range(1, n + 1)):
                return _fails("threshold_lemma", x=x, y=y)
    return _holds("threshold_lemma")


# ==============================================================================
# Single-peakedness
# ==============================================================================

def is_single_peaked(ordering):
    """Among a < b < c the middle element is never ranked last; witness = triple."""
    rank = ordering.rank
    for a, b, c in combinations(ordering.chain.elements, 3):
        if not (rank[b] < rank[a] or rank[b] < rank[c]):
            return _fails("single_peaked", triple=(a, b, c))
    return _holds("single_peaked")


def single_peaked_via_convexity(ordering):
    """Every down-set {x : x precedes t} is an interval of the natural order."""
    for t in ordering.chain.elements:
        down = ordering.down_set(t)
        if max(down) - min(down) + 1 != len(down):
            return _fails("single_peaked_convex", threshold=t, down_set=tuple(sorted(down)))
    return _holds("single_peaked_convex")


def single_peaked_via_sisd(ordering):
    """
    With x0 the minimal element of the ordering: whenever
    x0 < x1 < x2 or x2 < x1 < x0, x1 strictly precedes x2.
    """
    x0 = ordering.minimum
    rank = ordering.rank
    for x1 in ordering.chain.elements:
        for x2 in ordering.chain.elements:
            between = x0 < x1 < x2 or x2 < x1 < x0
            if between and not rank[x1] < rank[x2]:
                return _fails("single_peaked_sisd", x0=x0, x1=x1, x2=x2)
    return _holds("single_peaked_sisd")


# ==============================================================================
# Registry and replay
# ==============================================================================

PROPERTY_CHECKS = {
    "idempotent": is_idempotent,
    "quasitrivial": is_quasitrivial,
    "symmetric": is_symmetric,
    "nondecreasing": is_nondecreasing,
    "associative": is_associative,
    "bisymmetric": is_bisymmetric,
    "ultrabisymmetric": is_ultrabisymmetric,
    "surjective": is_surjective,
    "balanced_reduction": has_balanced_reduction,
    "insertion_invariant": is_insertion_invariant,
}

DEFAULT_CHECKS = ("idempotent", "quasitrivial", "symmetric", "nondecreasing", "associative",
                  "bisymmetric")


def check_all(op, names=DEFAULT_CHECKS, guard=None):
    """Run the named deciders in order and return their reports."""
    reports = []
    for name in names:
        check = PROPERTY_CHECKS[name]
        if name in ("bisymmetric", "ultrabisymmetric"):
            reports.append(check(op, guard=guard))
        else:
            reports.append(check(op))
    return reports


def _nested(op, xs, i):
    n = op.n
    inner = op_eval(op, xs[i - 1:i - 1 + n])
    return op_eval(op, xs[:i - 1] + (inner,) + xs[i - 1 + n:])


def _aggregate(op, matrix):
    return op_eval(op, tuple(op_eval(op, row) for row in matrix))


def replay_witness(op, report):
    """
    Re-evaluate a failing report's witness against ``op`` with scalar
    evaluations only. True iff the refutation is reproduced.
    """
    if report.holds:
        return False
    w = report.witness
    n = op.n
    name = report.name
    if name == "idempotent":
        return op_eval(op, constant_tuple(n, w["x"])) == w["value"] != w["x"]
    if name == "quasitrivial":
        return op_eval(op, w["tuple"]) == w["value"] and w["value"] not in w["tuple"]
    if name == "symmetric":
        first, second = op_eval(op, w["first"]), op_eval(op, w["second"])
        return sorted(w["first"]) == sorted(w["second"]) and first != second
    if name == "nondecreasing":
        t = w["tuple"]
        j = w["coordinate"] - 1
        raised = t[:j] + (t[j] + 1,) + t[j + 1:]
        return op_eval(op, t) > op_eval(op, raised)
    if name == "associative":
        i = w["i"]
        return _nested(op, w["tuple"], i) != _nested(op, w["tuple"], i + 1)
    if name == "bisymmetric":
        matrix = w["matrix"]
        return _aggregate(op, matrix) != _aggregate(op, tuple(zip(*matrix)))
    if name == "ultrabisymmetric":
        matrix = [list(row) for row in w["matrix"]]
        (r1, c1), (r2, c2) = w["positions"]
        before = _aggregate(op, matrix)
        a, b = matrix[r1 - 1][c1 - 1], matrix[r2 - 1][c2 - 1]
        matrix[r1 - 1][c1 - 1], matrix[r2 - 1][c2 - 1] = b, a
        return before != _aggregate(op, matrix)
    if name == "surjective":
        return w["missing"] not in set(op.values.tolist())
    if name == "balanced_reduction":
        x, y = w["x"], w["y"]
        return op_eval(op, (x,) * (n - 1) + (y,)) != op_eval(op, (x,) + (y,) * (n - 1))
    if name == "insertion_invariant":
        x, y, i, j = w["x"], w["y"], w["i"], w["j"]
        at_i = op_eval(op, (x,) * (i - 1) + (y,) + (x,) * (n - i))
        at_j = op_eval(op, (x,) * (j - 1) + (y,) + (x,) * (n - j))
        return at_i != at_j
    if name == "threshold_lemma":
        x, y = w["x"], w["y"]
        return not any(op_eval(op, (x,) * (t - 1) + (y,) * (n - t + 1)) == y
                       and op_eval(op, (x,) * t + (y,) * (n - t)) == x
                       for t in range(1, n + 1))
    raise ValueError(f"no replay rule for {name!r}")
