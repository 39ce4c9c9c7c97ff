"""
Constrained Enumeration
=======================
Backtracking search over dense operation tables on L_k.

The table is split into cells: one cell per TupleCode, or one per
multiset of arguments when the search is restricted to symmetric
operations. Cells are assigned in code order with candidate values
ascending, so the stream of tables is deterministic. Quasitriviality
and idempotency shrink each cell's candidate set; a neutral element
pins whole cells; monotonicity is enforced by pruning against the
already assigned lower neighbours of each cell.

Associativity is not cell-local and is left to the callers as a
post-filter.
"""

import logging
import math
from dataclasses import dataclass, fields

import numpy as np

from src.config import get_settings
from src.data.chain_core import OpTable, all_tuples, encode_tuple, encode_tuples
from src.exceptions import ConstructionError, ResourceGuardError
from src.features.properties import is_associative, is_nondecreasing, neutral_elements

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constraint:
    """Structural restrictions on the searched population."""

    quasitrivial: bool = False
    symmetric: bool = False
    nondecreasing: bool = False
    idempotent: bool = False
    has_neutral: bool = False

    SHORT = {"q": "quasitrivial", "s": "symmetric", "nd": "nondecreasing",
             "id": "idempotent", "ne": "has_neutral"}

    @classmethod
    def parse(cls, text):
        """
        Parse a comma-separated flag list such as ``q,s,nd`` or
        ``quasitrivial,symmetric``; ``all`` or an empty string mean no
        restriction.
        """
        text = (text or "").strip()
        if text in ("", "all", "none"):
            return cls()
        names = {f.name for f in fields(cls)}
        flags = {}
        for token in text.split(","):
            token = token.strip()
            name = cls.SHORT.get(token, token)
            if name not in names:
                raise ConstructionError(f"unknown constraint flag {token!r}; use "
                                        + ", ".join(sorted(cls.SHORT) + sorted(names)))
            flags[name] = True
        return cls(**flags)

    @property
    def label(self):
        short = {v: k for k, v in self.SHORT.items()}
        active = [short[f.name] for f in fields(self) if getattr(self, f.name)]
        return "+".join(active) or "all"


QS = Constraint(quasitrivial=True, symmetric=True)
QSND = Constraint(quasitrivial=True, symmetric=True, nondecreasing=True)


# ==============================================================================
# Search plan
# ==============================================================================

class _SearchPlan:
    """
    Cells, their candidates and lower neighbours for one search. With a
    neutral element ``e`` the cells it determines are pinned.
    """

    def __init__(self, chain, n, constraint, neutral=None):
        self.chain = chain
        self.n = n
        self.neutral = neutral
        tuples = all_tuples(chain, n)
        if constraint.symmetric:
            rep_codes = encode_tuples(chain, n, np.sort(tuples, axis=1))
        else:
            rep_codes = np.arange(len(tuples), dtype=np.int64)
        cell_codes, self.rep_index = np.unique(rep_codes, return_inverse=True)
        self.rep_index = self.rep_index.reshape(-1)
        self.cell_tuples = tuples[cell_codes]

        self.candidates = [self._cell_candidates(t, constraint) for t in self.cell_tuples]
        self.feasible = neutral is None or self._pin_neutral(neutral)

        self.lower = []
        for t in self.cell_tuples:
            below = set()
            if constraint.nondecreasing:
                for j in range(n):
                    if t[j] > 1:
                        lowered = t.copy()
                        lowered[j] -= 1
                        below.add(int(self.rep_index[encode_tuple(chain, n, lowered)]))
            self.lower.append(tuple(sorted(below)))

        self.first_free = next(
            (c for c, cand in enumerate(self.candidates) if len(cand) > 1), None)

    def _cell_candidates(self, t, constraint):
        if constraint.quasitrivial:
            return tuple(sorted({int(x) for x in t}))
        if constraint.idempotent and (t == t[0]).all():
            return (int(t[0]),)
        return tuple(self.chain.elements)

    def _pin_neutral(self, e):
        n = self.n
        for x in self.chain.elements:
            for i in range(n):
                tup = (e,) * i + (x,) + (e,) * (n - 1 - i)
                cell = int(self.rep_index[encode_tuple(self.chain, n, tup)])
                if x not in self.candidates[cell]:
                    return False
                self.candidates[cell] = (x,)
        return True

    @property
    def estimate(self):
        if not self.feasible:
            return 0
        return math.prod(len(c) for c in self.candidates)

    def branches(self):
        if not self.feasible:
            return []
        if self.first_free is None:
            return [None]
        return list(self.candidates[self.first_free])

    def search(self, first_value=None):
        """Yield full tables (flat value arrays) of this plan in code order."""
        if not self.feasible:
            return
        count = len(self.candidates)
        cells = np.zeros(count, dtype=np.int64)

        def assign(c):
            if c == count:
                yield cells[self.rep_index]
                return
            lower = self.lower[c]
            floor = int(cells[list(lower)].max()) if lower else 1
            for v in self.candidates[c]:
                if v < floor:
                    continue
                if c == self.first_free and first_value is not None and v != first_value:
                    continue
                cells[c] = v
                yield from assign(c + 1)

        yield from assign(0)


def _plans(chain, n, constraint):
    if constraint.has_neutral:
        return [(e, _SearchPlan(chain, n, constraint, neutral=e)) for e in chain.elements]
    return [(None, _SearchPlan(chain, n, constraint))]


def estimate_population(chain, n, constraint=Constraint()):
    """Product over cells of the candidate counts, summed over pinned neutral elements."""
    return sum(plan.estimate for _, plan in _plans(chain, n, constraint))


def search_branches(chain, n, constraint=Constraint()):
    """
    Keys of the disjoint subtrees of a search, in enumeration order.
    Each key is (plan index, value of the first free cell).
    """
    return [(index, value)
            for index, (_, plan) in enumerate(_plans(chain, n, constraint))
            for value in plan.branches()]


def check_guard(chain, n, constraint=Constraint(), guard=None, plans=None):
    """Return the population estimate, or raise ResourceGuardError above the guard."""
    plans = plans if plans is not None else _plans(chain, n, constraint)
    bound = guard or get_settings().enumeration_guard
    estimate = sum(plan.estimate for _, plan in plans)
    if estimate > bound:
        logger.warning("refusing enumeration of %s on L_%d, n=%d: estimate %d > %d",
                       constraint.label, chain.k, n, estimate, bound)
        raise ResourceGuardError(
            f"enumerating {constraint.label} tables on L_{chain.k} with n={n} "
            f"needs up to {estimate} candidates, above the enumeration guard {bound}",
            estimate=estimate,
            bound=bound,
        )
    return estimate


# ==============================================================================
# Public API
# ==============================================================================

def enumerate_ops(chain, n, constraint=Constraint(), guard=None, branch=None):
    """
    Yield every table satisfying the constraint exactly once.

    Parameters
    ----------
    chain : FiniteChain
    n : int
    constraint : Constraint
    guard : int or None
        Upper bound on the estimated population; defaults to the
        ``enumeration_guard`` setting.
    branch : tuple or None
        Restrict the search to one key of ``search_branches``.

    Raises
    ------
    ResourceGuardError
        When the estimate exceeds the guard.
    """
    plans = _plans(chain, n, constraint)
    estimate = check_guard(chain, n, constraint, guard, plans)
    logger.info("enumerating %s tables on L_%d, n=%d (estimate %d)",
                constraint.label, chain.k, n, estimate)

    for index, (e, plan) in enumerate(plans):
        if branch is not None and branch[0] != index:
            continue
        first_value = branch[1] if branch is not None else None
        for values in plan.search(first_value):
            op = OpTable(chain, n, values)
            # tables with several neutral elements come out of the plan of the least one only
            if e is not None and min(neutral_elements(op)) != e:
                continue
            yield op


def count_ops(chain, n, constraint=Constraint(), guard=None):
    return sum(1 for _ in enumerate_ops(chain, n, constraint, guard=guard))


def sample_ops(chain, n, constraint=Constraint(), samples=None, seed=None):
    """
    Draw random tables cell by cell from the quasitrivial, symmetric and
    idempotent restrictions of ``constraint``, then keep only the draws
    that are nondecreasing or have a neutral element when those flags
    are set. Not exhaustive; duplicates are possible.
    """
    settings = get_settings()
    samples = samples or settings.samples
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    local = Constraint(quasitrivial=constraint.quasitrivial, symmetric=constraint.symmetric,
                       idempotent=constraint.idempotent)
    plan = _SearchPlan(chain, n, local)
    sizes = np.array([len(c) for c in plan.candidates], dtype=np.int64)
    padded = np.ones((len(sizes), chain.k), dtype=np.int64)
    for c, cand in enumerate(plan.candidates):
        padded[c, :len(cand)] = cand
    cells = np.arange(len(sizes))

    accepted = 0
    for _ in range(samples):
        picks = rng.integers(0, sizes)
        op = OpTable(chain, n, padded[cells, picks][plan.rep_index])
        if constraint.nondecreasing and not is_nondecreasing(op):
            continue
        if constraint.has_neutral and not neutral_elements(op):
            continue
        accepted += 1
        yield op
    logger.info("sampled %d tables, %d accepted by %s", samples, accepted, constraint.label)


def uninorms(chain, n, guard=None):
    """Quasitrivial symmetric nondecreasing associative tables, in enumeration order."""
    for op in enumerate_ops(chain, n, QSND, guard=guard):
        if is_associative(op):
            yield op


def count_uninorms(chain, n, guard=None):
    """Number of idempotent n-ary uninorms on the chain; 2^(k-1)."""
    count = sum(1 for _ in uninorms(chain, n, guard=guard))
    logger.info("L_%d, n=%d: %d uninorms", chain.k, n, count)
    return count
