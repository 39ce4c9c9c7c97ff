"""
Theorem Verifier
================
Machine re-verification of the structural results on quasitrivial,
symmetric, nondecreasing and associative operations at small (k, n).

Each suite scans a population (enumerated tables, orderings, g-maps or
contour choice strings) and checks an implication or equivalence on
every item. The population encodes the hypotheses; running a suite on a
larger population than its default (``constraint=``) drops hypotheses
and surfaces the expected counterexamples.

Suites are registered in ``SUITES``; ``run_suite`` runs one,
``run_all`` runs every one and ``save_reports_csv`` writes a summary.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product

import pandas as pd

from src.config import get_settings
from src.data.chain_core import FiniteChain, GMap, LinearOrdering, OpTable
from src.data.nop_format import dumps_op, format_gmap, format_ordering
from src.exceptions import ResourceGuardError, UnknownNameError
from src.features.properties import (
    check_lemma_cons65,
    has_balanced_reduction,
    is_associative,
    is_bisymmetric,
    is_idempotent,
    is_insertion_invariant,
    is_nondecreasing,
    is_quasitrivial,
    is_single_peaked,
    is_surjective,
    is_symmetric,
    is_ultrabisymmetric,
    isolated_points,
    neutral_elements,
    single_peaked_via_convexity,
    single_peaked_via_sisd,
)
from src.models.constructors import (
    choices_of,
    contour_construct,
    enumerate_gmaps,
    enumerate_single_peaked,
    from_gmap,
    gmap_of,
    iterate_binary,
    lift_binary,
    max_wrt,
    neutral_reduction,
    order_from_binary,
    ordering_from_choices,
    reduce_binary,
)
from src.models.enumeration import (
    QS,
    QSND,
    Constraint,
    check_guard,
    enumerate_ops,
    sample_ops,
    search_branches,
    uninorms,
)

logger = logging.getLogger(__name__)

HOLDS, FAILS, FOUND, NONE_FOUND, SKIPPED = "holds", "fails", "found", "none_found", "skipped"


# ==============================================================================
# Reports
# ==============================================================================

@dataclass
class Counterexample:
    item: object
    reason: str

    def describe(self):
        item = self.item
        if isinstance(item, OpTable):
            return dumps_op(item).rstrip("\n")
        if isinstance(item, LinearOrdering):
            return "ordering " + format_ordering(item)
        if item is None:
            return ""
        if isinstance(item, GMap):
            return "g-map " + format_gmap(item)
        return "choices " + "".join(str(b) for b in item)


@dataclass
class SuiteReport:
    """
    Outcome of one suite run. ``claimed`` is True for proven results and
    None for searches that make no claim.
    """

    suite: str
    k: int
    n: int
    population: int
    verdict: str
    counterexample: Counterexample = None
    elapsed: float = 0.0
    exhaustive: bool = True
    claimed: bool = True
    constraint: str = ""
    details: dict = field(default_factory=dict)

    @property
    def matches_claim(self):
        if self.claimed is None or self.verdict == SKIPPED:
            return True
        return self.verdict == HOLDS

    def to_line(self):
        return (f"SUITE {self.suite} k={self.k} n={self.n} "
                f"pop={self.population} verdict={self.verdict}")

    def to_text(self):
        scope = "exhaustive" if self.exhaustive else "sampled, not exhaustive"
        lines = [
            f"suite       {self.suite}",
            f"scale       k={self.k} n={self.n}",
            f"population  {self.population} ({scope}, {self.constraint or 'custom'})",
            f"verdict     {self.verdict}",
            f"elapsed     {self.elapsed:.2f}s",
        ]
        for key, value in self.details.items():
            lines.append(f"{key:<11} {value}")
        if self.counterexample is not None:
            lines.append(f"reason      {self.counterexample.reason}")
            described = self.counterexample.describe()
            if described:
                lines.append(described)
        return "\n".join(lines)


# ==============================================================================
# Scan context and shared caches
# ==============================================================================

@dataclass
class _Context:
    chain: FiniteChain
    n: int
    guard: int = None
    matrix_guard: int = None
    cache: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def count(self, key, by=1):
        self.details[key] = self.details.get(key, 0) + by

    def cached(self, key, build):
        if key not in self.cache:
            self.cache[key] = build()
        return self.cache[key]


def _single_peaked_maxima(ctx):
    """TableKey -> ordering for max_wrt over every single-peaked ordering."""
    return ctx.cached("sp_max", lambda: {max_wrt(o, ctx.n).key(): o
                                          for o in enumerate_single_peaked(ctx.chain)})


def _all_maxima(ctx):
    return ctx.cached("all_max", lambda: {
        max_wrt(LinearOrdering(ctx.chain, p), ctx.n).key()
        for p in permutations(ctx.chain.elements)
    })


def _uninorm_keys(ctx):
    return ctx.cached("uninorms", lambda: {op.key() for op in uninorms(ctx.chain, ctx.n,
                                                                      guard=ctx.guard)})


def _bisym(ctx, op):
    return is_bisymmetric(op, guard=ctx.matrix_guard)


def _ultra(ctx, op):
    return is_ultrabisymmetric(op, guard=ctx.matrix_guard)


def _disagree(**assertions):
    if len(set(assertions.values())) > 1:
        return "assertions disagree: " + " ".join(f"{k}={v}" for k, v in assertions.items())
    return None


# ==============================================================================
# Suite checks; each returns None or the reason the item refutes the claim
# ==============================================================================

def _check_marmaytor(ctx, op):
    report = is_associative(op)
    if not report:
        return ("quasitrivial symmetric nondecreasing binary table is not associative: "
                + report.to_line())


def _check_main2(ctx, op):
    g = reduce_binary(op)
    associative = is_associative(op).holds
    reason = _disagree(
        associative=associative,
        balanced_reduction=has_balanced_reduction(op).holds,
        lifted_reduction=lift_binary(g, op.n) == op,
        single_peaked_max=op.key() in _single_peaked_maxima(ctx),
    )
    if reason is None and associative and not (is_symmetric(g) and is_associative(g)):
        reason = "binary reduction of an associative table is not symmetric and associative"
    return reason


def _check_main2_relaxed(ctx, op):
    if not is_insertion_invariant(op):
        return None
    ctx.count("insertion_invariant")
    return _disagree(
        associative=is_associative(op).holds,
        balanced_reduction=has_balanced_reduction(op).holds,
        lifted_reduction=lift_binary(reduce_binary(op), op.n) == op,
    )


def _check_f456dfs(ctx, op):
    q, s, nd = is_quasitrivial(op).holds, is_symmetric(op).holds, is_nondecreasing(op).holds
    associative = is_associative(op).holds
    g = reduce_binary(op)
    reason = _disagree(
        q_s_nd_associative=q and s and nd and associative,
        q_s_nd_bisymmetric=q and s and nd and _bisym(ctx, op).holds,
        lifted_q_s_nd=(is_quasitrivial(g).holds and is_symmetric(g).holds
                       and is_nondecreasing(g).holds and lift_binary(g, op.n) == op),
        single_peaked_max=op.key() in _single_peaked_maxima(ctx),
    )
    if reason is None and q and s and nd and associative:
        if not is_associative(g) or iterate_binary(g, op.n) != op:
            reason = "operation is not derived from its binary reduction"
    return reason


def _check_f456dfs2(ctx, op):
    s, nd = is_symmetric(op).holds, is_nondecreasing(op).holds
    associative = is_associative(op).holds
    neutral = neutral_elements(op)
    maxima = _single_peaked_maxima(ctx)
    reason = _disagree(
        q_s_nd_associative=s and nd and associative,
        idempotent_uninorm=(associative and s and nd and is_idempotent(op).holds
                            and bool(neutral)),
        single_peaked_max=op.key() in maxima,
        q_nd_ultrabisymmetric=nd and _ultra(ctx, op).holds,
    )
    if reason is None and op.key() in maxima:
        ordering = maxima[op.key()]
        if neutral != {ordering.minimum}:
            reason = f"neutral elements {sorted(neutral)} differ from minimum {ordering.minimum}"
    return reason


def _derived_keys(ctx):
    def build():
        keys = set()
        for h in enumerate_ops(ctx.chain, 2, Constraint(quasitrivial=True), guard=ctx.guard):
            if is_associative(h):
                keys.add(iterate_binary(h, ctx.n).key())
        return keys
    return ctx.cached("derived", build)


def _check_ack(ctx, op):
    derived = is_associative(op).holds and op.key() in _derived_keys(ctx)
    return _disagree(derived_from_quasitrivial_associative=derived,
                     max_of_some_ordering=op.key() in _all_maxima(ctx))


def _check_ack2(ctx, h):
    if not (is_associative(h) and is_surjective(h)):
        return None
    ctx.count("surjective_associative")
    if is_symmetric(iterate_binary(h, ctx.n)) and not is_symmetric(h):
        return "symmetric iterate of a surjective associative table that is not symmetric"


def _check_reduction_unique(ctx, h):
    if not is_associative(h):
        return None
    iterate = iterate_binary(h, ctx.n).key()
    seen = ctx.cache.setdefault("iterates", {})
    keys = [("idempotent", iterate)] if is_idempotent(h) else []
    keys += [("neutral", e, iterate) for e in sorted(neutral_elements(h))]
    for key in keys:
        other = seen.setdefault(key, h)
        if other != h:
            return f"two different {key[0]} binary tables share the same {ctx.n}-ary iterate"
    return None


def _check_bl56(ctx, ordering):
    return _disagree(max_nondecreasing=is_nondecreasing(max_wrt(ordering, ctx.n)).holds,
                     single_peaked=is_single_peaked(ordering).holds)


def _check_sp_equiv(ctx, ordering):
    black = is_single_peaked(ordering).holds
    reason = _disagree(black=black,
                       convexity=single_peaked_via_convexity(ordering).holds,
                       sisd=single_peaked_via_sisd(ordering).holds)
    if reason is None and black:
        ctx.count("accepters")
        if ordering_from_choices(ordering.chain, choices_of(ordering)) != ordering:
            reason = "choice bits do not rebuild the ordering"
    return reason


def _finish_sp_equiv(ctx):
    expected = 2 ** (ctx.chain.k - 1)
    accepters = ctx.details.get("accepters", 0)
    if accepters != expected:
        return f"{accepters} single-peaked orderings, expected {expected}"
    listed = list(enumerate_single_peaked(ctx.chain))
    if len(listed) != expected or len(set(listed)) != expected:
        return "enumerate_single_peaked does not list each ordering once"
    if not all(is_single_peaked(o) for o in listed):
        return "enumerate_single_peaked lists an ordering that is not single-peaked"


def _check_eee(ctx, g):
    op = lift_binary(g, ctx.n)
    neutral_f, neutral_g = neutral_elements(op), neutral_elements(g)
    isolated_f, isolated_g = isolated_points(op), isolated_points(g)
    if len(neutral_f) > 1:
        return f"several neutral elements {sorted(neutral_f)}"
    for e in ctx.chain.elements:
        reason = _disagree(neutral_of_f=e in neutral_f, neutral_of_g=e in neutral_g,
                           isolated_for_g=(e, e) in isolated_g,
                           isolated_for_f=(e,) * ctx.n in isolated_f)
        if reason:
            return f"e={e}: {reason}"


def _check_cor24f(ctx, op):
    return _disagree(associative=is_associative(op).holds, bisymmetric=_bisym(ctx, op).holds)


def _check_cor24f1(ctx, op):
    return _disagree(associative_and_symmetric=is_associative(op).holds and is_symmetric(op).holds,
                     ultrabisymmetric=_ultra(ctx, op).holds)


def _check_prop19gz(ctx, op):
    if _ultra(ctx, op):
        ctx.count("ultrabisymmetric")
        for report in (is_associative(op), is_symmetric(op)):
            if not report:
                return f"quasitrivial ultrabisymmetric but {report.to_line()}"


def _check_prop21ft(ctx, op):
    if is_associative(op) and is_symmetric(op):
        ctx.count("associative_symmetric")
        report = _ultra(ctx, op)
        if not report:
            return f"associative symmetric but {report.to_line()}"


def _check_prop20gt(ctx, op):
    if neutral_elements(op) and _bisym(ctx, op):
        ctx.count("bisymmetric_with_neutral")
        for report in (is_associative(op), is_symmetric(op)):
            if not report:
                return f"bisymmetric with a neutral element but {report.to_line()}"


def _check_neutral_equiv(ctx, op):
    return _disagree(bisymmetric=_bisym(ctx, op).holds,
                     associative_and_symmetric=is_associative(op).holds and is_symmetric(op).holds,
                     ultrabisymmetric=_ultra(ctx, op).holds)


def _check_surj65(ctx, op):
    surjective = is_surjective(op).holds
    if not surjective and (is_idempotent(op) or is_quasitrivial(op) or neutral_elements(op)):
        return "idempotent, quasitrivial or neutral-element table that is not surjective"
    if surjective and _ultra(ctx, op):
        ctx.count("surjective_ultrabisymmetric")
        report = is_symmetric(op)
        if not report:
            return f"surjective ultrabisymmetric but {report.to_line()}"


def _check_cons65(ctx, op):
    report = check_lemma_cons65(op)
    if not report:
        return f"no threshold for {report.to_line()}"


def _check_idis(ctx, op):
    isolated = isolated_points(op)
    off_diagonal = sorted(p for p in isolated if len(set(p)) > 1)
    if off_diagonal:
        return f"idempotent table with off-diagonal isolated point {off_diagonal[0]}"
    if len(isolated) > 1 and is_quasitrivial(op):
        return f"quasitrivial table with {len(isolated)} isolated points"


def _check_lemma_ee(ctx, op):
    isolated, neutral = isolated_points(op), neutral_elements(op)
    for e in ctx.chain.elements:
        diagonal = (e,) * op.n in isolated
        if diagonal and e not in neutral:
            return f"({e},...,{e}) is isolated but {e} is not neutral"
        if e in neutral and not diagonal:
            if op.n == 2:
                return f"{e} is neutral but ({e},{e}) is not isolated"
            ctx.count("converse_fails")


def _check_deb1(ctx, gm):
    op = from_gmap(gm, ctx.n)
    ctx.cache.setdefault("images", set()).add(op.key())
    if op.key() not in _uninorm_keys(ctx):
        return "from_gmap output is not an idempotent uninorm"
    if neutral_elements(op) != {gm.e}:
        return f"neutral elements {sorted(neutral_elements(op))} differ from e={gm.e}"
    if gmap_of(op) != gm:
        return "gmap_of does not invert from_gmap"


def _finish_deb1(ctx):
    expected = 2 ** (ctx.chain.k - 1)
    images = ctx.cache.get("images", set())
    if ctx.details.get("population") != expected:
        return f"{ctx.details.get('population')} g-maps, expected {expected}"
    if images != _uninorm_keys(ctx):
        return "g-map images are not exactly the enumerated uninorms"


def _check_gc(ctx, choices):
    op, classes = contour_construct(ctx.chain, ctx.n, choices)
    ctx.cache.setdefault("images", set()).add(op.key())
    first = classes[0]
    peak = (first.value,) * ctx.n
    if first.points != (peak,) or isolated_points(op) != {peak}:
        return f"first contour class is not the single isolated point {peak}"
    if neutral_elements(op) != {first.value}:
        return f"neutral element is not a_1={first.value}"
    if sum(len(c.points) for c in classes) != len(op):
        return "contour classes do not partition the grid"
    for c in classes:
        if any(op(*p) != c.value for p in c.points):
            return f"class {c.value} holds a point with another value"


def _finish_gc(ctx):
    images = ctx.cache.get("images", set())
    expected = 2 ** (ctx.chain.k - 1)
    if len(images) != expected:
        return f"{len(images)} distinct contour tables, expected {expected}"
    if images != _uninorm_keys(ctx):
        return "contour tables are not exactly the enumerated uninorms"


def _check_open_q(ctx, op):
    if _bisym(ctx, op) and not is_associative(op):
        return "quasitrivial bisymmetric table that is not associative"


def _check_round_trips(ctx, op):
    n = op.n
    g = reduce_binary(op)
    if lift_binary(g, n) != op:
        return "lift_binary(reduce_binary(F)) != F"
    if iterate_binary(g, n) != op:
        return "iterate_binary(reduce_binary(F)) != F"
    if max_wrt(order_from_binary(g), n) != op:
        return "max_wrt(order_from_binary(G)) != F"
    gm = gmap_of(op)
    if from_gmap(gm, n) != op:
        return "from_gmap(gmap_of(F)) != F"
    if neutral_reduction(op) != g:
        return "F(x,(n-2).e,y) differs from F((n-1).x,y)"
    report = has_balanced_reduction(op)
    if not report:
        return report.to_line()


def _finish_round_trips(ctx):
    if ctx.chain.k > 7:
        return None
    for p in permutations(ctx.chain.elements):
        ordering = LinearOrdering(ctx.chain, p)
        if order_from_binary(max_wrt(ordering, 2)) != ordering:
            return f"order_from_binary(max_wrt) does not return {format_ordering(ordering)}"


# ==============================================================================
# Registry
# ==============================================================================

@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    check: object
    constraint: Constraint = Constraint()
    items: object = None
    finish: object = None
    population_arity: int = None
    forced_n: int = None
    claimed: bool = True
    stateful: bool = False


def _orderings(ctx):
    return (LinearOrdering(ctx.chain, p) for p in permutations(ctx.chain.elements))


def _gmaps(ctx):
    return enumerate_gmaps(ctx.chain)


def _choice_strings(ctx):
    return product((0, 1), repeat=ctx.chain.k - 1)


def _uninorm_items(ctx):
    return uninorms(ctx.chain, ctx.n, guard=ctx.guard)


_Q = Constraint(quasitrivial=True)

SUITES = {s.name: s for s in (
    Suite("marmaytor", "quasitrivial symmetric nondecreasing binary => associative",
          _check_marmaytor, QSND, forced_n=2),
    Suite("main2", "q+s+nd: associative <=> balanced reduction <=> G(min,max) form "
          "<=> single-peaked maximum", _check_main2, QSND),
    Suite("main2_relaxed", "q+nd with insertion invariance: associative <=> balanced "
          "reduction <=> G(min,max) form", _check_main2_relaxed,
          Constraint(quasitrivial=True, nondecreasing=True)),
    Suite("f456dfs", "q+s+nd+associative <=> q+s+nd+bisymmetric <=> G(min,max) with q+s+nd G "
          "<=> single-peaked maximum", _check_f456dfs, QS),
    Suite("f456dfs2", "over quasitrivial tables: idempotent uninorm <=> single-peaked maximum "
          "<=> q+nd+ultrabisymmetric", _check_f456dfs2, _Q),
    Suite("ack", "q+s: associative and derived from a quasitrivial associative binary table "
          "<=> maximum for some ordering", _check_ack, QS),
    Suite("ack2", "symmetric iterate of a surjective associative binary table => symmetric",
          _check_ack2, Constraint(), population_arity=2),
    Suite("reduction_unique", "idempotent (or same-neutral) associative binary tables with "
          "equal iterates are equal", _check_reduction_unique, Constraint(),
          population_arity=2, stateful=True),
    Suite("bl56", "max_wrt nondecreasing <=> ordering single-peaked", _check_bl56,
          items=_orderings),
    Suite("sp_equiv", "single-peakedness deciders agree; 2^(k-1) accepters", _check_sp_equiv,
          items=_orderings, finish=_finish_sp_equiv),
    Suite("eee", "G q+s: e neutral for F <=> neutral for G <=> (e,e) isolated for G "
          "<=> (n.e) isolated for F", _check_eee, QS, population_arity=2),
    Suite("cor24f", "q+s: associative <=> bisymmetric", _check_cor24f, QS),
    Suite("cor24f1", "quasitrivial: associative and symmetric <=> ultrabisymmetric",
          _check_cor24f1, QS),
    Suite("prop19gz", "quasitrivial and ultrabisymmetric => associative and symmetric",
          _check_prop19gz, _Q),
    Suite("prop21ft", "associative and symmetric => ultrabisymmetric", _check_prop21ft),
    Suite("prop20gt", "bisymmetric with a neutral element => associative and symmetric",
          _check_prop20gt),
    Suite("neutral_equiv", "with a neutral element: bisymmetric <=> associative and symmetric "
          "<=> ultrabisymmetric", _check_neutral_equiv, Constraint(has_neutral=True)),
    Suite("surj65", "surjective and ultrabisymmetric => symmetric", _check_surj65),
    Suite("cons65", "quasitrivial => threshold lemma", _check_cons65, _Q),
    Suite("idis", "idempotent => isolated points are diagonal", _check_idis,
          Constraint(idempotent=True)),
    Suite("lemma_ee", "quasitrivial: (n.e) isolated => e neutral; converse at n=2",
          _check_lemma_ee, _Q),
    Suite("deb1", "g-maps <=> idempotent uninorms", _check_deb1, items=_gmaps,
          finish=_finish_deb1),
    Suite("gc", "contour construction yields exactly the idempotent uninorms", _check_gc,
          items=_choice_strings, finish=_finish_gc),
    Suite("open_q_search", "search: quasitrivial, bisymmetric, not associative",
          _check_open_q, _Q, claimed=None),
    Suite("round_trips", "lift/reduce, order/max, gmap/table and derive/reduce round trips",
          _check_round_trips, items=_uninorm_items, finish=_finish_round_trips),
)}


def suite_names():
    return tuple(SUITES)


def get_suite(name):
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownNameError("suite", name, suite_names()) from None


# ==============================================================================
# Running
# ==============================================================================

def _scan(suite, ctx, items):
    population, counterexample = 0, None
    for item in items:
        population += 1
        reason = suite.check(ctx, item)
        if reason and counterexample is None:
            counterexample = Counterexample(item, reason)
            logger.info("%s: counterexample at item %d: %s", suite.name, population, reason)
    return population, counterexample


def _scan_branch(name, k, n, pop_n, constraint, guard, matrix_guard, branch):
    """Worker entry point: scan one subtree of the table search."""
    suite = SUITES[name]
    ctx = _Context(FiniteChain(k), n, guard=guard, matrix_guard=matrix_guard)
    items = enumerate_ops(ctx.chain, pop_n, constraint, guard=guard, branch=branch)
    population, counterexample = _scan(suite, ctx, items)
    found = None
    if counterexample is not None:
        found = (counterexample.item.values.tolist(), counterexample.reason)
    return population, found, ctx.details


def _parallel_scan(suite, ctx, pop_n, constraint, jobs):
    check_guard(ctx.chain, pop_n, constraint, ctx.guard)
    branches = search_branches(ctx.chain, pop_n, constraint)
    logger.info("%s: %d branches over %d workers", suite.name, len(branches), jobs)
    if not branches:
        return 0, None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(
            _scan_branch,
            *zip(*[(suite.name, ctx.chain.k, ctx.n, pop_n, constraint, ctx.guard,
                    ctx.matrix_guard, b) for b in branches]),
        ))
    population, counterexample = 0, None
    for branch_population, found, details in results:
        population += branch_population
        for key, value in details.items():
            ctx.count(key, value)
        if found is not None and counterexample is None:
            values, reason = found
            counterexample = Counterexample(OpTable(ctx.chain, pop_n, values), reason)
    return population, counterexample


def run_suite(name, chain, n, *, constraint=None, guard=None, matrix_guard=None, samples=None,
              seed=None, jobs=None):
    """
    Run one suite and return its SuiteReport.

    Parameters
    ----------
    name : str
        A key of ``SUITES``.
    chain : FiniteChain
    n : int
        Arity; suites with a forced arity ignore it.
    constraint : Constraint or None
        Population override for table suites.
    guard, matrix_guard : int or None
        Enumeration and bisymmetry guards; default to the settings.
    samples, seed : int or None
        Replace exhaustive enumeration by ``samples`` random tables. The
        report is then labelled non-exhaustive.
    jobs : int or None
        Worker processes for table suites without cross-item state.

    Raises
    ------
    UnknownNameError
        For an unregistered suite.
    ResourceGuardError
        When the population exceeds the enumeration guard.
    """
    suite = get_suite(name)
    settings = get_settings()
    jobs = jobs or settings.jobs
    n = suite.forced_n or n
    ctx = _Context(chain, n, guard=guard, matrix_guard=matrix_guard)
    constraint = constraint or suite.constraint
    pop_n = suite.population_arity or n
    exhaustive = True
    label = ""
    logger.info("suite %s on L_%d, n=%d", name, chain.k, n)
    start = time.perf_counter()

    if suite.items is not None:
        if samples:
            logger.info("%s scans a fixed population; ignoring samples=%d", name, samples)
        population, counterexample = _scan(suite, ctx, suite.items(ctx))
    else:
        label = constraint.label
        if samples:
            exhaustive = False
            items = sample_ops(chain, pop_n, constraint, samples=samples, seed=seed)
            population, counterexample = _scan(suite, ctx, items)
        elif jobs > 1 and not suite.stateful:
            population, counterexample = _parallel_scan(suite, ctx, pop_n, constraint, jobs)
        else:
            items = enumerate_ops(chain, pop_n, constraint, guard=guard)
            population, counterexample = _scan(suite, ctx, items)

    ctx.details["population"] = population
    if suite.finish is not None and counterexample is None:
        reason = suite.finish(ctx)
        if reason:
            counterexample = Counterexample(None, reason)
    del ctx.details["population"]

    if suite.claimed is None:
        verdict = FOUND if counterexample else NONE_FOUND
    else:
        verdict = FAILS if counterexample else HOLDS
    elapsed = time.perf_counter() - start
    logger.info("suite %s: %s over %d items in %.2fs", name, verdict, population, elapsed)
    return SuiteReport(name, chain.k, n, population, verdict, counterexample, elapsed,
                       exhaustive, suite.claimed, label, dict(ctx.details))


def run_all(chain, n, **kwargs):
    """Run every suite; suites refused by a guard are reported as skipped."""
    reports = []
    for name in SUITES:
        try:
            reports.append(run_suite(name, chain, n, **kwargs))
        except ResourceGuardError as e:
            logger.warning("skipping %s: %s", name, e)
            suite = SUITES[name]
            reports.append(SuiteReport(name, chain.k, suite.forced_n or n, 0, SKIPPED,
                                       claimed=suite.claimed, details={"skipped": str(e)}))
    return reports


def reports_frame(reports):
    return pd.DataFrame([{
        "suite": r.suite,
        "k": r.k,
        "n": r.n,
        "population": r.population,
        "constraint": r.constraint,
        "exhaustive": r.exhaustive,
        "verdict": r.verdict,
        "claimed": r.claimed,
        "matches_claim": r.matches_claim,
        "elapsed": round(r.elapsed, 4),
        "reason": r.counterexample.reason if r.counterexample else "",
    } for r in reports])


def save_reports_csv(reports, path):
    reports_frame(reports).to_csv(path, index=False)
    logger.info("wrote %d suite reports to %s", len(reports), path)
