"""
Chain Core
==========
Value types shared by every other module: the finite chain
L_k = {1, ..., k}, dense n-ary operation tables, alternative linear
orderings of the chain, g-maps and property reports.

Everything is 1-based to mirror L_k. Argument tuples are addressed by a
big-endian code, x_1 most significant:

    code = sum_i (x_i - 1) * k^(n - i)

so a binary table printed row by row reads as a matrix whose rows are
indexed by the first argument.
"""

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from src.exceptions import ConstructionError, DomainError


# ==============================================================================
# FiniteChain
# ==============================================================================

@dataclass(frozen=True)
class FiniteChain:
    """The chain L_k = {1, ..., k} with its natural order."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool) or self.k < 1:
            raise ConstructionError(f"chain size must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def elements(self):
        return range(1, self.k + 1)

    def __contains__(self, x):
        return isinstance(x, (int, np.integer)) and 1 <= x <= self.k

    def check_element(self, x, position=None):
        """Raise DomainError unless x is an element of the chain."""
        if x not in self:
            where = f" at position {position}" if position is not None else ""
            raise DomainError(f"{x!r}{where} is not an element of L_{self.k}", position=position)
        return int(x)

    def meet(self, values):
        """Natural-order minimum of a nonempty collection."""
        return min(self.check_element(v) for v in values)

    def join(self, values):
        """Natural-order maximum of a nonempty collection."""
        return max(self.check_element(v) for v in values)

    def size(self, n):
        """Number of n-tuples, k^n."""
        return self.k ** n


# ==============================================================================
# Tuple codec
# ==============================================================================

def _powers(k, n):
    return k ** np.arange(n - 1, -1, -1, dtype=np.int64)


def encode_tuple(chain, n, tup):
    """
    Encode an argument tuple as its TupleCode.

    Raises
    ------
    DomainError
        If the tuple has the wrong length or an entry outside 1..k; the
        error names the 1-based offending position.
    """
    tup = tuple(tup)
    if len(tup) != n:
        raise DomainError(f"expected a {n}-tuple, got {len(tup)} entries")
    code = 0
    for position, x in enumerate(tup, start=1):
        code = code * chain.k + chain.check_element(x, position=position) - 1
    return code


def decode_tuple(chain, n, code):
    """Inverse of encode_tuple."""
    total = chain.size(n)
    if not isinstance(code, (int, np.integer)) or not 0 <= code < total:
        raise DomainError(f"code {code!r} outside [0, {total})")
    code = int(code)
    digits = []
    for _ in range(n):
        code, digit = divmod(code, chain.k)
        digits.append(digit + 1)
    return tuple(reversed(digits))


def decode_codes(chain, n, codes):
    """Vectorised decode: (m,) codes -> (m, n) array of tuples."""
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[:, None] // _powers(chain.k, n)) % chain.k + 1


def encode_tuples(chain, n, tuples):
    """Vectorised encode: (m, n) array of tuples -> (m,) codes. No range check."""
    return (np.asarray(tuples, dtype=np.int64) - 1) @ _powers(chain.k, n)


def all_tuples(chain, n):
    """Every n-tuple over the chain as a (k^n, n) array, in code order."""
    return decode_codes(chain, n, np.arange(chain.size(n), dtype=np.int64))


def constant_tuple(n, x):
    return (x,) * n


# ==============================================================================
# OpTable
# ==============================================================================

class OpTable:
    """
    A dense, immutable n-ary operation F: L_k^n -> L_k.

    The k^n outputs are stored flat in TupleCode order in a read-only
    numpy array.
    """

    __slots__ = ("_chain", "_n", "_values", "_hash")

    def __init__(self, chain, n, values):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise ConstructionError(f"arity must be a positive integer, got {n!r}")
        n = int(n)
        try:
            raw = np.asarray(values).reshape(-1)
            array = raw.astype(np.int64)
        except (TypeError, ValueError, OverflowError) as e:
            raise ConstructionError(f"table values must be integers: {e}") from e
        if raw.dtype.kind == "f":
            bad = raw[raw != array]
        elif raw.dtype.kind in "iu":
            bad = raw[:0]
        else:
            bad = raw
        if bad.size:
            raise ConstructionError(f"table values must be integers, got {bad[0].item()!r}")
        expected = chain.size(n)
        if array.size != expected:
            raise ConstructionError(
                f"table for k={chain.k}, n={n} needs {expected} values, got {array.size}"
            )
        bad = np.flatnonzero((array < 1) | (array > chain.k))
        if bad.size:
            code = int(bad[0])
            raise ConstructionError(
                f"value {int(array[code])} at {decode_tuple(chain, n, code)} "
                f"is not an element of L_{chain.k}"
            )
        array.flags.writeable = False
        self._chain = chain
        self._n = n
        self._values = array
        self._hash = None

    @property
    def chain(self):
        return self._chain

    @property
    def k(self):
        return self._chain.k

    @property
    def n(self):
        return self._n

    @property
    def values(self):
        return self._values

    def __len__(self):
        return self._values.size

    def __call__(self, *args):
        return op_eval(self, args)

    def evaluate_many(self, tuples):
        """Evaluate a (m, n) array of tuples at once; entries are trusted."""
        return self._values[encode_tuples(self._chain, self._n, tuples)]

    def as_array(self):
        """The table as an n-dimensional array indexed by (x_1 - 1, ..., x_n - 1)."""
        return self._values.reshape((self.k,) * self.n)

    def key(self):
        """Hashable identity of the table."""
        return (self.k, self.n, self._values.tobytes())

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"OpTable(k={self.k}, n={self.n}, values={self._values.tolist()})"


def op_new(chain, n, values):
    """Build an OpTable, validating length and range of the values."""
    return OpTable(chain, n, values)


def op_eval(op, tup):
    """F(x_1, ..., x_n) for a single tuple."""
    return int(op.values[encode_tuple(op.chain, op.n, tup)])


# ==============================================================================
# LinearOrdering
# ==============================================================================

@dataclass(frozen=True)
class LinearOrdering:
    """
    An alternative total order a_1 < a_2 < ... < a_k on the chain,
    given as the permutation seq = (a_1, ..., a_k). rank[a_i] = i.
    """

    chain: FiniteChain
    seq: tuple
    rank: MappingProxyType = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seq = tuple(int(a) for a in self.seq)
        if sorted(seq) != list(self.chain.elements):
            raise ConstructionError(f"{seq} is not a permutation of 1..{self.chain.k}")
        object.__setattr__(self, "seq", seq)
        rank = {a: i for i, a in enumerate(seq, start=1)}
        object.__setattr__(self, "rank", MappingProxyType(rank))

    @classmethod
    def natural(cls, chain):
        return cls(chain, tuple(chain.elements))

    @property
    def minimum(self):
        return self.seq[0]

    @property
    def maximum(self):
        return self.seq[-1]

    def rank_array(self):
        """numpy lookup table: rank_array()[x] = rank of x (index 0 unused)."""
        table = np.zeros(self.chain.k + 1, dtype=np.int64)
        table[list(self.seq)] = np.arange(1, self.chain.k + 1)
        return table

    def leq(self, x, y):
        return ordering_leq(self, x, y)

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def join(self, values):
        """Maximum with respect to this ordering."""
        return max(values, key=self.rank.__getitem__)

    def meet(self, values):
        """Minimum with respect to this ordering."""
        return min(values, key=self.rank.__getitem__)

    def down_set(self, t):
        """{x : x precedes or equals t}."""
        return frozenset(self.seq[: self.rank[t]])


def ordering_leq(ordering, x, y):
    ordering.chain.check_element(x, position=1)
    ordering.chain.check_element(y, position=2)
    return ordering.rank[x] <= ordering.rank[y]


# ==============================================================================
# GMap
# ==============================================================================

@dataclass(frozen=True)
class GMap:
    """
    A nonincreasing map g: {1, ..., e} -> {e, ..., k} with g(e) = e.
    ``g`` holds (g(1), ..., g(e)).
    """

    chain: FiniteChain
    e: int
    g: tuple

    def __post_init__(self):
        k = self.chain.k
        if self.e not in self.chain:
            raise ConstructionError(f"neutral element {self.e!r} is not in L_{k}")
        g = tuple(int(v) for v in self.g)
        if len(g) != self.e:
            raise ConstructionError(f"g must list g(1..{self.e}), got {len(g)} values")
        if g[-1] != self.e:
            raise ConstructionError(f"g(e) must equal e={self.e}, got {g[-1]}")
        for x, v in enumerate(g, start=1):
            if not self.e <= v <= k:
                raise ConstructionError(f"g({x})={v} outside [{self.e}, {k}]")
        for x in range(1, self.e):
            if g[x - 1] < g[x]:
                raise ConstructionError(
                    f"g is not nonincreasing: g({x})={g[x - 1]} < g({x + 1})={g[x]}"
                )
        object.__setattr__(self, "e", int(self.e))
        object.__setattr__(self, "g", g)

    def __call__(self, x):
        if not 1 <= x <= self.e:
            raise DomainError(f"g is defined on 1..{self.e}, got {x!r}")
        return self.g[x - 1]


# ==============================================================================
# PropertyReport
# ==============================================================================

def format_value(value):
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return "[" + ";".join(",".join(str(v) for v in row) for row in value) + "]"
        return "(" + ",".join(str(v) for v in value) + ")"
    if isinstance(value, (set, frozenset)):
        return "{" + ",".join(str(v) for v in sorted(value)) + "}"
    return str(value)


@dataclass(frozen=True)
class PropertyReport:
    """
    Verdict of a property check. ``witness`` is present exactly when the
    property fails and is a read-only mapping of plain Python values.
    """

    name: str
    holds: bool
    witness: MappingProxyType = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ConstructionError(f"report for {self.name} holds but carries a witness")
        if not self.holds and self.witness is None:
            raise ConstructionError(f"report for {self.name} fails without a witness")
        if self.witness is not None and not isinstance(self.witness, MappingProxyType):
            object.__setattr__(self, "witness", MappingProxyType(dict(self.witness)))

    def __bool__(self):
        return self.holds

    def to_line(self):
        """``PROP <name> HOLDS|FAILS [key=value ...]``"""
        line = f"PROP {self.name} {'HOLDS' if self.holds else 'FAILS'}"
        if self.witness:
            line += " " + " ".join(f"{k}={format_value(v)}" for k, v in self.witness.items())
        return line
