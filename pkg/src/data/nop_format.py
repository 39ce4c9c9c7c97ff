"""
NOP v1 text format
==================
Operation tables are exchanged as::

    NOP 1
    k=<k> n=<n>
    <k^n integers in 1..k, whitespace separated, TupleCode order>

Lines starting with ``#`` and blank lines are ignored. The writer puts
k values on each line, so binary tables read as their matrix.

Orderings are written as comma-separated permutations (``3,2,4,1``) and
g-maps as ``e=<e>; g=<g(1)>,...,<g(e)>``.
"""

import logging
import re

from src.data.chain_core import FiniteChain, GMap, LinearOrdering, OpTable
from src.exceptions import ChainAlgebraError, NopParseError

logger = logging.getLogger(__name__)

NOP_VERSION = "1"
_HEADER = re.compile(r"^k=(\d+)\s+n=(\d+)$")


def dumps_op(op, comments=()):
    """Serialize an OpTable to NOP v1 text."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"NOP {NOP_VERSION}")
    lines.append(f"k={op.k} n={op.n}")
    values = op.values.tolist()
    for start in range(0, len(values), op.k):
        lines.append(" ".join(str(v) for v in values[start:start + op.k]))
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, raw


def loads_op(text):
    """
    Parse NOP v1 text into an OpTable.

    Raises
    ------
    NopParseError
        On a missing or unknown version line, a malformed header, a
        non-integer or out-of-range value, or a wrong value count. The
        error carries the 1-based line and column of the problem.
    """
    lines = _content_lines(text)

    try:
        number, raw = next(lines)
    except StopIteration:
        raise NopParseError("empty input, expected 'NOP 1'", line=1, column=1) from None
    parts = raw.split()
    if len(parts) != 2 or parts[0] != "NOP":
        raise NopParseError(f"expected 'NOP <version>', got {raw.strip()!r}",
                            line=number, column=raw.index(raw.strip()) + 1)
    if parts[1] != NOP_VERSION:
        raise NopParseError(f"unsupported NOP version {parts[1]!r}",
                            line=number, column=raw.index(parts[1]) + 1)

    try:
        number, raw = next(lines)
    except StopIteration:
        raise NopParseError("missing 'k=<k> n=<n>' header", line=number + 1, column=1) from None
    match = _HEADER.match(raw.strip())
    if not match:
        raise NopParseError(f"expected 'k=<k> n=<n>', got {raw.strip()!r}",
                            line=number, column=raw.index(raw.strip()) + 1)
    k, n = int(match.group(1)), int(match.group(2))
    if k < 1 or n < 1:
        raise NopParseError("k and n must be positive", line=number, column=1)
    expected = k ** n

    values = []
    last_line = number
    for number, raw in lines:
        last_line = number
        for token in re.finditer(r"\S+", raw):
            column = token.start() + 1
            try:
                value = int(token.group())
            except ValueError:
                raise NopParseError(f"not an integer: {token.group()!r}",
                                    line=number, column=column) from None
            if not 1 <= value <= k:
                raise NopParseError(f"value {value} outside 1..{k}", line=number, column=column)
            if len(values) == expected:
                raise NopParseError(f"more than {expected} values", line=number, column=column)
            values.append(value)

    if len(values) != expected:
        raise NopParseError(f"expected {expected} values, got {len(values)}",
                            line=last_line, column=1)
    try:
        return OpTable(FiniteChain(k), n, values)
    except ChainAlgebraError as e:
        raise NopParseError(str(e), line=last_line) from e


def write_op(op, path, comments=()):
    with open(path, "w") as f:
        f.write(dumps_op(op, comments=comments))
    logger.info("wrote k=%d n=%d table to %s", op.k, op.n, path)


def read_op(path):
    with open(path, "r") as f:
        return loads_op(f.read())


# ==============================================================================
# Orderings and g-maps
# ==============================================================================

def format_ordering(ordering):
    return ",".join(str(a) for a in ordering.seq)


def parse_ordering(text, chain=None):
    """Parse ``3,2,4,1``; the chain defaults to L_(number of entries)."""
    try:
        seq = tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise NopParseError(f"ordering must be comma-separated integers, got {text!r}") from None
    return LinearOrdering(chain or FiniteChain(len(seq)), seq)


def format_gmap(gmap):
    return f"e={gmap.e}; g=" + ",".join(str(v) for v in gmap.g)


def parse_gmap(text, chain):
    match = re.fullmatch(r"\s*e=(\d+)\s*;\s*g=([\d,\s]+)", text)
    if not match:
        raise NopParseError(f"expected 'e=<e>; g=<g1>,...', got {text!r}")
    g = tuple(int(v) for v in match.group(2).replace(" ", "").split(",") if v)
    return GMap(chain, int(match.group(1)), g)
