"""
Contour Renderer
================
Draws the contour plot of a binary or ternary operation: the grid of
values, its level sets and its isolated points. ASCII output prints the
first argument as rows, largest at the top, so a binary table reads like
a picture in the (x_1, x_2) plane. SVG output places a dot at every
lattice point and joins the points of each level set in lexicographic
order.

Ternary tables are drawn as k slices, one per value of x_1.
"""

import io
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from src.data.chain_core import all_tuples  # noqa: E402
from src.exceptions import UnsupportedArityError  # noqa: E402

SVG_HASHSALT = "quasitrivial-contour"


def _require_drawable(op):
    if op.n not in (2, 3):
        raise UnsupportedArityError(f"only binary and ternary tables can be drawn, got n={op.n}",
                                    property_name="arity")


def level_sets(op):
    """
    Map value -> points attaining it, each list in code order. Values are
    ordered by (size of level set, value); for an idempotent uninorm this
    is the order in which the contour construction adds them.
    """
    points = defaultdict(list)
    for t, v in zip(all_tuples(op.chain, op.n), op.values):
        points[int(v)].append(tuple(int(x) for x in t))
    return dict(sorted(points.items(), key=lambda item: (len(item[1]), item[0])))


def _point(p):
    return "(" + ",".join(str(x) for x in p) + ")"


def _grid_lines(op, prefix=()):
    k = op.k
    width = len(str(k))
    lines = []
    for row in range(k, 0, -1):
        cells = " ".join(f"{op(*prefix, row, col):>{width}}" for col in range(1, k + 1))
        lines.append(f"{row:>{width}} | {cells}")
    labels = " ".join(f"{col:>{width}}" for col in range(1, k + 1))
    lines.append(f"{' ' * width} +-{'-' * len(labels)}")
    lines.append(f"{' ' * width}   {labels}")
    return lines


def render_ascii(op):
    """
    Text contour plot with a level-set legend.

    Raises
    ------
    UnsupportedArityError
        For arities other than 2 and 3.
    """
    _require_drawable(op)
    lines = [f"k={op.k} n={op.n}"]
    if op.n == 2:
        lines += _grid_lines(op)
    else:
        for x1 in op.chain.elements:
            lines.append(f"x1={x1}")
            lines += _grid_lines(op, prefix=(x1,))
    lines.append("level sets:")
    for value, points in level_sets(op).items():
        lines.append(f"  {value}: " + " ".join(_point(p) for p in points))
    isolated = [points[0] for points in level_sets(op).values() if len(points) == 1]
    lines.append("isolated: " + (" ".join(_point(p) for p in sorted(isolated)) or "none"))
    return "\n".join(lines) + "\n"


def _draw_slice(ax, op, sets, x1=None):
    k = op.k
    for row in range(1, k + 1):
        ax.scatter(range(1, k + 1), [row] * k, s=12, color="black", zorder=3)
    for value, points in sets.items():
        if x1 is not None:
            points = [p[1:] for p in points if p[0] == x1]
        if not points:
            continue
        rows = [p[0] for p in points]
        cols = [p[1] for p in points]
        ax.plot(cols, rows, linewidth=1, color="black")
        ax.annotate(str(value), (cols[-1], rows[-1]), xytext=(6, 0),
                    textcoords="offset points", va="center")
    ax.set_xlim(0.5, k + 0.75)
    ax.set_ylim(0.5, k + 0.5)
    ax.set_xticks(range(1, k + 1))
    ax.set_yticks(range(1, k + 1))
    ax.set_aspect("equal")
    if x1 is not None:
        ax.set_title(f"x1={x1}")


def render_svg(op):
    """SVG contour plot as a string; identical tables give identical bytes."""
    _require_drawable(op)
    sets = level_sets(op)
    slices = [None] if op.n == 2 else list(op.chain.elements)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASHSALT, "svg.fonttype": "none"}):
        fig, axes = plt.subplots(1, len(slices), figsize=(3 * len(slices), 3), squeeze=False)
        for ax, x1 in zip(axes[0], slices):
            _draw_slice(ax, op, sets, x1)
        fig.tight_layout()
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buffer.getvalue()
