"""ASCII rendering of tile layouts.

Columns index the A side, rows the B side; each cell lists the labels of
the tiles covering it.  A state covering the entire grid is treated as the
stopper and left out of the picture, as is customary for these diagrams.
"""

from __future__ import annotations

from .basis import ProductBasis
from .errors import NoTileMetadata

__all__ = ["render_tiles"]

_LABEL_WIDTH = 6


def render_tiles(basis: ProductBasis) -> str:
    if any(st.tile_cells is None for st in basis):
        raise NoTileMetadata("basis states carry no tile-cell metadata")
    full_grid = frozenset((c, r) for c in range(basis.d_a) for r in range(basis.d_b))
    tiles = [st for st in basis if st.tile_cells != full_grid]
    stoppers = [st for st in basis if st.tile_cells == full_grid]

    short = {}
    legend = []
    for st in tiles:
        label = st.label or "?"
        trunc = label[:_LABEL_WIDTH]
        short[id(st)] = trunc
        if len(label) > _LABEL_WIDTH:
            legend.append(f"{trunc} = {label}")

    cell_text = {}
    for c in range(basis.d_a):
        for r in range(basis.d_b):
            covering = [short[id(st)] for st in tiles if (c, r) in st.tile_cells]
            cell_text[(c, r)] = " ".join(covering) if covering else "."

    widths = [
        max(len(cell_text[(c, r)]) for r in range(basis.d_b)) if basis.d_b else 1
        for c in range(basis.d_a)
    ]
    widths = [max(w, len(f"A{c}")) for c, w in enumerate(widths)]

    lines = []
    header = "     " + "  ".join(f"A{c}".ljust(widths[c]) for c in range(basis.d_a))
    lines.append(header)
    for r in range(basis.d_b):
        row = "  ".join(cell_text[(c, r)].ljust(widths[c]) for c in range(basis.d_a))
        lines.append(f"B{r:<3} {row}".rstrip())
    for st in stoppers:
        lines.append(f"stopper {st.label or '?'} omitted (covers every cell)")
    if legend:
        lines.append("legend:")
        lines.extend(f"  {entry}" for entry in sorted(set(legend)))
    return "\n".join(lines)
