"""SVG drawings of instances, solutions and the hexagonal partition."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .domination import EvdsSolution
from .geometry import UnitDiskGraph
from .hexgrid import HexGrid, HexCellId, cell_center, hex_corners, mega_cell_of

SCALE = 80.0
MARGIN = 1.0

_MEGA_PALETTE = ("#fde2e4", "#e2ece9", "#dfe7fd", "#fff1c1", "#e8dff5", "#d7f9f1", "#fce1c8", "#eaf4c2")


def render_svg(
    g: UnitDiskGraph,
    solution: EvdsSolution | None = None,
    grid: HexGrid | None = None,
    mega_cells: bool = False,
    title: str | None = None,
) -> str:
    x0, y0, x1, y1 = g.bounding_box()
    x0, y0, x1, y1 = x0 - MARGIN, y0 - MARGIN, x1 + MARGIN, y1 + MARGIN
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def px(x, y):
        # flip y so the drawing uses mathematical orientation
        return (x - x0) * SCALE, (y1 - y) * SCALE

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")

    if grid is not None:
        cells = grid.occupied()
        if mega_cells:
            groups = sorted({mega_cell_of(c) for c in cells})
            colour = {grp: _MEGA_PALETTE[i % len(_MEGA_PALETTE)] for i, grp in enumerate(groups)}
            # paint the full ten-cell group of every occupied cell
            painted = set()
            for grp in groups:
                for dq in range(5):
                    for dr in range(2):
                        c = HexCellId(grp[0] * 5 + dq, grp[1] * 2 + dr)
                        if c not in painted:
                            painted.add(c)
                            out.append(_hexagon(grid, c, px, fill=colour[grp], stroke="#cccccc"))
        for c in cells:
            out.append(_hexagon(grid, c, px, fill="none", stroke="#888888"))
            cx, cy = px(*cell_center(grid, c))
            out.append(
                f'<text x="{cx:.1f}" y="{cy:.1f}" font-size="8" fill="#aaaaaa" '
                f'text-anchor="middle">{c.q},{c.r}</text>'
            )

    chosen = solution.edges if solution is not None else frozenset()
    for e, (u, v) in enumerate(g.edges):
        (ax, ay), (bx, by) = px(g.points[u].x, g.points[u].y), px(g.points[v].x, g.points[v].y)
        if e in chosen:
            style = 'stroke="#d62728" stroke-width="4"'
        else:
            style = 'stroke="#999999" stroke-width="1"'
        out.append(f'<line x1="{ax:.1f}" y1="{ay:.1f}" x2="{bx:.1f}" y2="{by:.1f}" {style}/>')
    for p in g.points:
        cx, cy = px(p.x, p.y)
        out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="4" fill="#1f77b4"><title>{p.id}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _hexagon(grid, cell, px, fill, stroke) -> str:
    pts = " ".join(f"{a:.1f},{b:.1f}" for a, b in (px(x, y) for x, y in hex_corners(grid, cell)))
    return f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>'
