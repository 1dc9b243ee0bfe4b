"""ASCII and SVG pictures of patches, bar patches and tori.

Output is deterministic: colors get fill shades by their rank in sorted
order, never by hashing.
"""

from __future__ import annotations

from html import escape

from .core import BarPatch, Barset, Patch, Tileset, WangBar
from .search import TorusTiling

MODES = ("ascii", "svg")
CELL = 40

_PALETTE = ("#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
            "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8",
            "#800000", "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080")


def _fills(colors) -> dict:
    return {c: _PALETTE[i % len(_PALETTE)] for i, c in enumerate(sorted(set(colors)))}


def _short(c: str) -> str:
    return c[1:] if c.startswith("@") else c


# ----------------------------------------------------------------------------
# ASCII


def ascii_patch(p: Patch, ts: Tileset) -> str:
    """Three text lines per row of tiles, north on top; y grows upwards."""
    w = max(len(_short(c)) for t in ts for c in t.as_tuple())
    out = []
    for y in reversed(range(p.height)):
        top, mid, bot = [], [], []
        for x in range(p.width):
            t = ts[p[x, y]]
            top.append(" " * (w + 1) + _short(t.north).center(w) + " " * (w + 1))
            mid.append(_short(t.west).rjust(w) + "[" + str(p[x, y]).center(w) + "]"
                       + _short(t.east).ljust(w))
            bot.append(" " * (w + 1) + _short(t.south).center(w) + " " * (w + 1))
        out.extend("|".join(r).rstrip() for r in (top, mid, bot))
        out.append("")
    return "\n".join(out)


def ascii_bar_patch(bp: BarPatch, bs: Barset) -> str:
    """One text line per row; ``|`` marks where a bar starts, cells show bar indices."""
    w = len(str(len(bs) - 1))
    lines = []
    for y in reversed(range(bp.height)):
        parts = []
        for x in range(bp.width):
            sep = "|" if bp.pos_at(x, y) == 1 else " "
            parts.append(sep + str(bp.bar_at(x, y)).rjust(w))
        lines.append("".join(parts))
    return "\n".join(lines) + "\n"


def ascii_items(items) -> str:
    return "".join(f"{i}: {it}\n" for i, it in enumerate(items))


# ----------------------------------------------------------------------------
# SVG


def _svg(width, height, body) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">')
    style = ("<style>text{font-family:monospace;font-size:10px;"
             "text-anchor:middle;dominant-baseline:middle}</style>")
    return "\n".join([head, style, *body, "</svg>"]) + "\n"


def _sides(tile) -> dict:
    return {"north": tile.north, "east": tile.east, "south": tile.south, "west": tile.west}


def _tile_svg(x0, y0, sides, fills, label=None, s=CELL):
    """Four triangles; a side colored None is left blank."""
    cx, cy = x0 + s / 2, y0 + s / 2
    corners = {"north": ((x0, y0), (x0 + s, y0)), "east": ((x0 + s, y0), (x0 + s, y0 + s)),
               "south": ((x0 + s, y0 + s), (x0, y0 + s)), "west": ((x0, y0 + s), (x0, y0))}
    out = []
    for side, ((ax, ay), (bx, by)) in corners.items():
        color = sides[side]
        fill = "#ffffff" if color is None else fills[color]
        out.append(f'<polygon points="{ax},{ay} {bx},{by} {cx},{cy}" '
                   f'fill="{fill}" stroke="#000" stroke-width="0.5"/>')
        if color is None:
            continue
        tx, ty = (ax + bx + cx) / 3, (ay + by + cy) / 3
        out.append(f'<text x="{tx:.1f}" y="{ty:.1f}">{escape(_short(color))}</text>')
    if label is not None:
        out.append(f'<rect x="{x0}" y="{y0}" width="{s}" height="{s}" fill="none" '
                   f'stroke="#000" stroke-width="1.5"><title>{escape(label)}</title></rect>')
    return out


def svg_patch(p: Patch, ts: Tileset, cell: int = CELL) -> str:
    fills = _fills(c for t in ts for c in t.as_tuple())
    body = []
    for (x, y), v in p.cells():
        body += _tile_svg(x * cell, (p.height - 1 - y) * cell, _sides(ts[v]), fills, f"tile {v}", cell)
    return _svg(p.width * cell, p.height * cell, body)


def svg_bar_patch(bp: BarPatch, bs: Barset, cell: int = 16) -> str:
    """Bars as one-cell-tall rectangles; thin lines separate their cells."""
    fills = _fills(range(len(bs)))
    half = cell / 2
    body = []
    for y in range(bp.height):
        top = (bp.height - 1 - y) * cell
        x = 0
        while x < bp.width:
            start, b = x, bp.bar_at(x, y)
            x += 1
            while x < bp.width and bp.pos_at(x, y) != 1 and bp.bar_at(x, y) == b:
                x += 1
            body.append(f'<rect x="{start * cell}" y="{top}" width="{(x - start) * cell}" '
                        f'height="{cell}" fill="{fills[b]}" fill-opacity="0.5" stroke="#000" '
                        f'stroke-width="1.2"><title>bar {b}</title></rect>')
            for k in range(start + 1, x):
                body.append(f'<line x1="{k * cell}" y1="{top}" x2="{k * cell}" '
                            f'y2="{top + cell}" stroke="#000" stroke-width="0.2"/>')
            for k in range(start, x):
                bar, pos = bs[b], bp.pos_at(k, y)
                body.append(f'<text x="{k * cell + half}" y="{top + cell * 0.27:.1f}" '
                            f'font-size="{cell * 0.3:.1f}">{escape(_short(bar.north[pos - 1]))}</text>')
                body.append(f'<text x="{k * cell + half}" y="{top + cell * 0.77:.1f}" '
                            f'font-size="{cell * 0.3:.1f}">{escape(_short(bar.south[pos - 1]))}</text>')
    return _svg(bp.width * cell, bp.height * cell, body)


def svg_items(items, cell: int = CELL) -> str:
    """A catalogue: one tile or bar per row."""
    items = list(items)
    if items and isinstance(items[0], WangBar):
        fills = _fills(c for b in items for c in (*b.north, *b.south, b.east, b.west))
        body = []
        for i, b in enumerate(items):
            y0 = i * cell
            for k in range(len(b)):
                sides = {"north": b.north[k], "south": b.south[k],
                         "east": b.east if k == len(b) - 1 else None,
                         "west": b.west if k == 0 else None}
                body += _tile_svg(k * cell, y0, sides, fills, None, cell)
            body.append(f'<rect x="0" y="{y0}" width="{len(b) * cell}" height="{cell}" '
                        f'fill="none" stroke="#000" stroke-width="2"/>')
        return _svg(max(len(b) for b in items) * cell, len(items) * cell, body)
    ts = Tileset(items)
    return svg_patch(Patch(len(ts), 1, [list(range(len(ts)))]), ts, cell)


def render(obj, items, mode: str = "svg", repeat: tuple = (1, 1)) -> str:
    """Picture of a Patch, TorusTiling (unrolled ``repeat`` times), BarPatch or item list."""
    if mode not in MODES:
        raise ValueError(f"unsupported mode {mode!r}")
    if isinstance(obj, TorusTiling):
        obj = obj.unrolled(*repeat)
    if isinstance(obj, Patch):
        return ascii_patch(obj, items) if mode == "ascii" else svg_patch(obj, items)
    if isinstance(obj, BarPatch):
        return ascii_bar_patch(obj, items) if mode == "ascii" else svg_bar_patch(obj, items)
    if obj is None:
        return ascii_items(items) if mode == "ascii" else svg_items(items)
    raise TypeError(f"cannot render {type(obj).__name__}")
