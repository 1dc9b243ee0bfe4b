"""Plain-text files of tiles or bars.

One entry per line::

    # comment
    tile E W N S
    bar  E W n1,n2,... s1,s2,...

A file holds tiles or bars, never both.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

from .core import Barset, Tileset, WangBar, WangTile, check_color


class DocKind(enum.Enum):
    TILESET = "tileset"
    BARSET = "barset"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = "" if line is None else f"line {line}: "
        if source:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


@dataclass(frozen=True)
class Document:
    kind: DocKind
    body: Tileset | Barset
    source_path: str | None = field(default=None, compare=False)

    @classmethod
    def of(cls, body, source_path=None) -> "Document":
        kind = DocKind.TILESET if isinstance(body, Tileset) else DocKind.BARSET
        return cls(kind, body, source_path)


def _token(tok, allow_reserved, lineno, source):
    try:
        return check_color(tok, allow_reserved=allow_reserved)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, source) from None


def parse(text: str, *, source_path: str | None = None, allow_reserved: bool = False) -> Document:
    """Parse a tile or bar file.  Reserved ``@`` colors are refused unless allowed."""
    kind, items, seen = None, [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head not in ("tile", "bar"):
            raise ParseError(f"expected 'tile' or 'bar', got {head!r}", lineno, source_path)
        this = DocKind.TILESET if head == "tile" else DocKind.BARSET
        if kind is not None and this is not kind:
            raise ParseError("tile and bar lines cannot be mixed", lineno, source_path)
        kind = this
        if len(args) != 4:
            raise ParseError(f"'{head}' takes 4 fields, got {len(args)}", lineno, source_path)
        tok = lambda t: _token(t, allow_reserved, lineno, source_path)  # noqa: E731
        if head == "tile":
            item = WangTile(*(tok(a) for a in args))
        else:
            north = [tok(t) for t in args[2].split(",")]
            south = [tok(t) for t in args[3].split(",")]
            if len(north) != len(south):
                raise ParseError("unequal word lengths", lineno, source_path)
            item = WangBar(tok(args[0]), tok(args[1]), north, south)
        if item in seen:
            raise ParseError(f"duplicate {head} (first on line {seen[item]})", lineno, source_path)
        seen[item] = lineno
        items.append(item)
    if kind is None:
        raise ParseError("empty input", None, source_path)
    body = Tileset(items) if kind is DocKind.TILESET else Barset(items)
    return Document(kind, body, source_path)


def serialize(doc: Document) -> str:
    lines = []
    if doc.kind is DocKind.TILESET:
        for t in doc.body:
            lines.append("tile " + " ".join(t.as_tuple()))
    else:
        for b in doc.body:
            lines.append(f"bar {b.east} {b.west} {','.join(b.north)} {','.join(b.south)}")
    return "\n".join(lines) + "\n"


def load(path, *, allow_reserved: bool = False) -> Document:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), source_path=str(path),
                 allow_reserved=allow_reserved)


def dump(doc: Document, path) -> None:
    Path(path).write_text(serialize(doc), encoding="utf-8")
