"""Tilesets and barsets shared by the tests."""

from __future__ import annotations

from wangbars import Barset, Tileset
from wangbars.io import load

from conftest import DATA


def kari_culik() -> Tileset:
    return load(DATA / "kari_culik.tiles").body


def example_i() -> Tileset:
    return load(DATA / "example_I.tiles").body


def three_bars() -> Barset:
    return load(DATA / "three_bars.bars").body


def three_tiles() -> Tileset:
    return load(DATA / "three_tiles.tiles").body


def ts(*tiles) -> Tileset:
    return Tileset([tuple(str(c) for c in t) for t in tiles])


def bs(*bars) -> Barset:
    return Barset([(str(e), str(w), list(n), list(s)) for e, w, n, s in bars])
