"""Command-line entry point: ``wangbars <command> FILE ...``.

Exit status is 0 for every completed run (an UNKNOWN verdict included), 1 for
input/output or parse errors and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import __version__
from .core import Tileset, parameter, split_bars, validate_bar_patch
from .encode import encode44, encoding_ledger, simulate
from .graph import to_graph, wang_to_bars
from .io import Document, DocKind, load, serialize
from .render import render
from .search import (Outcome, decide, decide_bars, decide_low_parameter, decide_two_bars,
                     find_torus_of_size)


class UsageError(Exception):
    pass


def _size(text: str) -> tuple:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m or int(m[1]) < 1 or int(m[2]) < 1:
        raise argparse.ArgumentTypeError(f"expected PxQ with positive integers, got {text!r}")
    return int(m[1]), int(m[2])


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _need(doc: Document, kind: DocKind, command: str):
    if doc.kind is not kind:
        raise UsageError(f"{command} expects a {kind.value} file, got a {doc.kind.value}")


def _torus_or_fail(ts: Tileset, p: int, q: int):
    tt = find_torus_of_size(ts, p, q)
    if tt is None:
        raise UsageError(f"no {p}x{q} torus tiling exists for this tileset")
    return tt


# ----------------------------------------------------------------------------
# commands


def cmd_info(doc: Document, args) -> None:
    if doc.kind is DocKind.TILESET:
        rep = parameter(doc.body)
        print(rep)
        e, w, n, s = rep.side_counts
        print(f"colors per side: E={e} W={w} N={n} S={s}")
        g = to_graph(doc.body)
        print(f"graph: {len(g.vertices)} vertices, {len(g.edges)} edges")
    else:
        bs = doc.body
        lengths = [len(b) for b in bs]
        print(f"bars={len(bs)} lengths={','.join(map(str, lengths))} total={sum(lengths)}")
        print(f"split: {parameter(split_bars(bs).tileset)}")


def cmd_reduce(doc: Document, args) -> None:
    _need(doc, DocKind.TILESET, "reduce")
    out = wang_to_bars(doc.body)
    print(f"rotation={out.rotation} removed_edges={len(out.removed_edges)} "
          f"removed_classes={len(out.removed_classes)} bars={len(out.barset)}", file=sys.stderr)
    if not out.complete:
        print("note: cycle classes were dropped; the tileset also tiles if it tiles "
              "periodically", file=sys.stderr)
    if len(out.barset) == 0:
        print("note: the reduction left no bars", file=sys.stderr)
        _emit("", args.output)
        return
    _emit(serialize(Document.of(out.barset)), args.output)


def cmd_split(doc: Document, args) -> None:
    _need(doc, DocKind.BARSET, "split")
    _emit(serialize(Document.of(split_bars(doc.body).tileset)), args.output)


def cmd_encode44(doc: Document, args) -> None:
    _need(doc, DocKind.TILESET, "encode44")
    enc = encode44(doc.body)
    _emit(serialize(Document.of(enc.all)), args.output)
    if args.ledger:
        Path(args.ledger).write_text(encoding_ledger(enc), encoding="utf-8")


def _report(v, items_for_witness=None) -> None:
    print(v.outcome.value)
    print(v.summary())
    if v.outcome is Outcome.TILES and items_for_witness is not None:
        if v.bar_witness is not None:
            sys.stdout.write(render(v.bar_witness, items_for_witness, "ascii"))
        else:
            sys.stdout.write(render(v.witness, items_for_witness, "ascii"))


def cmd_decide(doc: Document, args) -> None:
    kw = dict(max_period=args.max_period, max_patch=args.max_patch)
    if doc.kind is DocKind.TILESET:
        _report(decide(doc.body, args.steps, **kw), doc.body)
    else:
        _report(decide_bars(doc.body, args.steps, **kw), doc.body)


def cmd_decide2(doc: Document, args) -> None:
    try:
        if doc.kind is DocKind.BARSET:
            v = decide_two_bars(doc.body)
        else:
            v = decide_low_parameter(doc.body)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _report(v, doc.body)


def cmd_simulate(doc: Document, args) -> None:
    _need(doc, DocKind.TILESET, "simulate")
    tt = _torus_or_fail(doc.body, *args.torus)
    enc = encode44(doc.body)
    bp = simulate(doc.body, tt, enc)
    bad = validate_bar_patch(bp, enc.all, wrap=True)
    print(f"bar torus {bp.width}x{bp.height} over 44 bars, {len(bad)} violations")
    if args.output:
        Path(args.output).write_text(render(bp, enc.all, "svg"), encoding="utf-8")


def cmd_render(doc: Document, args) -> None:
    mode = "ascii" if args.ascii else "svg"
    if args.dot:
        _emit(to_graph(doc.body).to_dot(), args.output)
        return
    if args.torus:
        _need(doc, DocKind.TILESET, "render --torus")
        obj = _torus_or_fail(doc.body, *args.torus)
    else:
        obj = None
    _emit(render(obj, doc.body, mode, args.repeat), args.output)


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wangbars", description="Wang tiles and Wang bars.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, output=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="tile or bar file")
        if output:
            p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, "parameter report or bar statistics", output=False)
    add("reduce", cmd_reduce, "reduce a tileset to at most 2k bars")
    add("split", cmd_split, "cut bars into unit tiles")
    p = add("encode44", cmd_encode44, "encode a tileset as 44 bars")
    p.add_argument("--ledger", help="also write the table of all 44 bars here")
    p = add("decide", cmd_decide, "dovetail torus search and patch refutation", output=False)
    p.add_argument("--steps", type=int, default=10**6, help="node-expansion quota")
    p.add_argument("--max-period", type=int, default=None)
    p.add_argument("--max-patch", type=int, default=None)
    add("decide2", cmd_decide2, "exact decision for two bars or parameter <= 1", output=False)
    p = add("simulate", cmd_simulate, "bar tiling built from a torus tiling")
    p.add_argument("--torus", type=_size, required=True, metavar="PxQ")
    p = add("render", cmd_render, "draw a tileset, barset, torus or graph")
    p.add_argument("--dot", action="store_true", help="graph in DOT format")
    p.add_argument("--ascii", action="store_true", help="text instead of SVG")
    p.add_argument("--torus", type=_size, metavar="PxQ")
    p.add_argument("--repeat", type=_size, default=(1, 1), metavar="RXxRY")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        # split mints fresh '@' colors, so its input must not already use them
        doc = load(args.file, allow_reserved=args.command != "split")
        args.func(doc, args)
    except UsageError as exc:
        print(f"wangbars {args.command}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"wangbars {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
