"""The line-oriented ``hgr`` text format.

::

    hgr 1
    vertices 3
    # comments start with '#'
    edge 1 1 2 3        # weight, then 1-based vertices
    edge 1/2 1 2
    wc 2 1              # join weight for new edges of cardinality 2

Weights are decimals or ``p/q`` and are kept exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .hypercore import Edge, Hypergraph, HypergraphError, WeightTable

__all__ = ["HgrError", "HgrDocument", "parse_hgr", "serialize_hgr", "read_hgr", "write_hgr", "format_fraction"]

VERSION = 1


class HgrError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class HgrDocument:
    h: Hypergraph
    w: WeightTable

    @property
    def has_weight_table(self) -> bool:
        return bool(self.w.weights)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _weight(tok: str, line: int) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise HgrError(line, f"bad weight {tok!r}") from None
    if w < 0:
        raise HgrError(line, f"negative weight {tok}")
    return w


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise HgrError(line, f"bad {what} {tok!r}") from None


def parse_hgr(text: str) -> HgrDocument:
    version: Optional[int] = None
    n: Optional[int] = None
    edges: list[Edge] = []
    wc: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if version is None:
            if head != "hgr" or len(args) != 1:
                raise HgrError(lineno, "expected header 'hgr 1'")
            version = _int(args[0], lineno, "version")
            if version != VERSION:
                raise HgrError(lineno, f"unsupported version {version}")
            continue
        if head == "vertices":
            if n is not None:
                raise HgrError(lineno, "duplicate 'vertices' record")
            if len(args) != 1:
                raise HgrError(lineno, "expected 'vertices <n>'")
            n = _int(args[0], lineno, "vertex count")
            if n < 0:
                raise HgrError(lineno, "negative vertex count")
        elif head == "edge":
            if n is None:
                raise HgrError(lineno, "'edge' before 'vertices'")
            if len(args) < 2:
                raise HgrError(lineno, "expected 'edge <weight> <v1> ...'")
            w = _weight(args[0], lineno)
            vs = [_int(t, lineno, "vertex") for t in args[1:]]
            if len(set(vs)) != len(vs):
                raise HgrError(lineno, "repeated vertex in edge")
            bad = [v for v in vs if not 1 <= v <= n]
            if bad:
                raise HgrError(lineno, f"vertex {bad[0]} outside 1..{n}")
            edges.append(Edge(tuple(sorted(vs)), w))
        elif head == "wc":
            if len(args) != 2:
                raise HgrError(lineno, "expected 'wc <c> <weight>'")
            c = _int(args[0], lineno, "cardinality")
            if c < 2:
                raise HgrError(lineno, f"cardinality {c} < 2")
            if c in wc:
                raise HgrError(lineno, f"duplicate weight for cardinality {c}")
            wc[c] = _weight(args[1], lineno)
        else:
            raise HgrError(lineno, f"unknown record {head!r}")
    if version is None:
        raise HgrError(1, "empty document")
    if n is None:
        raise HgrError(lineno, "missing 'vertices' record")
    try:
        h = Hypergraph(n, tuple(edges))
    except HypergraphError as e:
        raise HgrError(lineno, str(e)) from None
    return HgrDocument(h, WeightTable(wc))


def serialize_hgr(h: Hypergraph, w: Optional[WeightTable] = None) -> str:
    """Canonical text: sorted edges and normalized rationals."""
    if w is not None and w.default != 0:
        raise ValueError("the hgr format stores explicit cardinalities only; default weight must be 0")
    lines = [f"hgr {VERSION}", f"vertices {h.n}"]
    for e in h.edges:
        lines.append("edge " + " ".join([format_fraction(e.weight), *map(str, e.vertices)]))
    if w is not None:
        for c, x in w.weights.items():
            lines.append(f"wc {c} {format_fraction(x)}")
    return "\n".join(lines) + "\n"


def read_hgr(path) -> HgrDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_hgr(fh.read())


def write_hgr(path, h: Hypergraph, w: Optional[WeightTable] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_hgr(h, w))
