"""Line-based text formats.

Grammar (``#`` starts a comment, blank lines are ignored)::

    diagram  := leaf-line*                      leaf-line := K ":" N
    element  := "[dom]" leaf-line* "[ran]" leaf-line* "[shift]" INT
    general  := "[dom]" leaf-line* "[ran]" leaf-line*
                "[intervals]" (INT ("+"|"-"))*   one line per domain interval
    germ     := ( leaf "->" leaf
                | "sign" vertex ("+"|"-")
                | "vertex" vertex "->" vertex )*

Emitters write the canonical form: leaves sorted by (level, k), sections in
the order above, one trailing newline.  ``emit(parse(t)) == t`` for every
canonical ``t``.
"""

from __future__ import annotations

from typing import Iterable

from .diagram import PerfectDiagram
from .element import ThompsonElement, make
from .fullgroup import GeneralElement
from .germ import PartialAutomorphism, from_edges
from .lamination import Central, Leaf, LaminationError, VertexId, parse_leaf, parse_vertex


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _leaf(no: int, text: str) -> Leaf:
    try:
        return parse_leaf(text)
    except LaminationError as exc:
        raise FormatError(f"line {no}: {exc}") from None


def _vertex(no: int, text: str) -> VertexId:
    try:
        return parse_vertex(text)
    except LaminationError as exc:
        raise FormatError(f"line {no}: {exc}") from None


def leaf_order(leaf: Leaf) -> tuple[int, int]:
    return leaf.n, leaf.k


def vertex_order(v: VertexId) -> tuple:
    if isinstance(v, Central):
        return (0, 0, v.arc)
    return (1, *leaf_order(v.leaf))


def _leaf_block(rows: Iterable[tuple[int, str]]) -> list[Leaf]:
    out, seen = [], set()
    for no, line in rows:
        leaf = _leaf(no, line)
        if leaf in seen:
            raise FormatError(f"line {no}: duplicate leaf {leaf}")
        seen.add(leaf)
        out.append(leaf)
    return out


def parse_diagram(text: str) -> frozenset[Leaf]:
    return frozenset(_leaf_block(_lines(text)))


def emit_diagram(leaves: Iterable[Leaf]) -> str:
    return "".join(f"{l}\n" for l in sorted(set(leaves), key=leaf_order))


def _sections(text: str, names: tuple[str, ...]) -> dict[str, list[tuple[int, str]]]:
    out: dict[str, list[tuple[int, str]]] = {}
    current = None
    for no, line in _lines(text):
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1]
            if name not in names:
                raise FormatError(f"line {no}: unknown section [{name}]")
            if name in out:
                raise FormatError(f"line {no}: repeated section [{name}]")
            current = out[name] = []
        elif current is None:
            raise FormatError(f"line {no}: content before the first section")
        else:
            current.append((no, line))
    missing = [n for n in names if n not in out]
    if missing:
        raise FormatError(f"missing section(s) {', '.join('[' + n + ']' for n in missing)}")
    return out


def _int(no: int, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"line {no}: expected an integer, got {text!r}") from None


def parse_element(text: str) -> ThompsonElement:
    sec = _sections(text, ("dom", "ran", "shift"))
    if len(sec["shift"]) != 1:
        raise FormatError("[shift] must hold exactly one integer")
    no, s = sec["shift"][0]
    return make(_leaf_block(sec["dom"]), _leaf_block(sec["ran"]), _int(no, s))


def emit_element(g: ThompsonElement) -> str:
    return f"[dom]\n{emit_diagram(g.dom.leaves)}[ran]\n{emit_diagram(g.ran.leaves)}[shift]\n{g.shift}\n"


def parse_general(text: str) -> GeneralElement:
    sec = _sections(text, ("dom", "ran", "intervals"))
    targets, signs = [], []
    for no, line in sec["intervals"]:
        parts = line.split()
        if len(parts) != 2 or parts[1] not in "+-":
            raise FormatError(f"line {no}: expected 'TARGET +|-', got {line!r}")
        targets.append(_int(no, parts[0]))
        signs.append(1 if parts[1] == "+" else -1)
    dom = PerfectDiagram(_leaf_block(sec["dom"]))
    ran = PerfectDiagram(_leaf_block(sec["ran"]))
    return GeneralElement(dom, ran, targets, signs)


def emit_general(g) -> str:
    body = "".join(f"{t} {'+' if s == 1 else '-'}\n" for t, s in zip(g.targets, g.signs))
    return f"[dom]\n{emit_diagram(g.dom.leaves)}[ran]\n{emit_diagram(g.ran.leaves)}[intervals]\n{body}"


def parse_germ(text: str) -> PartialAutomorphism:
    edges: dict[Leaf, Leaf] = {}
    signs: dict[VertexId, int] | None = None
    hint: dict[VertexId, VertexId] = {}
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "sign":
            if len(parts) != 3 or parts[2] not in ("+", "-"):
                raise FormatError(f"line {no}: expected 'sign VERTEX +|-'")
            signs = signs or {}
            signs[_vertex(no, parts[1])] = 1 if parts[2] == "+" else -1
        elif parts[0] == "vertex":
            if len(parts) != 4 or parts[2] != "->":
                raise FormatError(f"line {no}: expected 'vertex V -> W'")
            hint[_vertex(no, parts[1])] = _vertex(no, parts[3])
        elif len(parts) == 3 and parts[1] == "->":
            src = _leaf(no, parts[0])
            if src in edges:
                raise FormatError(f"line {no}: {src} mapped twice")
            edges[src] = _leaf(no, parts[2])
        else:
            raise FormatError(f"line {no}: unrecognized line {line!r}")
    if not edges:
        raise FormatError("germ has no edges")
    return from_edges(edges, signs, hint)


def emit_germ(pa: PartialAutomorphism) -> str:
    out = [f"{e} -> {pa.edges[e]}\n" for e in sorted(pa.edges, key=leaf_order)]
    if len(pa.edges) == 1:
        # one edge does not fix which end goes where
        v = min(pa.vertices, key=vertex_order)
        out.append(f"vertex {v} -> {pa.vertices[v]}\n")
    if pa.signs is not None:
        out.extend(f"sign {v} {'+' if pa.signs[v] == 1 else '-'}\n" for v in sorted(pa.signs, key=vertex_order))
    return "".join(out)


def read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


__all__ = [
    "FormatError",
    "parse_diagram",
    "emit_diagram",
    "parse_element",
    "emit_element",
    "parse_general",
    "emit_general",
    "parse_germ",
    "emit_germ",
    "leaf_order",
    "vertex_order",
    "read",
    "write",
]
