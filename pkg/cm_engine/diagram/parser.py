"""
Text codec for diagram codes.

One document describes one spatial graph, one declaration per line:

    vertex <vid> rotation <end> <end> ...
    edge <eid> component <i> from <vid> to <vid> passes <event> <event> ...

An end is `+<eid>` (the edge leaves the vertex) or `-<eid>` (it arrives),
listed counterclockwise. An event is `X<cid><o|u><+|->`. `#` starts a
comment. `serialize` writes the canonical form: vertices by id, then edges
by id, single spaces, no comments.
"""

from __future__ import annotations

import pyparsing as pp

from cm_engine.core.errors import CodeSyntaxError, ValidationError
from cm_engine.diagram.code import Cross, EdgeEnd, EmbeddingCode, Role
from cm_engine.graph.abstract import AbstractGraph, Edge


def _grammar() -> pp.ParserElement:
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    end = pp.Regex(r"[+-]\d+").set_parse_action(
        lambda t: EdgeEnd(int(t[0][1:]), t[0][0] == "+")
    )
    event = pp.Regex(r"X(?P<cid>\d+)(?P<role>[ou])(?P<sign>[+-])").set_parse_action(
        lambda t: Cross(int(t["cid"]), Role(t["role"]), 1 if t["sign"] == "+" else -1)
    )

    vertex = (
        pp.Keyword("vertex").set_results_name("kind")
        + integer("vid")
        + pp.Keyword("rotation")
        + pp.Group(pp.OneOrMore(end))("ends")
    )
    edge = (
        pp.Keyword("edge").set_results_name("kind")
        + integer("eid")
        + pp.Keyword("component")
        + integer("color")
        + pp.Keyword("from")
        + integer("tail")
        + pp.Keyword("to")
        + integer("head")
        + pp.Keyword("passes")
        + pp.Group(pp.ZeroOrMore(event))("events")
    )
    line = vertex | edge
    line.ignore(pp.python_style_comment)
    return line


_LINE = _grammar()


def parse(text: str, source: str | None = None) -> EmbeddingCode:
    vertices: dict[int, tuple[EdgeEnd, ...]] = {}
    edges: dict[int, Edge] = {}
    passages: dict[int, tuple[Cross, ...]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.split("#", 1)[0].strip():
            continue
        try:
            parsed = _LINE.parse_string(raw, parse_all=True)
        except pp.ParseException as exc:
            raise CodeSyntaxError(exc.msg, line=lineno, column=exc.col, source=source) from None

        if parsed.kind == "vertex":
            if parsed.vid in vertices:
                raise ValidationError(f"line {lineno}: vertex {parsed.vid} declared twice")
            vertices[parsed.vid] = tuple(parsed.ends)
        else:
            if parsed.eid in edges:
                raise ValidationError(f"line {lineno}: edge {parsed.eid} declared twice")
            edges[parsed.eid] = Edge(parsed.eid, parsed.tail, parsed.head, parsed.color)
            passages[parsed.eid] = tuple(parsed.events)

    graph = AbstractGraph.build(vertices, edges.values())
    graph.require_canonical_colors()
    return EmbeddingCode.build(graph, passages, vertices)


def serialize(code: EmbeddingCode) -> str:
    lines = []
    for v, ends in code.rotations:
        lines.append(f"vertex {v} rotation " + " ".join(str(x) for x in ends))
    for e in code.graph.edges:
        head = f"edge {e.id} component {e.color} from {e.tail} to {e.head} passes"
        events = code.events(e.id)
        lines.append(head + "".join(f" {ev}" for ev in events))
    return "\n".join(lines) + ("\n" if lines else "")
