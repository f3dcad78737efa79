from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable

from cm_engine.core.errors import IllegalMove, ValidationError
from cm_engine.diagram.code import Cross, EdgeEnd, EmbeddingCode
from cm_engine.graph.abstract import AbstractGraph, Edge
from cm_engine.graph.cycles import CycleSelection

logger = logging.getLogger(__name__)


def crossing_change(code: EmbeddingCode, crossing: int) -> EmbeddingCode:
    """Swap over and under at one self-crossing of a component; the sign flips."""
    if crossing not in code.crossing_index:
        raise ValidationError(f"unknown crossing {crossing}")
    over, under = code.crossing_colors(crossing)
    if over != under:
        raise IllegalMove(
            f"crossing {crossing} joins components {over} and {under}; "
            "only crossings within one component may change"
        )

    passages = {}
    for edge_id, events in code.passages:
        passages[edge_id] = tuple(
            Cross(ev.crossing, ev.role.swapped, -ev.sign) if ev.crossing == crossing else ev
            for ev in events
        )
    return EmbeddingCode.build(code.graph, passages, code.rotation_map)


def _reversed_events(events: tuple[Cross, ...]) -> tuple[Cross, ...]:
    return tuple(reversed(events))


def _flip_signs(passages: dict[int, tuple[Cross, ...]], flips: Counter) -> dict[int, tuple[Cross, ...]]:
    """Negate every crossing passed an odd number of times against its old orientation."""
    odd = {cid for cid, n in flips.items() if n % 2}
    if not odd:
        return passages
    return {
        edge_id: tuple(
            Cross(ev.crossing, ev.role, -ev.sign) if ev.crossing in odd else ev for ev in events
        )
        for edge_id, events in passages.items()
    }


def reverse_edges(code: EmbeddingCode, edge_ids: Iterable[int]) -> EmbeddingCode:
    """
    Flip the orientation of some edges. Event lists are reversed, roles are
    kept, and a crossing changes sign once per reversed passage through it.
    """
    flip = set(edge_ids)
    for edge_id in flip:
        code.graph.edge(edge_id)

    edges = []
    passages = {}
    flips: Counter = Counter()
    for e in code.graph.edges:
        events = code.events(e.id)
        if e.id in flip:
            edges.append(Edge(e.id, e.head, e.tail, e.color))
            passages[e.id] = _reversed_events(events)
            flips.update(ev.crossing for ev in events)
        else:
            edges.append(e)
            passages[e.id] = events

    rotations = {
        v: tuple(EdgeEnd(x.edge, not x.outgoing) if x.edge in flip else x for x in ends)
        for v, ends in code.rotations
    }
    graph = AbstractGraph.build(code.graph.vertices, edges)
    return EmbeddingCode.build(graph, _flip_signs(passages, flips), rotations)


def _keep_crossings(passages: dict[int, tuple[Cross, ...]]) -> dict[int, tuple[Cross, ...]]:
    """Drop crossings that lost one of their two passages."""
    count = Counter(ev.crossing for events in passages.values() for ev in events)
    return {
        edge_id: tuple(ev for ev in events if count[ev.crossing] == 2)
        for edge_id, events in passages.items()
    }


def extract_sublink(code: EmbeddingCode, sel: CycleSelection) -> EmbeddingCode:
    """
    The link formed by the selected cycles. Each cycle becomes one circle:
    a single vertex (the cycle's start) carrying a loop edge named after the
    cycle's smallest edge id, whose events are the cycle's events in walk
    order. Colors are kept.
    """
    g = code.graph
    edges = []
    passages = {}
    rotations = {}
    flips: Counter = Counter()

    for cycle in sel.cycles:
        for step in cycle.steps:
            if g.edge(step.edge).color != cycle.color:
                raise ValidationError(f"edge {step.edge} is not in component {cycle.color}")

        loop_id = min(cycle.edges)
        events: list[Cross] = []
        for step in cycle.steps:
            forward = code.events(step.edge)
            if step.forward:
                events.extend(forward)
            else:
                events.extend(_reversed_events(forward))
                flips.update(ev.crossing for ev in forward)

        v = cycle.start
        edges.append(Edge(loop_id, v, v, cycle.color))
        passages[loop_id] = tuple(events)
        old = code.rotation_map.get(v, ())
        if len(cycle.steps) == 1 and len(old) == 2 and cycle.steps[0].forward:
            rotations[v] = old
        else:
            rotations[v] = (EdgeEnd(loop_id, True), EdgeEnd(loop_id, False))

    passages = _keep_crossings(passages)
    graph = AbstractGraph.build(rotations, edges)
    sub = EmbeddingCode.build(graph, _flip_signs(passages, flips), rotations)
    logger.debug(
        "extracted %s: %d of %d crossings kept", sel.describe(), len(sub.crossings), len(code.crossings)
    )
    return sub


def delete_component(code: EmbeddingCode, color: int) -> EmbeddingCode:
    """Remove one component and every crossing it touches; colors renumber to 1..n-1."""
    if color not in code.colors:
        raise ValidationError(f"unknown component {color}")

    remaining = sorted(c for c in code.colors if c != color)
    renumber = {old: new for new, old in enumerate(remaining, start=1)}

    edges = [
        Edge(e.id, e.tail, e.head, renumber[e.color]) for e in code.graph.edges if e.color != color
    ]
    kept = {e.id for e in edges}
    vertices = {v for e in edges for v in (e.tail, e.head)}
    passages = _keep_crossings({edge_id: code.events(edge_id) for edge_id in sorted(kept)})
    rotations = {v: ends for v, ends in code.rotations if v in vertices}

    graph = AbstractGraph.build(vertices, edges)
    return EmbeddingCode.build(graph, passages, rotations)


def legal_moves(code: EmbeddingCode) -> list[int]:
    """Crossings whose two passages belong to the same component."""
    return [cid for cid in code.crossings if code.is_self_crossing(cid)]


def is_link(code: EmbeddingCode) -> bool:
    """Every component is a single circle: one cycle and only degree-2 vertices."""
    g = code.graph
    if any(g.degree(v) != 2 for v in g.vertices):
        return False
    return all(len(g.edges_of(c)) == len(g.vertices_of(c)) for c in g.colors)

