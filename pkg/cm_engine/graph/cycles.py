from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass

from cm_engine.core.config import CYCLE_CAP
from cm_engine.core.errors import CapExceeded, ValidationError
from cm_engine.graph.abstract import AbstractGraph, Step, Walk

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cycle:
    """
    A simple cycle of one component in canonical form: it starts at its
    smallest vertex and runs in the direction whose edge sequence is
    lexicographically smaller.
    """

    color: int
    vertices: tuple[int, ...]
    steps: Walk

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(s.edge for s in self.steps)

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.color, self.edges)


@dataclass(frozen=True)
class CycleSelection:
    """At most one cycle per color; the abstract shadow of a constituent link."""

    cycles: tuple[Cycle, ...]

    def __post_init__(self) -> None:
        colors = [c.color for c in self.cycles]
        if len(colors) != len(set(colors)):
            raise ValidationError("a selection holds at most one cycle per component")
        if list(colors) != sorted(colors):
            object.__setattr__(self, "cycles", tuple(sorted(self.cycles, key=lambda c: c.color)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(c.color for c in self.cycles)

    @property
    def key(self) -> tuple:
        return tuple(c.key for c in self.cycles)

    def cycle(self, color: int) -> Cycle:
        for c in self.cycles:
            if c.color == color:
                return c
        raise KeyError(color)

    def describe(self) -> str:
        return " ".join(
            f"{c.color}:(" + ",".join(str(e) for e in c.edges) + ")" for c in self.cycles
        )


def _orient(g: AbstractGraph, start: int, edge_ids: list[int]) -> tuple[tuple[int, ...], Walk]:
    v = start
    vertices = [v]
    steps = []
    for edge_id in edge_ids:
        e = g.edge(edge_id)
        forward = e.tail == v
        v = e.head if forward else e.tail
        steps.append(Step(edge_id, forward))
        vertices.append(v)
    return tuple(vertices[:-1]), tuple(steps)


def _walk_cycles(g: AbstractGraph, color: int) -> Iterator[Cycle]:
    for v in g.vertices_of(color):
        for e in g.incidence[v]:
            if e.is_loop:
                yield Cycle(color, (v,), (Step(e.id, True),))

    # Depth-first search from each start vertex s through vertices > s only;
    # every cycle of length >= 2 is met twice (once per direction) and kept
    # when its first edge id is smaller than its last.
    for s in g.vertices_of(color):
        path_edges: list[int] = []
        on_path = {s}
        stack = [(s, iter(g.incidence[s]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                if e.is_loop or e.id in path_edges:
                    continue
                w = e.other_end(v)
                if w == s and path_edges:
                    if path_edges[0] < e.id:
                        vertices, steps = _orient(g, s, path_edges + [e.id])
                        yield Cycle(color, vertices, steps)
                    continue
                if w <= s or w in on_path:
                    continue
                path_edges.append(e.id)
                on_path.add(w)
                stack.append((w, iter(g.incidence[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path_edges and stack:
                    on_path.discard(v)
                    path_edges.pop()


def simple_cycles(g: AbstractGraph, color: int, cap: int | None = None) -> list[Cycle]:
    """Every simple cycle of one component, canonical and sorted by edge sequence."""
    cap = CYCLE_CAP if cap is None else cap
    found = []
    for cycle in _walk_cycles(g, color):
        found.append(cycle)
        if len(found) > cap:
            raise CapExceeded(f"component {color} has more than {cap} simple cycles")
    found.sort(key=lambda c: (len(c.steps), c.edges))
    logger.debug("component %d: %d simple cycles", color, len(found))
    return found


def constituent_selections(
    g: AbstractGraph,
    required: int | None = None,
    cap: int | None = None,
) -> list[CycleSelection]:
    """
    All choices of at most one simple cycle per component, with at least one
    cycle overall. With `required`, only selections holding a cycle of that
    color are returned.
    """
    cap = CYCLE_CAP if cap is None else cap
    if required is not None and required not in g.colors:
        raise ValidationError(f"unknown component {required}")

    options = []
    for color in g.colors:
        cycles = simple_cycles(g, color, cap)
        if color == required:
            options.append(cycles)
        else:
            options.append([None] + cycles)

    selections = []
    for combo in itertools.product(*options):
        chosen = tuple(c for c in combo if c is not None)
        if not chosen:
            continue
        selections.append(CycleSelection(chosen))
        if len(selections) > cap:
            raise CapExceeded(f"more than {cap} constituent selections")
    selections.sort(key=lambda s: s.key)
    return selections
