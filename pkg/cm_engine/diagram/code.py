from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from cm_engine.core.errors import ValidationError
from cm_engine.graph.abstract import AbstractGraph


class Role(str, Enum):
    OVER = "o"
    UNDER = "u"

    @property
    def swapped(self) -> Role:
        return Role.UNDER if self is Role.OVER else Role.OVER


@dataclass(frozen=True)
class Cross:
    """One passage of an edge through a crossing."""

    crossing: int
    role: Role
    sign: int

    def __str__(self) -> str:
        return f"X{self.crossing}{self.role.value}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class EdgeEnd:
    """An edge end at a vertex; outgoing ends sit at the edge's tail."""

    edge: int
    outgoing: bool

    @property
    def exponent(self) -> int:
        return 1 if self.outgoing else -1

    def __str__(self) -> str:
        return f"{'+' if self.outgoing else '-'}{self.edge}"


@dataclass(frozen=True)
class Passage:
    """Where a crossing passage sits: edge id and index in its event list."""

    edge: int
    position: int


@dataclass(frozen=True, order=True)
class Arc:
    """Arc k of an edge; arcs break only at undercrossings."""

    edge: int
    ordinal: int


@dataclass(frozen=True)
class EmbeddingCode:
    """
    Gauss-style code of a spatial graph diagram.

    `passages` lists, per edge id, the crossing events met from tail to head;
    `rotations` lists, per vertex, the incident edge ends counterclockwise.
    Sign +1 means the understrand passes from right to left when looking
    along the overstrand. Planarity of the code is not checked.
    """

    graph: AbstractGraph
    passages: tuple[tuple[int, tuple[Cross, ...]], ...]
    rotations: tuple[tuple[int, tuple[EdgeEnd, ...]], ...]

    @classmethod
    def build(
        cls,
        graph: AbstractGraph,
        passages: Mapping[int, Iterable[Cross]],
        rotations: Mapping[int, Iterable[EdgeEnd]],
    ) -> EmbeddingCode:
        code = cls(
            graph,
            tuple((e.id, tuple(passages.get(e.id, ()))) for e in graph.edges),
            tuple((v, tuple(rotations.get(v, ()))) for v in graph.vertices),
        )
        unknown_edges = set(passages) - set(graph.edge_map)
        if unknown_edges:
            raise ValidationError(f"passages given for unknown edge {min(unknown_edges)}")
        unknown_vertices = set(rotations) - set(graph.vertices)
        if unknown_vertices:
            raise ValidationError(f"rotation given for unknown vertex {min(unknown_vertices)}")
        code.validate()
        return code

    def validate(self) -> None:
        seen: dict[int, list[Cross]] = defaultdict(list)
        for edge_id, events in self.passages:
            for ev in events:
                if ev.sign not in (1, -1):
                    raise ValidationError(f"crossing {ev.crossing} has sign {ev.sign}, expected ±1")
                seen[ev.crossing].append(ev)
        for cid, evs in sorted(seen.items()):
            if len(evs) != 2:
                raise ValidationError(f"crossing {cid} seen {len(evs)} time(s), expected exactly twice")
            roles = sorted(ev.role.value for ev in evs)
            if roles != ["o", "u"]:
                raise ValidationError(f"crossing {cid} needs one over and one under passage")
            if evs[0].sign != evs[1].sign:
                raise ValidationError(f"crossing {cid} carries different signs on its two passages")

        for v, ends in self.rotations:
            expected = Counter()
            for e in self.graph.incidence[v]:
                if e.tail == v:
                    expected[EdgeEnd(e.id, True)] += 1
                if e.head == v:
                    expected[EdgeEnd(e.id, False)] += 1
            given = Counter(ends)
            if given != expected:
                missing = sorted(str(x) for x in expected - given)
                extra = sorted(str(x) for x in given - expected)
                detail = []
                if missing:
                    detail.append("missing " + " ".join(missing))
                if extra:
                    detail.append("unexpected " + " ".join(extra))
                raise ValidationError(
                    f"rotation at vertex {v} must list each incident edge end once ({'; '.join(detail)})"
                )

    @cached_property
    def passage_map(self) -> dict[int, tuple[Cross, ...]]:
        return dict(self.passages)

    @cached_property
    def rotation_map(self) -> dict[int, tuple[EdgeEnd, ...]]:
        return dict(self.rotations)

    @cached_property
    def crossing_index(self) -> dict[int, dict[Role, Passage]]:
        index: dict[int, dict[Role, Passage]] = defaultdict(dict)
        for edge_id, events in self.passages:
            for pos, ev in enumerate(events):
                index[ev.crossing][ev.role] = Passage(edge_id, pos)
        return dict(index)

    @property
    def crossings(self) -> tuple[int, ...]:
        return tuple(sorted(self.crossing_index))

    @property
    def colors(self) -> tuple[int, ...]:
        return self.graph.colors

    def events(self, edge_id: int) -> tuple[Cross, ...]:
        return self.passage_map[edge_id]

    def event_at(self, passage: Passage) -> Cross:
        return self.passage_map[passage.edge][passage.position]

    def crossing_sign(self, cid: int) -> int:
        return self.event_at(self.crossing_index[cid][Role.OVER]).sign

    def crossing_colors(self, cid: int) -> tuple[int, int]:
        """(over color, under color) of a crossing."""
        over = self.crossing_index[cid][Role.OVER]
        under = self.crossing_index[cid][Role.UNDER]
        return self.graph.edge(over.edge).color, self.graph.edge(under.edge).color

    def is_self_crossing(self, cid: int) -> bool:
        over, under = self.crossing_colors(cid)
        return over == under

    def arc_count(self, edge_id: int) -> int:
        return 1 + sum(1 for ev in self.events(edge_id) if ev.role is Role.UNDER)

    def arc_at(self, passage: Passage) -> Arc:
        """The arc carrying an event; an undercrossing belongs to the arc it ends."""
        events = self.events(passage.edge)
        before = sum(1 for ev in events[: passage.position] if ev.role is Role.UNDER)
        return Arc(passage.edge, before + 1)

    def overstrand(self, cid: int) -> Arc:
        return self.arc_at(self.crossing_index[cid][Role.OVER])

    def arcs(self, edge_id: int) -> list[Arc]:
        return [Arc(edge_id, k) for k in range(1, self.arc_count(edge_id) + 1)]


def arcs(code: EmbeddingCode, edge_id: int) -> list[Arc]:
    return code.arcs(edge_id)
