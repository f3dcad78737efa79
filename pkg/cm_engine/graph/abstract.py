from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from cm_engine.core.errors import EdgeInTree, ValidationError


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    tail: int
    head: int
    color: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def other_end(self, vertex: int) -> int:
        if vertex == self.tail:
            return self.head
        if vertex == self.head:
            return self.tail
        raise ValueError(f"vertex {vertex} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Step:
    """One edge of a walk; forward follows the edge orientation tail -> head."""

    edge: int
    forward: bool = True

    @property
    def reversed(self) -> Step:
        return Step(self.edge, not self.forward)


Walk = tuple[Step, ...]


@dataclass(frozen=True)
class AbstractGraph:
    """
    A finite multigraph with one color per connected component.

    Loops and parallel edges are allowed. Colors are positive integers that
    are constant on each connected component and distinct between them.
    Parsed inputs number them 1..n by smallest vertex id; sublinks keep a
    subset of those labels.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[Edge]) -> AbstractGraph:
        graph = cls(tuple(sorted(set(vertices))), tuple(sorted(edges, key=lambda e: e.id)))
        graph.validate()
        return graph

    def validate(self) -> None:
        ids = [e.id for e in self.edges]
        if len(ids) != len(set(ids)):
            raise ValidationError("edge ids must be unique")
        known = set(self.vertices)
        for e in self.edges:
            for v in (e.tail, e.head):
                if v not in known:
                    raise ValidationError(f"edge {e.id} refers to unknown vertex {v}")
            if e.color < 1:
                raise ValidationError(f"edge {e.id} has invalid component label {e.color}")
        touched = {v for e in self.edges for v in (e.tail, e.head)}
        isolated = sorted(known - touched)
        if isolated:
            raise ValidationError(f"vertex {isolated[0]} is isolated and carries no component label")

        seen: dict[int, int] = {}
        for part in nx.connected_components(self.to_networkx()):
            labels = {self.vertex_color[v] for v in part}
            if len(labels) != 1:
                raise ValidationError(
                    f"component labels {sorted(labels)} share one connected component"
                )
            label = labels.pop()
            if label in seen:
                raise ValidationError(
                    f"component label {label} is used by two connected components"
                )
            seen[label] = min(part)

    @cached_property
    def edge_map(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_color(self) -> dict[int, int]:
        colors: dict[int, int] = {}
        for e in self.edges:
            for v in (e.tail, e.head):
                if colors.setdefault(v, e.color) != e.color:
                    raise ValidationError(
                        f"vertex {v} touches edges of components {colors[v]} and {e.color}"
                    )
        return colors

    @cached_property
    def incidence(self) -> dict[int, tuple[Edge, ...]]:
        """Edges at each vertex in id order; a loop is listed once."""
        out: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
            if not e.is_loop:
                out[e.head].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def colors(self) -> tuple[int, ...]:
        """Colors ordered by the smallest vertex id of their component."""
        first: dict[int, int] = {}
        for v in self.vertices:
            first.setdefault(self.vertex_color[v], v)
        return tuple(sorted(first, key=first.__getitem__))

    def require_canonical_colors(self) -> None:
        """Input graphs number their components 1..n by smallest vertex id."""
        for expected, color in enumerate(self.colors, start=1):
            if color != expected:
                first = self.vertices_of(color)[0]
                raise ValidationError(
                    f"component containing vertex {first} is labelled {color}; expected {expected} "
                    "(components are numbered 1..n by smallest vertex id)"
                )

    def edge(self, edge_id: int) -> Edge:
        try:
            return self.edge_map[edge_id]
        except KeyError:
            raise ValidationError(f"unknown edge {edge_id}") from None

    def degree(self, vertex: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incidence[vertex])

    def edges_of(self, color: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.color == color)

    def vertices_of(self, color: int) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self.vertex_color[v] == color)

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.tail, e.head, key=e.id, color=e.color)
        return g

    def subgraph(self, edge_ids: Iterable[int]) -> AbstractGraph:
        keep = [self.edge_map[i] for i in sorted(set(edge_ids))]
        vertices = {v for e in keep for v in (e.tail, e.head)}
        return AbstractGraph(tuple(sorted(vertices)), tuple(keep))


def components(g: AbstractGraph) -> dict[int, AbstractGraph]:
    """Split g into its colored components, ordered by smallest vertex id."""
    return {color: g.subgraph(e.id for e in g.edges_of(color)) for color in g.colors}


def betti_number(g: AbstractGraph, color: int) -> int:
    return len(g.edges_of(color)) - len(g.vertices_of(color)) + 1


@dataclass(frozen=True)
class ComponentTree:
    color: int
    root: int
    order: tuple[int, ...]
    parent: Mapping[int, tuple[int, int]]
    depth: Mapping[int, int]
    tree_edges: frozenset[int]
    generators: tuple[int, ...]


@dataclass(frozen=True)
class SpanningForest:
    trees: Mapping[int, ComponentTree]

    def tree(self, color: int) -> ComponentTree:
        try:
            return self.trees[color]
        except KeyError:
            raise ValidationError(f"unknown component {color}") from None

    @property
    def tree_edges(self) -> frozenset[int]:
        return frozenset().union(*(t.tree_edges for t in self.trees.values()))

    def generator_index(self) -> dict[int, tuple[int, int]]:
        """Map non-tree edge id -> (color, j), j counting from 1 in id order."""
        return {
            edge_id: (color, j)
            for color, t in self.trees.items()
            for j, edge_id in enumerate(t.generators, start=1)
        }


def _bfs_tree(g: AbstractGraph, color: int) -> ComponentTree:
    root = g.vertices_of(color)[0]
    parent: dict[int, tuple[int, int]] = {}
    depth = {root: 0}
    order = [root]
    tree: set[int] = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in g.incidence[v]:
            w = e.other_end(v)
            if w in depth:
                continue
            depth[w] = depth[v] + 1
            parent[w] = (v, e.id)
            tree.add(e.id)
            order.append(w)
            queue.append(w)
    generators = tuple(e.id for e in g.edges_of(color) if e.id not in tree)
    return ComponentTree(
        color=color,
        root=root,
        order=tuple(order),
        parent=parent,
        depth=depth,
        tree_edges=frozenset(tree),
        generators=generators,
    )


def spanning_forest(g: AbstractGraph) -> SpanningForest:
    return SpanningForest({color: _bfs_tree(g, color) for color in g.colors})


def spanning_tree(g: AbstractGraph, color: int) -> frozenset[int]:
    """Breadth-first tree from the smallest vertex, scanning edges in id order."""
    return _bfs_tree(g, color).tree_edges


def _climb(g: AbstractGraph, tree: ComponentTree, start: int, stop: int) -> list[Step]:
    steps = []
    v = start
    while v != stop:
        up, edge_id = tree.parent[v]
        steps.append(Step(edge_id, g.edge(edge_id).tail == v))
        v = up
    return steps


def tree_path(g: AbstractGraph, color: int, edge_id: int, forest: SpanningForest | None = None) -> Walk:
    """The tree walk from the head of a non-tree edge back to its tail."""
    tree = (forest or spanning_forest(g)).tree(color)
    edge = g.edge(edge_id)
    if edge.color != color:
        raise ValidationError(f"edge {edge_id} is not in component {color}")
    if edge_id in tree.tree_edges:
        raise EdgeInTree(f"edge {edge_id} belongs to the spanning tree")
    if edge.is_loop:
        return ()

    a, b = edge.head, edge.tail
    while tree.depth[a] > tree.depth[b]:
        a = tree.parent[a][0]
    while tree.depth[b] > tree.depth[a]:
        b = tree.parent[b][0]
    while a != b:
        a, b = tree.parent[a][0], tree.parent[b][0]
    meet = a

    up = _climb(g, tree, edge.head, meet)
    down = [s.reversed for s in reversed(_climb(g, tree, edge.tail, meet))]
    return tuple(up + down)


def generator_loop(g: AbstractGraph, edge_id: int, forest: SpanningForest | None = None) -> Walk:
    """The closed walk x_ij ∪ p_ij: the edge forward, then the tree path home."""
    edge = g.edge(edge_id)
    return (Step(edge_id, True),) + tree_path(g, edge.color, edge_id, forest)


def walk_vertices(g: AbstractGraph, walk: Walk, start: int | None = None) -> list[int]:
    """Vertices visited by a walk; raises ValueError when steps do not connect."""
    if not walk:
        return [] if start is None else [start]
    first = g.edge(walk[0].edge)
    v = first.tail if walk[0].forward else first.head
    if start is not None and start != v:
        raise ValueError(f"walk starts at {v}, expected {start}")
    visited = [v]
    for step in walk:
        e = g.edge(step.edge)
        src, dst = (e.tail, e.head) if step.forward else (e.head, e.tail)
        if src != v:
            raise ValueError(f"step along edge {e.id} does not leave vertex {v}")
        v = dst
        visited.append(v)
    return visited
