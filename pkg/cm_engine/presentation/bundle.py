"""
Series-level presentation of the component-homotopy group of a diagram.

Every arc gets a meridian series in the non-tree-edge generators. Crossing
relations conjugate the arc entering an undercrossing by the overstrand's
meridian; vertex relations say the product of the meridians of all edge
ends at a vertex, taken in rotation order, is trivial. Non-tree edges start
at their generator, tree edges are solved from vertex relations, leaves
first. Each sweep fixes one more degree, so D + 1 sweeps settle everything
below the truncation and a final sweep must change nothing.

Conventions: words read left to right, a^g = g^-1 a g, [a, b] = a^-1 b^-1 a b.
An undercrossing of sign e under overstrand arc o maps the meridian m of
the incoming arc to (o^e)^-1 m o^e, and contributes o^e to the longitude of
any walk passing it forwards.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, replace
from functools import reduce

from cm_engine.core.errors import BadWalk, NonConvergence, ValidationError
from cm_engine.diagram.code import Arc, Cross, EdgeEnd, EmbeddingCode, Role
from cm_engine.graph.abstract import SpanningForest, Walk, generator_loop, spanning_forest, walk_vertices
from cm_engine.ring.series import MagnusSeries, Variable, commutator_series, conjugate_series, inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PresentationBundle:
    code: EmbeddingCode
    degree: int
    forest: SpanningForest
    generators: tuple[Variable, ...]
    generator_edges: Mapping[Variable, int]
    arc_meridians: Mapping[Arc, MagnusSeries]
    longitudes: Mapping[Variable, MagnusSeries]
    surface_elements: Mapping[int, MagnusSeries]

    @property
    def colors(self) -> tuple[int, ...]:
        return self.code.colors

    @property
    def approximate(self) -> bool:
        """True when the degree bound was forced below the number of colors."""
        return self.degree < len(self.colors)

    def base(self, edge_id: int) -> MagnusSeries:
        return self.arc_meridians[Arc(edge_id, 1)]

    def meridian(self, var: Variable) -> MagnusSeries:
        return self.base(self.generator_edges[var])

    def generators_of(self, color: int) -> tuple[Variable, ...]:
        return tuple(v for v in self.generators if v.color == color)


def _ordered_ends(code: EmbeddingCode, vertex: int) -> tuple[EdgeEnd, ...]:
    """Rotation at a vertex, rotated to start at the smallest edge id."""
    ends = code.rotation_map[vertex]
    if not ends:
        return ends
    first = min(range(len(ends)), key=lambda k: (ends[k].edge, k))
    return ends[first:] + ends[:first]


def _product(series: list[MagnusSeries], degree: int) -> MagnusSeries:
    return reduce(lambda a, b: a * b, series, MagnusSeries.one(degree))


class _Resolver:
    def __init__(self, code: EmbeddingCode, forest: SpanningForest, variables: dict[int, Variable], degree: int):
        self.code = code
        self.forest = forest
        self.variables = variables
        self.degree = degree
        one = MagnusSeries.one(degree)
        self.base: dict[int, MagnusSeries] = {
            e.id: MagnusSeries.generator(variables[e.id], degree) if e.id in variables else one
            for e in code.graph.edges
        }
        self.arcs: dict[int, list[MagnusSeries]] = {
            e.id: [self.base[e.id]] * code.arc_count(e.id) for e in code.graph.edges
        }

    def under_factor(self, ev: Cross) -> MagnusSeries:
        over = self.code.overstrand(ev.crossing)
        o = self.arcs[over.edge][over.ordinal - 1]
        return o if ev.sign > 0 else inverse(o)

    def edge_word(self, edge_id: int) -> MagnusSeries:
        factors = [self.under_factor(ev) for ev in self.code.events(edge_id) if ev.role is Role.UNDER]
        return _product(factors, self.degree)

    def propagate(self, edge_id: int) -> None:
        cur = self.base[edge_id]
        series = [cur]
        for ev in self.code.events(edge_id):
            if ev.role is Role.UNDER:
                f = self.under_factor(ev)
                cur = conjugate_series(cur, f)
                series.append(cur)
        self.arcs[edge_id] = series

    def end_factor(self, end: EdgeEnd) -> MagnusSeries:
        arcs = self.arcs[end.edge]
        return arcs[0] if end.outgoing else inverse(arcs[-1])

    def solve(self, vertex: int, parent_edge: int) -> None:
        """Write the relation at `vertex` as A P^s B = 1 and solve for the parent edge's base."""
        ends = _ordered_ends(self.code, vertex)
        k = next(i for i, x in enumerate(ends) if x.edge == parent_edge)
        a = _product([self.end_factor(x) for x in ends[:k]], self.degree)
        b = _product([self.end_factor(x) for x in ends[k + 1:]], self.degree)
        end = ends[k]
        p = inverse(a) * inverse(b) if end.exponent > 0 else b * a
        if end.outgoing:
            self.base[parent_edge] = p
        else:
            w = self.edge_word(parent_edge)
            self.base[parent_edge] = w * p * inverse(w)
        self.propagate(parent_edge)

    def sweep(self) -> None:
        for e in self.code.graph.edges:
            self.propagate(e.id)
        for tree in self.forest.trees.values():
            for v in reversed(tree.order[1:]):
                self.solve(v, tree.parent[v][1])

    def snapshot(self) -> dict[int, tuple[MagnusSeries, ...]]:
        return {e: tuple(s) for e, s in self.arcs.items()}

    def run(self) -> dict[Arc, MagnusSeries]:
        for _ in range(self.degree + 1):
            self.sweep()
        settled = self.snapshot()
        self.sweep()
        if self.snapshot() != settled:
            moved = sorted(e for e in settled if settled[e] != tuple(self.arcs[e]))
            raise NonConvergence(f"meridians of edges {moved} still change after {self.degree + 1} sweeps")
        logger.debug("meridians settled after %d sweeps at degree %d", self.degree + 1, self.degree)
        return {
            Arc(edge_id, k): s
            for edge_id, series in self.arcs.items()
            for k, s in enumerate(series, start=1)
        }


def _walk_series(
    code: EmbeddingCode, arc_meridians: Mapping[Arc, MagnusSeries], walk: Walk, degree: int
) -> MagnusSeries:
    if not walk:
        raise BadWalk("empty walk")
    try:
        visited = walk_vertices(code.graph, walk)
    except (ValueError, ValidationError) as exc:
        raise BadWalk(str(exc)) from None
    if visited[0] != visited[-1]:
        raise BadWalk(f"walk starts at {visited[0]} but ends at {visited[-1]}")

    factors = []
    for step in walk:
        crossed = []
        for ev in code.events(step.edge):
            if ev.role is not Role.UNDER:
                continue
            o = arc_meridians[code.overstrand(ev.crossing)]
            crossed.append(o if ev.sign > 0 else inverse(o))
        if step.forward:
            factors.extend(crossed)
        else:
            factors.extend(inverse(f) for f in reversed(crossed))
    return _product(factors, degree)


def walk_longitude(bundle: PresentationBundle, code: EmbeddingCode, walk: Walk) -> MagnusSeries:
    """
    The longitude of a closed walk: overstrand meridians of every
    undercrossing along the walk, in order, raised to the crossing sign.
    No framing correction; it would only add monomials of the walk's own
    color, which nothing downstream reads.
    """
    return _walk_series(code, bundle.arc_meridians, walk, bundle.degree)


def surface_elements(bundle: PresentationBundle) -> dict[int, MagnusSeries]:
    """r_i = prod_j [m_ij, l_ij] over the generators of color i, in index order."""
    out = {}
    for color in bundle.colors:
        factors = [
            commutator_series(bundle.meridian(var), bundle.longitudes[var])
            for var in bundle.generators_of(color)
        ]
        out[color] = _product(factors, bundle.degree)
    return out


def root_relations(bundle: PresentationBundle) -> dict[int, MagnusSeries]:
    """The vertex relation at each tree root, evaluated on the resolved meridians."""
    code = bundle.code
    out = {}
    for color in bundle.colors:
        root = bundle.forest.tree(color).root
        factors = []
        for end in _ordered_ends(code, root):
            if end.outgoing:
                factors.append(bundle.base(end.edge))
            else:
                last = Arc(end.edge, code.arc_count(end.edge))
                factors.append(inverse(bundle.arc_meridians[last]))
        out[color] = _product(factors, bundle.degree)
    return out


def resolve_meridians(code: EmbeddingCode, max_degree: int | None = None) -> PresentationBundle:
    if max_degree is not None and max_degree < 1:
        raise ValidationError("degree bound must be at least 1")
    degree = len(code.colors) if max_degree is None else max_degree
    forest = spanning_forest(code.graph)
    variables = {edge_id: Variable(color, j) for edge_id, (color, j) in forest.generator_index().items()}

    arc_meridians = _Resolver(code, forest, variables, degree).run()

    generator_edges = {var: edge_id for edge_id, var in sorted(variables.items(), key=lambda kv: kv[1])}
    longitudes = {
        var: _walk_series(code, arc_meridians, generator_loop(code.graph, edge_id, forest), degree)
        for var, edge_id in generator_edges.items()
    }
    bundle = PresentationBundle(
        code=code,
        degree=degree,
        forest=forest,
        generators=tuple(generator_edges),
        generator_edges=generator_edges,
        arc_meridians=arc_meridians,
        longitudes=longitudes,
        surface_elements={},
    )
    bundle = replace(bundle, surface_elements=surface_elements(bundle))
    logger.debug(
        "resolved %d arcs over %d generators (degree %d)", len(arc_meridians), len(bundle.generators), degree
    )
    return bundle
