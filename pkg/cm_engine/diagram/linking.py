"""
Signed-crossing counts on diagram codes.

These are read straight off the crossings and never touch the group
machinery, so they serve as an independent oracle for the length-2
Milnor invariants.
"""

from __future__ import annotations

import random

from cm_engine.core.errors import ValidationError
from cm_engine.diagram.code import Cross, EdgeEnd, EmbeddingCode, Role
from cm_engine.graph.abstract import AbstractGraph, Edge


def writhe(code: EmbeddingCode) -> int:
    """Sum of all crossing signs. Depends on the diagram, not only the embedding."""
    return sum(code.crossing_sign(cid) for cid in code.crossings)


def linking_number(code: EmbeddingCode, over: int, under: int) -> int:
    """
    Signed count of the crossings where component `under` passes beneath
    component `over`.

    On a planar diagram this equals the linking number of any two cycles
    of those components and is symmetric in its arguments. Virtual codes
    may break the symmetry; the one-sided count is what the first Milnor
    invariant of a virtual link reads.
    """
    colors = set(code.colors)
    for c in (over, under):
        if c not in colors:
            raise ValidationError(f"unknown component {c}")
    if over == under:
        raise ValidationError("linking number needs two different components")

    total = 0
    for cid in code.crossings:
        if code.crossing_colors(cid) == (over, under):
            total += code.crossing_sign(cid)
    return total


def half_linking_number(code: EmbeddingCode, i: int, j: int) -> int:
    """Half the signed count of all crossings between i and j, the textbook form."""
    total = linking_number(code, i, j) + linking_number(code, j, i)
    if total % 2:
        raise ValidationError(f"components {i} and {j} cross an odd number of times")
    return total // 2


def random_link_code(rng: random.Random, components: int, crossings: int) -> EmbeddingCode:
    """
    A random virtual link code: component i is vertex i with loop edge i,
    and each crossing gets a random over strand, under strand, sign and
    positions along the two circles.
    """
    if components < 1:
        raise ValidationError("a link needs at least one component")
    if crossings < 0:
        raise ValidationError("crossing count must be non-negative")

    events: dict[int, list[Cross]] = {i: [] for i in range(1, components + 1)}
    for cid in range(1, crossings + 1):
        over = rng.randint(1, components)
        under = rng.randint(1, components)
        sign = rng.choice((1, -1))
        for comp, role in ((over, Role.OVER), (under, Role.UNDER)):
            strand = events[comp]
            strand.insert(rng.randint(0, len(strand)), Cross(cid, role, sign))

    edges = [Edge(i, i, i, i) for i in events]
    graph = AbstractGraph.build(events, edges)
    rotations = {i: (EdgeEnd(i, True), EdgeEnd(i, False)) for i in events}
    return EmbeddingCode.build(graph, events, rotations)
