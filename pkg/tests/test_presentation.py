from __future__ import annotations

import pytest

from cm_engine.core.errors import BadWalk, CodeSyntaxError, UnknownGenerator, ValidationError
from cm_engine.corpus import load_code
from cm_engine.diagram import Arc
from cm_engine.graph import Step, generator_loop
from cm_engine.presentation import (
    DirectPresentation,
    expand_direct,
    parse_presentation,
    relator_series,
    resolve_meridians,
    root_relations,
    serialize_presentation,
    walk_longitude,
)
from cm_engine.ring import (
    GroupWord,
    MagnusSeries,
    Variable,
    expand,
    homogeneous_part,
    lowest_degree,
    parse_word,
    without_color,
)

X11 = Variable(1, 1)
X12 = Variable(1, 2)
X21 = Variable(2, 1)
X31 = Variable(3, 1)


def test_unknot_has_one_free_generator():
    bundle = resolve_meridians(load_code("unknot"))
    assert bundle.generators == (X11,)
    assert bundle.base(1) == MagnusSeries.generator(X11, 1)
    assert bundle.longitudes[X11] == 1
    assert bundle.surface_elements == {1: MagnusSeries.one(1)}


def test_hopf_meridians_and_longitudes(hopf):
    bundle = resolve_meridians(hopf)
    assert bundle.degree == 2
    assert bundle.generators == (X11, X21)
    assert bundle.arc_meridians[Arc(1, 2)] == MagnusSeries(
        {(): 1, (X11,): 1, (X11, X21): 1, (X21, X11): -1}, 2
    )
    assert bundle.longitudes[X11] == MagnusSeries.generator(X21, 2)
    assert bundle.longitudes[X21] == MagnusSeries.generator(X11, 2)
    assert bundle.surface_elements[1] == MagnusSeries(
        {(): 1, (X11, X21): 1, (X21, X11): -1}, 2
    )


def test_borromean_surface_elements_start_in_degree_three(borromean):
    bundle = resolve_meridians(borromean)
    for color in bundle.colors:
        (var,) = bundle.generators_of(color)
        longitude = bundle.longitudes[var]
        assert homogeneous_part(longitude, 1) == 0
        assert lowest_degree(longitude) == 2
        r = bundle.surface_elements[color]
        assert r.constant == 1
        assert lowest_degree(r) == 3


def test_every_arc_meridian_is_a_unit(theta_circle):
    bundle = resolve_meridians(theta_circle)
    assert all(s.constant == 1 for s in bundle.arc_meridians.values())
    assert len(bundle.arc_meridians) == sum(theta_circle.arc_count(e.id) for e in theta_circle.graph.edges)


def test_generators_follow_the_spanning_forest(theta_circle):
    bundle = resolve_meridians(theta_circle)
    assert bundle.generators_of(1) == (X11, X12)
    assert dict(bundle.generator_edges) == {X11: 2, X12: 3, X21: 4}
    assert bundle.meridian(X21) == bundle.base(4)


def test_walk_longitude_matches_generator_loops(theta_circle):
    bundle = resolve_meridians(theta_circle)
    for var, edge_id in bundle.generator_edges.items():
        walk = generator_loop(theta_circle.graph, edge_id, bundle.forest)
        assert walk_longitude(bundle, theta_circle, walk) == bundle.longitudes[var]


def test_reversed_walk_inverts_the_longitude(theta_circle):
    bundle = resolve_meridians(theta_circle)
    walk = (Step(2, True), Step(3, False))
    back = tuple(s.reversed for s in reversed(walk))
    forward = walk_longitude(bundle, theta_circle, walk)
    assert forward * walk_longitude(bundle, theta_circle, back) == 1


@pytest.mark.parametrize("name", ["theta_circle", "split_theta_k4"])
def test_moving_the_start_keeps_the_lowest_foreign_terms(name):
    code = load_code(name)
    bundle = resolve_meridians(code)
    for var, edge_id in bundle.generator_edges.items():
        walk = generator_loop(code.graph, edge_id, bundle.forest)
        base = without_color(walk_longitude(bundle, code, walk), var.color)
        k = lowest_degree(base)
        for shift in range(1, len(walk)):
            rotated = walk[shift:] + walk[:shift]
            moved = without_color(walk_longitude(bundle, code, rotated), var.color)
            assert lowest_degree(moved) == k
            if k is not None:
                assert homogeneous_part(moved, k) == homogeneous_part(base, k)


@pytest.mark.parametrize(
    "walk",
    [(), (Step(1, True),), (Step(1, True), Step(1, True)), (Step(9, True),)],
)
def test_bad_walks(theta_circle, walk):
    bundle = resolve_meridians(theta_circle)
    with pytest.raises(BadWalk):
        walk_longitude(bundle, theta_circle, walk)


def test_degree_bound(borromean):
    assert resolve_meridians(borromean, 2).approximate
    assert not resolve_meridians(borromean).approximate
    with pytest.raises(ValidationError):
        resolve_meridians(borromean, 0)


@pytest.mark.parametrize(
    "name", ["unknot", "trefoil", "hopf", "hopf_unknot", "borromean", "whitehead", "theta_circle", "split_theta_k4"]
)
def test_root_relation_agrees_with_surface_element(name):
    bundle = resolve_meridians(load_code(name))
    roots = root_relations(bundle)
    for color in bundle.colors:
        root, surface = roots[color], bundle.surface_elements[color]
        k = lowest_degree(surface)
        assert lowest_degree(root) == k
        if k is not None:
            part = homogeneous_part(surface, k)
            assert homogeneous_part(root, k) in (part, -part)


def test_parse_presentation(example3):
    assert example3.generators == (X11, X21, X31)
    assert example3.degree == 3
    assert example3.relators == (parse_word("[m3,1,[m1,1,m2,1]]"),)


def test_serialized_presentation_reads_back(example2):
    assert parse_presentation(serialize_presentation(example2)) == example2


def test_expand_direct(example3):
    expanded = expand_direct(example3)
    assert list(expanded) == ["rel1"]
    rel = expanded["rel1"]
    assert homogeneous_part(rel, 2) == 0
    assert lowest_degree(rel) == 3
    assert rel == expand(example3.relators[0], 3)


def test_relator_series_labels(example2, hopf):
    direct = relator_series(example2)
    assert [r.label for r in direct] == ["rel1", "rel2", "rel3", "rel4"]
    assert direct[3].length == 4
    linked = relator_series(resolve_meridians(hopf))
    assert [(r.label, r.length) for r in linked] == [("r1", 0), ("r2", 0)]


def test_undeclared_generators_are_rejected():
    with pytest.raises(UnknownGenerator):
        parse_presentation("gen m1,1\nrel m1,1 m2,1\n")
    with pytest.raises(UnknownGenerator):
        parse_presentation("rel m1,1\ngen m1,1\n")
    rogue = DirectPresentation((X11,), (GroupWord.generator(X21),))
    with pytest.raises(UnknownGenerator):
        expand_direct(rogue)


def test_duplicate_generator_is_rejected():
    with pytest.raises(ValidationError):
        parse_presentation("gen m1,1 m1,2\ngen m1,1\n")


def test_presentation_syntax_errors_point_into_the_line():
    with pytest.raises(CodeSyntaxError) as info:
        parse_presentation("# relators\ngen m1,1\nrel m1,1 ^\n", source="p.pres")
    assert info.value.line == 3
    assert info.value.column > len("rel ")
    with pytest.raises(CodeSyntaxError) as info:
        parse_presentation("gen m1,1\nrelator m1,1\n")
    assert info.value.line == 2
