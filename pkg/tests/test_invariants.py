from __future__ import annotations

import itertools
import random

import pytest

from cm_engine.core.errors import CapExceeded, NotALink, ValidationError
from cm_engine.corpus import list_fixtures, load_code
from cm_engine.diagram import delete_component, extract_sublink, linking_number, random_link_code
from cm_engine.graph import constituent_selections
from cm_engine.invariants import (
    build_report,
    check_invariance,
    i_split_obstruction,
    index_key,
    invariant_digest,
    is_completely_split,
    lambda_from_links,
    lambda_from_relators,
    lambda_report,
    mu_bar,
    selection_reports,
)
from cm_engine.invariants.reports import (
    as_text,
    crossing_summary,
    lambda_frame,
    lambda_payload,
    mu_bar_frame,
    obstruction_payload,
)
from cm_engine.presentation import expand_direct, resolve_meridians
from cm_engine.ring import homogeneous_part

DIAGRAMS = list_fixtures("diagram")


def test_borromean_mu_bar(borromean):
    report = mu_bar(borromean)
    assert all(c == 0 for c in report.of_length(2).values())
    length, values = report.first_nonvanishing
    assert length == 3
    assert len(values) == 6
    assert all(abs(c) == 1 for _, c in values)

    mu = dict(values)
    assert mu[(1, 2, 3)] == mu[(2, 3, 1)] == mu[(3, 1, 2)]
    assert mu[(2, 1, 3)] == -mu[(1, 2, 3)]
    assert not report.trivial
    assert not report.indeterminate((1, 2, 3))


def test_borromean_lambda(borromean):
    report = lambda_report(borromean)
    assert report.values() == {1: 3, 2: 3, 3: 3}
    assert report.agree


@pytest.mark.parametrize("color", [1, 2, 3])
def test_borromean_minus_a_component_is_trivial(borromean, color):
    report = mu_bar(delete_component(borromean, color))
    assert report.trivial
    assert report.first_nonvanishing is None


def test_example2_lambda(example2):
    report = lambda_report(example2)
    assert report.values() == {1: 3, 2: 3, 3: 2, 4: 2}
    assert all(not r.links_checked for r in report.rows)
    assert report.agree


@pytest.mark.parametrize("color", [1, 2, 3])
def test_example3_obstructions(example3, color):
    obstruction = i_split_obstruction(example3, color)
    assert obstruction.obstructed
    assert obstruction.verdict == "not separable"
    assert obstruction.relator == "rel1"
    assert obstruction.degree == 3
    assert obstruction.coefficient != 0
    assert any(v.color == color for v in obstruction.monomial)


def test_example3_has_no_pairwise_terms(example3):
    rel = expand_direct(example3)["rel1"]
    assert homogeneous_part(rel, 2) == 0
    assert lambda_from_relators(example3, 3) == 3


def test_unknown_color_is_rejected(example3):
    with pytest.raises(ValidationError):
        i_split_obstruction(example3, 7)
    with pytest.raises(ValidationError):
        lambda_from_relators(example3, 7)


def test_hopf_matches_crossing_oracle(hopf):
    report = mu_bar(hopf)
    assert report.coefficients[(1, 2)] == linking_number(hopf, 1, 2) == 1
    assert report.coefficients[(2, 1)] == linking_number(hopf, 2, 1) == 1


def test_random_links_match_crossing_oracle():
    rng = random.Random(20)
    for _ in range(20):
        code = random_link_code(rng, rng.randint(2, 3), rng.randint(0, 8))
        report = mu_bar(code)
        for i, j in itertools.permutations(code.colors, 2):
            assert report.coefficients[(i, j)] == linking_number(code, i, j)


def test_mu_bar_needs_a_link(theta_circle):
    with pytest.raises(NotALink):
        mu_bar(theta_circle)


def test_mu_bar_is_memoized(borromean):
    assert mu_bar(borromean) is mu_bar(borromean)
    assert mu_bar(borromean, 2) is not mu_bar(borromean)
    assert mu_bar(borromean, 2).approximate


def test_index_key():
    assert index_key((1, 2, 3)) == "123"
    assert index_key((10, 2)) == "10,2"


def test_theta_cycles_see_different_linking(theta_circle):
    selections = [s for s in constituent_selections(theta_circle.graph) if s.support == {1, 2}]
    values = {
        frozenset(sel.cycle(1).edges): rep.coefficients[(1, 2)]
        for sel, rep in selection_reports(theta_circle, selections)
    }
    assert values == {frozenset({1, 2}): -1, frozenset({1, 3}): 0, frozenset({2, 3}): 1}


def test_parallel_selection_reports_agree(split_theta_k4, theta_circle):
    for code in (split_theta_k4, theta_circle):
        selections = constituent_selections(code.graph)
        serial = selection_reports(code, selections, workers=1)
        parallel = selection_reports(code, selections, workers=4)
        assert [s.key for s, _ in serial] == [s.key for s, _ in parallel]
        assert [r.first_nonvanishing for _, r in serial] == [r.first_nonvanishing for _, r in parallel]


@pytest.mark.parametrize("name", DIAGRAMS)
def test_move_invariance(name):
    result = check_invariance(load_code(name), moves=10, seed=0)
    assert result.passed, result.mismatch


def test_moves_between_components_are_skipped(whitehead):
    result = check_invariance(whitehead, moves=10, seed=0)
    assert len(result.applied) == 10
    assert set(result.applied) == {2}
    assert set(result.rejected) <= {1, 3, 4, 5}


def test_no_legal_moves_leaves_the_baseline(borromean):
    result = check_invariance(borromean, moves=3, seed=0)
    assert result.applied == []
    assert result.passed
    assert result.baseline["completely_split"] is False


@pytest.mark.parametrize("name", DIAGRAMS)
def test_lambda_routes_agree(name):
    code = load_code(name)
    report = lambda_report(code)
    assert report.agree, lambda_frame(report)
    bundle = resolve_meridians(code)
    for color in code.colors:
        assert lambda_from_relators(bundle, color) == lambda_from_links(code, color)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("theta_circle", {1: 2, 2: 2}),
        ("hopf_unknot", {1: 2, 2: 2, 3: None}),
        ("split_theta_k4", {1: None, 2: None}),
        ("whitehead", {1: None, 2: None}),
    ],
)
def test_lambda_values(name, expected):
    assert lambda_report(load_code(name)).values() == expected


def test_split_graph_is_completely_split(split_theta_k4):
    report = is_completely_split(split_theta_k4)
    assert report.completely_split
    assert report.witness is None
    assert report.selections_checked == 31


def test_borromean_is_not_split(borromean):
    report = is_completely_split(borromean)
    assert not report.completely_split
    assert report.witness.support == {1, 2, 3}
    assert report.witness_report.first_nonvanishing[0] == 3
    assert all(o.obstructed and o.degree == 3 for o in report.obstructions.values())


def test_whitehead_is_completely_split(whitehead):
    report = is_completely_split(whitehead)
    assert report.completely_split
    assert mu_bar(whitehead).trivial


def test_first_nontrivial_selection_is_the_witness():
    report = is_completely_split(load_code("hopf_unknot"))
    assert not report.completely_split
    assert report.witness.support == {1, 2}
    assert not report.obstructions[3].obstructed
    assert report.obstructions[3].verdict == "no obstruction found (inconclusive)"


def test_cycle_cap_applies(split_theta_k4):
    with pytest.raises(CapExceeded):
        is_completely_split(split_theta_k4, cap=5)


@pytest.mark.parametrize("name", DIAGRAMS)
def test_split_means_nothing_obstructed(name):
    code = load_code(name)
    report = is_completely_split(code)
    if report.completely_split:
        assert not any(o.obstructed for o in report.obstructions.values())
        assert all(v is None for v in lambda_report(code).values().values())


def test_sublinks_of_split_graph_are_trivial(split_theta_k4):
    for sel in constituent_selections(split_theta_k4.graph):
        assert mu_bar(extract_sublink(split_theta_k4, sel)).trivial


def test_mu_bar_table(hopf):
    df = mu_bar_frame(mu_bar(hopf))
    assert list(df["index"]) == ["12", "21"]
    assert list(df["coefficient"]) == [1, 1]
    assert "12" in as_text(df)


def test_lambda_table_marks_absent_values():
    df = lambda_frame(lambda_report(load_code("hopf_unknot")))
    text = as_text(df)
    assert text.splitlines()[-1].split()[:3] == ["3", "-", "-"]


def test_report_payloads_are_plain_data(example3):
    payload = obstruction_payload(i_split_obstruction(example3, 3))
    assert payload["obstructed"] is True
    assert payload["degree"] == 3
    report = build_report("isplit", "example3", verdicts={"3": payload["verdict"]})
    assert report["schema"] == "cm-report/1"
    assert set(report) == {
        "schema", "command", "input", "verdicts", "witnesses", "mu_bar", "lambda", "flags", "series",
    }


def test_digest_is_stable(theta_circle):
    first = invariant_digest(theta_circle)
    assert first == invariant_digest(theta_circle)
    assert first["completely_split"] is False
    assert first["lambda"] == {"1": [2, 2], "2": [2, 2]}


@pytest.mark.parametrize("name", DIAGRAMS)
def test_surface_elements_agree_with_constituent_links(name):
    report = is_completely_split(load_code(name))
    assert report.surface_trivial == report.completely_split


def test_self_clasp_does_not_change_the_borromean_invariants(borromean):
    clasp = load_code("borromean_clasp")
    assert invariant_digest(clasp) == invariant_digest(borromean)
    assert mu_bar(clasp).first_nonvanishing == mu_bar(borromean).first_nonvanishing


def test_check_changes_clasp_crossings():
    result = check_invariance(load_code("borromean_clasp"), moves=6, seed=1)
    assert len(result.applied) == 6
    assert set(result.applied) <= {7, 8}
    assert set(result.rejected) <= {1, 2, 3, 4, 5, 6}
    assert result.passed


def test_presentation_lambda_leaves_link_route_blank(example2):
    report = lambda_report(example2)
    df = lambda_frame(report)
    assert list(df["links"]) == ["n/a"] * 4
    assert "none" not in as_text(df, missing="none ≤ 4")
    payload = lambda_payload(report)
    assert payload["1"] == {"relators": 3, "links_checked": False, "agree": True}


def test_crossing_summary(hopf, borromean):
    assert crossing_summary(hopf, mu_bar(hopf)) == {
        "writhe": 2,
        "linking_numbers": {"12": 1},
        "length_two_agrees": True,
    }
    summary = crossing_summary(borromean)
    assert summary["linking_numbers"] == {"12": 0, "13": 0, "23": 0}
    assert summary["writhe"] == 0
    assert "length_two_agrees" not in summary
