from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass

from cm_engine.core.errors import ValidationError
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.graph.cycles import CycleSelection, constituent_selections
from cm_engine.invariants.milnor import MuBarReport, selection_reports
from cm_engine.presentation.bundle import PresentationBundle, resolve_meridians
from cm_engine.presentation.direct import DirectPresentation, relator_series
from cm_engine.ring.series import Monomial, lowest_degree_with_color

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Obstruction:
    """
    Color-i terms in the relator expansions. Their presence rules out
    separating component i by a component homotopy; their absence proves
    nothing.
    """

    color: int
    obstructed: bool
    relator: str | None = None
    monomial: Monomial | None = None
    coefficient: int = 0
    degree: int | None = None

    @property
    def verdict(self) -> str:
        if self.obstructed:
            return "not separable"
        return "no obstruction found (inconclusive)"


@dataclass(frozen=True, eq=False)
class SplitReport:
    completely_split: bool
    witness: CycleSelection | None
    witness_report: MuBarReport | None
    selections_checked: int
    obstructions: Mapping[int, Obstruction]
    surface_trivial: bool


def i_split_obstruction(
    source: PresentationBundle | DirectPresentation, color: int, max_degree: int | None = None
) -> Obstruction:
    if color not in source.colors:
        raise ValidationError(f"unknown component {color}")

    best = None
    for position, rel in enumerate(relator_series(source, max_degree)):
        d = lowest_degree_with_color(rel.series, color)
        if d is None:
            continue
        key = (d, rel.length, position)
        if best is None or key < best[0]:
            best = (key, rel)
    if best is None:
        return Obstruction(color, False)

    (d, _, _), rel = best
    monomial = min(
        m for m in rel.series.terms if len(m) == d and any(v.color == color for v in m)
    )
    return Obstruction(
        color=color,
        obstructed=True,
        relator=rel.label,
        monomial=monomial,
        coefficient=rel.series.coefficient(monomial),
        degree=d,
    )


def is_completely_split(
    code: EmbeddingCode,
    cap: int | None = None,
    workers: int | None = None,
    max_degree: int | None = None,
) -> SplitReport:
    """
    Completely split up to component homotopy exactly when every constituent
    link is link-homotopically trivial. The witness is the first nontrivial
    constituent link in selection order.

    `surface_trivial` is the group-level test: every surface element
    expands to 1, so the presentation adds nothing to the reduced free
    group. It must agree with `completely_split`.
    """
    selections = constituent_selections(code.graph, cap=cap)
    reports = selection_reports(code, selections, workers, max_degree)
    witness = next(((sel, rep) for sel, rep in reports if not rep.trivial), None)

    bundle = resolve_meridians(code, max_degree)
    obstructions = {c: i_split_obstruction(bundle, c) for c in code.colors}
    surface_trivial = all(s.is_one() for s in bundle.surface_elements.values())

    if witness is not None:
        logger.info("not split: constituent link %s is nontrivial", witness[0].describe())
    if surface_trivial != (witness is None):
        logger.warning("surface elements and constituent links disagree on splitting")
    return SplitReport(
        completely_split=witness is None,
        witness=witness[0] if witness else None,
        witness_report=witness[1] if witness else None,
        selections_checked=len(selections),
        obstructions=obstructions,
        surface_trivial=surface_trivial,
    )
