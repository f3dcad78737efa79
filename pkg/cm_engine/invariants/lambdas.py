"""
The numerical invariant lambda of a component.

Two routes: the lowest degree at which a color-i monomial shows up in a
relator expansion, and the length of the shortest nonvanishing Milnor
invariant, through color i, of a constituent link meeting component i.
Both are bounded by the degree D; "absent" means no such term up to D,
and since longer monomials vanish identically that is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from cm_engine.core.errors import ValidationError
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.graph.cycles import constituent_selections
from cm_engine.invariants.milnor import selection_reports
from cm_engine.presentation.bundle import PresentationBundle, resolve_meridians
from cm_engine.presentation.direct import DirectPresentation, relator_series
from cm_engine.ring.series import lowest_degree_with_color


def lambda_from_relators(
    source: PresentationBundle | DirectPresentation, color: int, max_degree: int | None = None
) -> int | None:
    if color not in source.colors:
        raise ValidationError(f"unknown component {color}")
    degrees = [
        d
        for rel in relator_series(source, max_degree)
        if (d := lowest_degree_with_color(rel.series, color)) is not None
    ]
    return min(degrees) if degrees else None


def lambda_from_links(
    code: EmbeddingCode,
    color: int,
    cap: int | None = None,
    workers: int | None = None,
    max_degree: int | None = None,
) -> int | None:
    selections = constituent_selections(code.graph, required=color, cap=cap)
    lengths = [
        k
        for _, report in selection_reports(code, selections, workers, max_degree)
        if (k := report.shortest_containing(color)) is not None
    ]
    return min(lengths) if lengths else None


@dataclass(frozen=True)
class LambdaRow:
    color: int
    relators: int | None
    links: int | None
    links_checked: bool = True

    @property
    def agree(self) -> bool:
        return not self.links_checked or self.relators == self.links

    @property
    def value(self) -> int | None:
        return self.relators if self.relators is not None else self.links


@dataclass(frozen=True)
class LambdaReport:
    degree: int
    rows: tuple[LambdaRow, ...]
    approximate: bool = False

    @property
    def agree(self) -> bool:
        return all(r.agree for r in self.rows)

    def row(self, color: int) -> LambdaRow:
        for r in self.rows:
            if r.color == color:
                return r
        raise ValidationError(f"unknown component {color}")

    def values(self) -> dict[int, int | None]:
        return {r.color: r.value for r in self.rows}


def lambda_report(
    source: EmbeddingCode | PresentationBundle | DirectPresentation,
    cap: int | None = None,
    workers: int | None = None,
    max_degree: int | None = None,
) -> LambdaReport:
    """Both routes side by side; a direct presentation only has the relator route."""
    if isinstance(source, EmbeddingCode):
        source = resolve_meridians(source, max_degree)

    if isinstance(source, DirectPresentation):
        degree = source.degree if max_degree is None else max_degree
        rows = tuple(
            LambdaRow(c, lambda_from_relators(source, c, max_degree), None, links_checked=False)
            for c in source.colors
        )
        return LambdaReport(degree, rows, approximate=degree < len(source.colors))

    rows = tuple(
        LambdaRow(
            c,
            lambda_from_relators(source, c),
            lambda_from_links(source.code, c, cap, workers, max_degree),
        )
        for c in source.colors
    )
    return LambdaReport(source.degree, rows, approximate=source.approximate)
