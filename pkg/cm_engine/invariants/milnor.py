from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from cm_engine.core.cache import sublink_cache
from cm_engine.core.config import WORKERS
from cm_engine.core.errors import NotALink
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.diagram.moves import extract_sublink, is_link
from cm_engine.graph.cycles import CycleSelection
from cm_engine.presentation.bundle import resolve_meridians
from cm_engine.ring.series import MagnusSeries, without_color

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]


def index_key(index: MultiIndex) -> str:
    """`123` for small colors, `10,11,2` once any color has two digits."""
    if all(c < 10 for c in index):
        return "".join(str(c) for c in index)
    return ",".join(str(c) for c in index)


@dataclass(frozen=True, eq=False)
class MuBarReport:
    """
    Milnor invariants of a link read off its longitudes.

    `coefficients` maps every multi-index (i1, ..., ik) of distinct colors,
    2 <= k, to the coefficient of X_i1 ... X_i(k-1) in the longitude of ik.
    Entries longer than the first nonvanishing length depend on the lower
    ones and are only reported.
    """

    colors: tuple[int, ...]
    degree: int
    longitudes: Mapping[int, MagnusSeries]
    coefficients: Mapping[MultiIndex, int]

    @property
    def trivial(self) -> bool:
        return all(s.is_one() for s in self.longitudes.values())

    @property
    def approximate(self) -> bool:
        return self.degree < len(self.colors)

    @property
    def first_nonvanishing(self) -> tuple[int, tuple[tuple[MultiIndex, int], ...]] | None:
        nonzero = [(idx, c) for idx, c in self.coefficients.items() if c]
        if not nonzero:
            return None
        length = min(len(idx) for idx, _ in nonzero)
        return length, tuple(sorted((idx, c) for idx, c in nonzero if len(idx) == length))

    def indeterminate(self, index: MultiIndex) -> bool:
        first = self.first_nonvanishing
        return first is not None and len(index) > first[0]

    def of_length(self, k: int) -> dict[MultiIndex, int]:
        return {idx: c for idx, c in self.coefficients.items() if len(idx) == k}

    def shortest_containing(self, color: int) -> int | None:
        lengths = [len(idx) for idx, c in self.coefficients.items() if c and color in idx]
        return min(lengths) if lengths else None


def _compute(code: EmbeddingCode, max_degree: int | None) -> MuBarReport:
    bundle = resolve_meridians(code, max_degree)
    colors = code.colors
    meridian = {c: bundle.generators_of(c)[0] for c in colors}

    longitudes = {
        c: without_color(bundle.longitudes[meridian[c]], c) for c in colors
    }
    top = min(len(colors), bundle.degree + 1)
    coefficients: dict[MultiIndex, int] = {}
    for j in colors:
        others = [c for c in colors if c != j]
        for k in range(2, top + 1):
            for head in itertools.permutations(others, k - 1):
                monomial = tuple(meridian[c] for c in head)
                coefficients[head + (j,)] = longitudes[j].coefficient(monomial)

    return MuBarReport(
        colors=colors,
        degree=bundle.degree,
        longitudes=longitudes,
        coefficients=dict(sorted(coefficients.items(), key=lambda kv: (len(kv[0]), kv[0]))),
    )


def mu_bar(code: EmbeddingCode, max_degree: int | None = None) -> MuBarReport:
    if not is_link(code):
        raise NotALink("every component must be a single circle; extract a sublink first")
    return sublink_cache.get_or_compute(("mu_bar", code, max_degree), lambda: _compute(code, max_degree))


def selection_reports(
    code: EmbeddingCode,
    selections: Sequence[CycleSelection],
    workers: int | None = None,
    max_degree: int | None = None,
) -> list[tuple[CycleSelection, MuBarReport]]:
    """mu_bar of every selected constituent link, in selection order."""
    workers = WORKERS if workers is None else workers

    def run(sel: CycleSelection) -> MuBarReport:
        return mu_bar(extract_sublink(code, sel), max_degree)

    if workers > 1 and len(selections) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, selections))
    else:
        reports = [run(sel) for sel in selections]
    logger.debug(
        "evaluated %d constituent links (workers=%d, cache hits=%d)",
        len(selections), workers, sublink_cache.hits,
    )
    return list(zip(selections, reports))
