"""Tables and JSON payloads for the command-line reports."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from typing import Any

import pandas as pd

from cm_engine.core.config import REPORT_SCHEMA
from cm_engine.core.errors import ValidationError
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.diagram.linking import half_linking_number, linking_number, writhe
from cm_engine.graph.cycles import constituent_selections
from cm_engine.invariants.lambdas import LambdaReport, lambda_report
from cm_engine.invariants.milnor import MuBarReport, index_key, selection_reports
from cm_engine.invariants.split import Obstruction, is_completely_split
from cm_engine.presentation.direct import Relator
from cm_engine.ring.series import lowest_degree, render, render_monomial

NOT_COMPUTED = "n/a"


def mu_bar_frame(report: MuBarReport) -> pd.DataFrame:
    rows = [
        {
            "index": index_key(idx),
            "length": len(idx),
            "coefficient": c,
            "indeterminate": report.indeterminate(idx),
        }
        for idx, c in report.coefficients.items()
    ]
    return pd.DataFrame(rows, columns=["index", "length", "coefficient", "indeterminate"])


def lambda_frame(report: LambdaReport) -> pd.DataFrame:
    rows = [
        {"color": r.color, "relators": r.relators, "links": r.links, "agree": r.agree}
        for r in report.rows
    ]
    df = pd.DataFrame(rows, columns=["color", "relators", "links", "agree"])
    df = df.astype({"relators": "Int64", "links": "Int64"})
    checked = pd.Series([r.links_checked for r in report.rows], index=df.index, dtype=bool)
    if not checked.all():
        for col in ("links", "agree"):
            df[col] = df[col].astype(object).where(checked, NOT_COMPUTED)
    return df


def relator_frame(relators: Iterable[Relator]) -> pd.DataFrame:
    rows = [
        {"relator": r.label, "lowest_degree": lowest_degree(r.series), "series": render(r.series)}
        for r in relators
    ]
    df = pd.DataFrame(rows, columns=["relator", "lowest_degree", "series"])
    return df.astype({"lowest_degree": "Int64"})


def obstruction_frame(obstructions: Mapping[int, Obstruction]) -> pd.DataFrame:
    rows = [
        {
            "color": o.color,
            "verdict": o.verdict,
            "relator": o.relator,
            "monomial": render_monomial(o.monomial) if o.monomial is not None else None,
            "coefficient": o.coefficient if o.obstructed else None,
        }
        for o in obstructions.values()
    ]
    return pd.DataFrame(rows, columns=["color", "verdict", "relator", "monomial", "coefficient"])


def as_text(df: pd.DataFrame, missing: str = "-") -> str:
    if df.empty:
        return "(none)"
    return df.astype(object).where(df.notna(), missing).to_string(index=False)


def mu_bar_payload(report: MuBarReport) -> dict[str, Any]:
    first = report.first_nonvanishing
    return {
        "trivial": report.trivial,
        "approximate": report.approximate,
        "first_nonvanishing": None
        if first is None
        else {"length": first[0], "values": {index_key(idx): c for idx, c in first[1]}},
        "table": {
            row["index"]: {"coefficient": row["coefficient"], "indeterminate": row["indeterminate"]}
            for row in mu_bar_frame(report).to_dict(orient="records")
        },
    }


def lambda_payload(report: LambdaReport) -> dict[str, Any]:
    """Rows keyed by color; `links` is left out when the link route never ran."""
    out = {}
    for r in report.rows:
        row = {"relators": r.relators, "links_checked": r.links_checked, "agree": r.agree}
        if r.links_checked:
            row["links"] = r.links
        out[str(r.color)] = row
    return out


def obstruction_payload(o: Obstruction) -> dict[str, Any]:
    return {
        "obstructed": o.obstructed,
        "verdict": o.verdict,
        "relator": o.relator,
        "monomial": render_monomial(o.monomial) if o.monomial is not None else None,
        "coefficient": o.coefficient if o.obstructed else None,
        "degree": o.degree,
    }


def _native(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_native(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


def build_report(
    command: str,
    source: str,
    *,
    verdicts: Mapping[str, Any] | None = None,
    witnesses: Mapping[str, Any] | None = None,
    mu_bar: Mapping[str, Any] | None = None,
    lambdas: Mapping[str, Any] | None = None,
    flags: Mapping[str, Any] | None = None,
    series: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    report = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "input": source,
        "verdicts": dict(verdicts or {}),
        "witnesses": dict(witnesses or {}),
        "mu_bar": dict(mu_bar or {}),
        "lambda": dict(lambdas or {}),
        "flags": dict(flags or {}),
        "series": dict(series or {}),
    }
    return _native(report)


def invariant_digest(
    code: EmbeddingCode,
    cap: int | None = None,
    workers: int | None = None,
    max_degree: int | None = None,
) -> dict[str, Any]:
    """Everything that must survive a component homotopy, as plain data."""
    split = is_completely_split(code, cap, workers, max_degree)
    lam = lambda_report(code, cap, workers, max_degree)
    selections = constituent_selections(code.graph, cap=cap)

    first = {}
    for sel, rep in selection_reports(code, selections, workers, max_degree):
        fn = rep.first_nonvanishing
        first[sel.describe()] = (
            None if fn is None else {"length": fn[0], "values": {index_key(i): c for i, c in fn[1]}}
        )

    return {
        "completely_split": split.completely_split,
        "surface_trivial": split.surface_trivial,
        "witness": split.witness.describe() if split.witness else None,
        "obstructed": {str(c): o.obstructed for c, o in split.obstructions.items()},
        "lambda": {str(r.color): [r.relators, r.links] for r in lam.rows},
        "mu_bar": first,
    }


def crossing_summary(code: EmbeddingCode, report: MuBarReport | None = None) -> dict[str, Any]:
    """
    Writhe and pairwise linking numbers counted straight from the crossings.
    With a report, also whether every length-2 Milnor invariant matches the
    one-sided crossing count. Odd crossing counts (virtual codes) have no
    linking number and show as None.
    """
    pairs: dict[str, int | None] = {}
    for i, j in itertools.combinations(code.colors, 2):
        try:
            pairs[index_key((i, j))] = half_linking_number(code, i, j)
        except ValidationError:
            pairs[index_key((i, j))] = None
    summary: dict[str, Any] = {"writhe": writhe(code), "linking_numbers": pairs}
    if report is not None:
        summary["length_two_agrees"] = all(
            report.coefficients[(i, j)] == linking_number(code, i, j)
            for i, j in itertools.permutations(code.colors, 2)
            if (i, j) in report.coefficients
        )
    return summary
