from cm_engine.ring.series import (
    MagnusSeries,
    Monomial,
    Variable,
    commutator_series,
    conjugate_series,
    homogeneous_part,
    inverse,
    lowest_degree,
    lowest_degree_with_color,
    multiply,
    render,
    render_monomial,
    term_bound,
    without_color,
)
from cm_engine.ring.words import GroupWord, Letter, expand, parse_word

__all__ = [
    "GroupWord",
    "Letter",
    "MagnusSeries",
    "Monomial",
    "Variable",
    "commutator_series",
    "conjugate_series",
    "expand",
    "homogeneous_part",
    "inverse",
    "lowest_degree",
    "lowest_degree_with_color",
    "multiply",
    "parse_word",
    "render",
    "render_monomial",
    "term_bound",
    "without_color",
]
