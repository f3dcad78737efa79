from cm_engine.presentation.bundle import (
    PresentationBundle,
    resolve_meridians,
    root_relations,
    surface_elements,
    walk_longitude,
)
from cm_engine.presentation.direct import (
    DirectPresentation,
    Relator,
    expand_direct,
    parse_presentation,
    relator_series,
    serialize_presentation,
)

__all__ = [
    "DirectPresentation",
    "PresentationBundle",
    "Relator",
    "expand_direct",
    "parse_presentation",
    "relator_series",
    "resolve_meridians",
    "root_relations",
    "serialize_presentation",
    "surface_elements",
    "walk_longitude",
]
