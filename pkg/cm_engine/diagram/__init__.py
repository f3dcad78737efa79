from cm_engine.diagram.code import Arc, Cross, EdgeEnd, EmbeddingCode, Passage, Role, arcs
from cm_engine.diagram.linking import half_linking_number, linking_number, random_link_code, writhe
from cm_engine.diagram.moves import (
    crossing_change,
    delete_component,
    extract_sublink,
    is_link,
    legal_moves,
    reverse_edges,
)
from cm_engine.diagram.parser import parse, serialize

__all__ = [
    "Arc",
    "Cross",
    "EdgeEnd",
    "EmbeddingCode",
    "Passage",
    "Role",
    "arcs",
    "crossing_change",
    "delete_component",
    "extract_sublink",
    "half_linking_number",
    "is_link",
    "legal_moves",
    "linking_number",
    "parse",
    "random_link_code",
    "reverse_edges",
    "serialize",
    "writhe",
]
