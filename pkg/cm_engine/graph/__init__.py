from cm_engine.graph.abstract import (
    AbstractGraph,
    ComponentTree,
    Edge,
    SpanningForest,
    Step,
    Walk,
    betti_number,
    components,
    generator_loop,
    spanning_forest,
    spanning_tree,
    tree_path,
    walk_vertices,
)
from cm_engine.graph.cycles import Cycle, CycleSelection, constituent_selections, simple_cycles

__all__ = [
    "AbstractGraph",
    "ComponentTree",
    "Cycle",
    "CycleSelection",
    "Edge",
    "SpanningForest",
    "Step",
    "Walk",
    "betti_number",
    "components",
    "constituent_selections",
    "generator_loop",
    "simple_cycles",
    "spanning_forest",
    "spanning_tree",
    "tree_path",
    "walk_vertices",
]
