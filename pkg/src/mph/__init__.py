"""Multiparameter persistent homology by half-plane slicing.

Vector-valued sublevel filtrations on finite simplicial complexes reduce,
leaf by leaf of a half-plane foliation, to one-parameter persistence; the
weighted slice distances are stable and bound the global matching
distance from below.
"""
from .foliation import (
    AdmissiblePair,
    SlicePoint,
    default_offset_radius,
    make_admissible,
    pair_through,
    plane_point,
    slice_grid,
)
from .distance import (
    DistanceEstimate,
    SliceSample,
    StabilityReport,
    bottleneck,
    component_distance,
    delta,
    estimate_over_degrees,
    max_over_degrees,
    multidim_distance,
    stability_check,
)
from .persistence import (
    DiagramPoint,
    FiltrationOrder,
    PersistenceDiagram,
    diagram,
    homological_critical_values,
    multidim_rank,
    rank_at,
    rank_oracle,
    restricted_diagram,
)
from .shapes import ShapeSpec, generate, measuring
from .simplicial import (
    FormatError,
    MeasuringFunction,
    ParameterPoint,
    ScalarFiltration,
    SimplicialComplex,
    connected_components,
    dump_pair,
    load_pair,
    pair_from_json,
    pair_to_json,
    restrict,
    scalar_sublevel,
    sublevel_complex,
    sublevel_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePair",
    "DiagramPoint",
    "DistanceEstimate",
    "FiltrationOrder",
    "FormatError",
    "MeasuringFunction",
    "ParameterPoint",
    "PersistenceDiagram",
    "ScalarFiltration",
    "ShapeSpec",
    "SimplicialComplex",
    "SlicePoint",
    "SliceSample",
    "StabilityReport",
    "bottleneck",
    "component_distance",
    "connected_components",
    "default_offset_radius",
    "delta",
    "diagram",
    "dump_pair",
    "estimate_over_degrees",
    "generate",
    "homological_critical_values",
    "load_pair",
    "make_admissible",
    "max_over_degrees",
    "measuring",
    "multidim_distance",
    "multidim_rank",
    "pair_from_json",
    "pair_through",
    "pair_to_json",
    "plane_point",
    "rank_at",
    "rank_oracle",
    "restrict",
    "restricted_diagram",
    "scalar_sublevel",
    "slice_grid",
    "stability_check",
    "sublevel_complex",
    "sublevel_vertices",
]
