"""Steenrod squares on the intersection cohomology of filtered face sets."""

from .filtered import FilteredFaceSet, Perversity, cone, cone_off_boundary, parse, serialize, suspension, trivial_filtration
from .blowup import BlowUp
from .squares import perverse_cohomology, steenrod_square, square_matrix, induced_map

__all__ = [
    "FilteredFaceSet",
    "Perversity",
    "cone",
    "cone_off_boundary",
    "parse",
    "serialize",
    "suspension",
    "trivial_filtration",
    "BlowUp",
    "perverse_cohomology",
    "steenrod_square",
    "square_matrix",
    "induced_map",
]
