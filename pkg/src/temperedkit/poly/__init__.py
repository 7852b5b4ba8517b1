"""The category Lambda and finite polysimplicial sets."""
from . import lam
from .complex import (CellPoset, Coequalizer, Elem, PolyMorphism, PolysimplicialSet, box_product,
                      cell_counts, cell_poset, coequalizer, disjoint_union, element_morphism,
                      enumerate_morphisms, euler_characteristic, find_isomorphism, glue,
                      identity_morphism, inverse_morphism, is_bijective, is_interiorly_free,
                      morphism_is_iso, parse_complex, point, poset_map, quotient_by_action,
                      representable, representable_morphism)
from .lam import LambdaMorphism, compose, factor, parse_morphism

__all__ = [
    "CellPoset", "Coequalizer", "Elem", "LambdaMorphism", "PolyMorphism", "PolysimplicialSet",
    "box_product", "cell_counts", "cell_poset", "coequalizer", "compose", "disjoint_union",
    "element_morphism", "enumerate_morphisms", "euler_characteristic", "factor",
    "find_isomorphism", "glue", "identity_morphism", "inverse_morphism", "is_bijective",
    "is_interiorly_free", "lam", "morphism_is_iso", "parse_complex", "parse_morphism", "point",
    "poset_map", "quotient_by_action", "representable", "representable_morphism",
]
