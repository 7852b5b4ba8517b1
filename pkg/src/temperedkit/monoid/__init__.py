"""Fine saturated monoids, faces and monoid maps."""
from .monoid import (AffineMonoid, Face, FacePoset, LatticeGroup, direct_sum, face_closure,
                     face_poset, free_monoid, group_envelope, localize, saturate, sharpen,
                     sharpening_projection, smallest_face_containing, units)
from .maps import (MapClassification, MonoidMap, Pushout, Verdict, classify_map, default_bound,
                   identity_map, is_exact, is_integral, is_kummer, is_l_kummer, is_local,
                   is_saturated_map, kummer_face_transport, pushout, pushout_with_maps,
                   restrict_to_face, saturation_index, scalar_map)

__all__ = [
    "AffineMonoid", "Face", "FacePoset", "LatticeGroup", "MapClassification", "MonoidMap",
    "Pushout", "Verdict", "classify_map", "default_bound", "direct_sum", "face_closure",
    "face_poset", "free_monoid", "group_envelope", "identity_map", "is_exact", "is_integral",
    "is_kummer", "is_l_kummer", "is_local", "is_saturated_map", "kummer_face_transport",
    "localize", "pushout", "pushout_with_maps", "restrict_to_face", "saturate",
    "saturation_index", "scalar_map", "sharpen", "sharpening_projection",
    "smallest_face_containing", "units",
]
