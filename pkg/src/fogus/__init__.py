"""Filtered Ogus objects over Q: Hom, Ext^1, extensions and cones."""
from .errors import *  # noqa: F401,F403
from .exactq import Matrix, Polynomial, Subspace, solve, charpoly, certified_root_moduli
from .ogus_core import (
    OgusObject, OgusMorphism, make_object, unit_object, tate_object, direct_sum,
    internal_hom, hom_space, kernel, cokernel,
)
from .weights import (
    FOgObject, Verdict, fog_object, unit_fog, tate_fog, is_pure, check_weight_filtration,
    validate_fog, hom_space_fog, internal_hom_fog, tate_twist_fog, direct_sum_fog,
)
from .homext import (
    Cocycle, make_cocycle, xi, delta, is_coboundary, ext1_rank, build_extension,
    extract_class, baer_sum, ses_fog_og,
)
from .complexes import (
    FOgComplex, make_complex, hom_complex, cone, ext_groups, kill_cocycle, is_quasi_iso,
    verify_ses_cone,
)

__version__ = "0.1.0"
