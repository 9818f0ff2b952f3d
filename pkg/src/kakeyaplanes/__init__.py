"""Kakeya sets in finite affine planes: constructions, knot spectra,
exact classification bounds and exhaustive search."""

from .bounds import (
    QuadraticIrrational,
    admissible_intervals,
    classify,
    corollary_threshold,
    f_q,
    g_q,
    gap_predicates,
    h_q,
    kappa_ceil,
    kappa_floor,
    lemma_checks,
    square_threshold,
    theorem_threshold,
)
from .constructions import (
    ConstructionSpec,
    baer_construction,
    dual_hyperoval,
    dual_oval_plus_line,
    near_pencil,
    pencil,
)
from .errors import KakeyaError
from .gf import Field, field_new, field_of_order
from .kakeya import (
    IncrementalCover,
    KakeyaSet,
    KnotSpectrum,
    LineSelection,
    cover,
    derived_views,
    knot_spectrum,
    max_knot,
    verify_counting_identities,
)
from .plane import (
    AffinePlane,
    ProjectivePlane,
    affine_from_projective,
    baer_sublines,
    desarguesian_affine,
    desarguesian_projective,
    dump_plane,
    load_plane,
    verify_affine_axioms,
)
from .search import enumerate_selections, find_witness, sample_check, verify_theorem

__version__ = "0.1.0"
