"""Finite higher-rank graphs: realizations, fundamental groups, coverings and constructions."""

from .cells import (
    CellComplex,
    SurfaceType,
    build_complex,
    classify_surface,
    complex_from_json,
    complex_to_json,
    euler_characteristic,
    export_complex,
    is_closed_surface,
    is_orientable,
    load_complex,
)
from .constructions import (
    AutomorphismAction,
    CounterexampleCandidate,
    Quasimorphism,
    Tower,
    Verified,
    check_weak_surjectivity,
    crossed_cube_census,
    crossed_product,
    induced_point_map,
    tower_sigma,
    validate_quasimorphism,
)
from .core import (
    Edge,
    KGraph,
    Morphism,
    Path,
    Square,
    ValidationReport,
    canonical_point,
    compose,
    enumerate_paths,
    segment,
    validate,
)
from .coset import Exceeded, Finite, coset_enumerate
from .coverings import (
    CoveringMorphism,
    FiniteGroup,
    GroupLabeling,
    coset_cover,
    deck_group,
    fiber,
    find_isomorphism,
    is_regular,
    iter_labelings,
    permutation_cover,
    relative_skew_product,
    skew_product,
    verify_covering,
)
from .errors import *  # noqa: F401,F403
from .fileio import parse_kgraph, print_kgraph, read_kgraph
from .pi1 import GroupHom, TreeData, induced_hom, pi1_presentation, spanning_tree
from .presentation import GroupPresentation, parse_presentation, tietze_simplify
from .smith import AbelianInvariants, abelianize

__version__ = "0.1.0"
