"""Exact census of F-stable semisimple conjugacy classes of simple
algebraic groups over finite fields, computed through alcove geometry.
"""

from .affine import (
    AffinePoint,
    DiagramSymmetry,
    FundamentalGroup,
    affine_point,
    f_map,
    fold_to_alcove,
    fundamental_group,
    hyperplane_containment,
    invariant_space,
    marks,
    minuscule_nodes,
    standard_symmetry,
    z_element,
)
from .brauer import (
    FrobeniusConfig,
    SubAlcove,
    base_subalcove,
    enumerate_subalcoves,
    fixed_point,
    m_alpha,
    m_of,
    theta,
)
from .census import (
    ClassRecord,
    GroupConfig,
    Lattice,
    component_F_action,
    counts,
    d_odd_comparison,
    disconnected_census_check,
    enumerate_classes,
    f_stable,
    make_group_config,
    orbit_equal,
)
from .errors import InvariantViolation, ResourceCapExceeded
from .linalg import AffineMap
from .oracle import SmallGroupSpec, pprime_character_count, semisimple_class_count
from .rootdata import (
    RootDatum,
    TypeLabel,
    build_root_system,
    longest_element,
    simple_reflection,
    subdiagram_type,
)

__version__ = "0.1.0"
