"""F_q-linear sets in PG(k-1, q^m), their saturation properties and rank-metric codes."""

from .gf import Element, FieldSpec, make_field_tower
from .geometry import (
    FqSubspace,
    ProjectivePoint,
    ProjectiveSubspace,
    enumerate_points,
    fqm_subspace_as_fq,
    intersect_dim,
    line_through,
    normalize_point,
    random_subspace,
    subspace_from_vectors,
)
from .linset import (
    LinearSet,
    SaturationCertificate,
    check_size_lower_bound,
    extend,
    is_h_scattered,
    is_saturating,
    is_scattered,
    linear_set,
    weight,
)
from .rankmetric import (
    LinearizedPoly,
    RankMetricCode,
    apply_matrix,
    code_of,
    codeword_weight_geometric,
    gabidulin,
    is_mrd,
    is_scattered_poly,
    min_distance,
    min_distance_geometric,
    moore_matrix,
    rank_weight,
    singleton_ok,
    system_of,
)

__version__ = "0.1.0"
