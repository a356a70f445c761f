"""Sizes of metric spaces and how they change with scale.

The central quantity is the spread E0(X) = sum_i 1/sum_j exp(-d_ij), an
effective number of points that grows from 1 to N as a finite space is
scaled up.  Around it the package provides:

* q-spreads and similarity-sensitive diversity indices (``diversity``,
  ``spread``);
* magnitude, weightings and maximum diversity, with closed forms for trees
  and stars (``magnitude``);
* exact spreads of the interval and spheres plus Riemannian large-scale
  asymptotics (``continuum``);
* the spread dimension, a scale-dependent log-log growth rate (``dimension``);
* generators for all supported example spaces, including iterated-function-
  system fractal approximations (``generators``);
* a CLI (``metric-spread``) emitting deterministic CSV profiles (``cli``).
"""

from .continuum import (
    ManifoldSummary,
    interval_magnitude,
    interval_spread0,
    interval_spread2,
    interval_spread_inf,
    riemann_sum_space,
    riemannian_asymptotic_spread,
    sphere_spread0,
    surface_asymptotic_spread,
    unit_ball_volume,
)
from .dimension import (
    DEFAULT_STEP,
    DimensionEstimate,
    SpreadCurve,
    dimension_profile,
    growth_rate,
    spread_dimension,
)
from .diversity import (
    check_order,
    hill_number,
    lc_diversity,
    power_mean,
    similarity_from_metric,
)
from .generators import (
    IfsSystem,
    cantor,
    cantor_system,
    corona_metric,
    cycle_metric,
    dedup_points,
    grid,
    ifs_points,
    k32,
    koch,
    koch_system,
    linear_tree_metric,
    random_tree,
    random_tree_metric,
    sierpinski,
    sierpinski_system,
    three_point_r,
)
from .magnitude import (
    ENUMERATION_CAP,
    MagnitudeResult,
    NoWeightingError,
    RCOND_FLOOR,
    RESIDUAL_FLAG,
    Weighting,
    corona_maxdiv,
    corona_spread,
    is_positive_definite,
    linear_tree_spread,
    magnitude,
    magnitude_profile,
    maxdiv_profile,
    maximum_diversity,
    tree_magnitude,
    weighting,
)
from .spaces import (
    MATERIALIZE_LIMIT,
    DistanceMatrix,
    PointCloud,
    ScaledView,
    Violation,
    WeightedSpace,
    diameter,
    distance_matrix,
    graph_metric,
    npoints,
    read_distance_matrix_csv,
    read_point_cloud_csv,
    require_valid,
    scale,
    unwrap,
    validate,
    write_distance_matrix_csv,
    write_point_cloud_csv,
)
from .spread import (
    Profile,
    SpreadResult,
    log_grid,
    reciprocal_mean_similarities,
    reciprocal_mean_similarity,
    similarity_row_sums,
    spread0,
    spread_profile,
    spread_q,
    total_mass,
    write_profile_csv,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
