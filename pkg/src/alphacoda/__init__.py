"""Compositional data analysis with the alpha-transformation family.

The alpha-transformation interpolates between analysing raw proportions
(``alpha = 1``) and log-ratio analysis (``alpha -> 0``).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CodaError,
    DegenerateInput,
    DimensionMismatch,
    DimensionTooSmall,
    DomainError,
    NegativePart,
    NumericalError,
    OracleNonConvergence,
    SingularCovariance,
    SpecError,
    ZeroPartNotAllowed,
)
from .simplex import (  # noqa: E402
    Composition,
    CompositionDataset,
    HelmertBasis,
    closure,
    helmert_basis,
    perturb,
    simplicial_add,
)
from .transforms import (  # noqa: E402
    TransformKind,
    TransformSpec,
    TransformedData,
    alpha_isometric,
    alpha_power,
    alr,
    boxcox_ratio,
    clr,
    ilr,
    inverse_alpha_power,
    transform,
)
from .geometry import (  # noqa: E402
    DistanceKind,
    DistanceSpec,
    FrechetMeanResult,
    check_subcompositional_dominance,
    dist_alpha,
    dist_lra,
    dist_rda,
    distance_matrix,
    frechet_oracle,
    mean_arithmetic,
    mean_frechet_alpha,
    mean_geometric_closed,
)
from .likelihood import (  # noqa: E402
    CriterionSpec,
    ProfileLikelihoodResult,
    profile_loglik_u,
    profile_loglik_z,
    select_alpha,
)
from .fixtures import load_fixture_recovery, load_fixture_table1  # noqa: E402
from .io import read_dataset  # noqa: E402
from .viz import Overlay, TernaryPlotSpec, barycentric_to_canvas, render_ternary  # noqa: E402
