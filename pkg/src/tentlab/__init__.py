"""tentlab: tent-space machinery on the unit disc.

Norms of average radial integrability, tent norms in all exponent modes,
hyperbolic lattices from the dyadic Whitney decomposition, Carleson-measure
embedding conditions with growth-based verdicts, and boundedness classifiers
for the integration operator f -> int_0^z f g'.
"""

from .geometry import (
    CarlesonBox,
    HyperbolicDisc,
    LueckingRegion,
    Region,
    StolzGamma,
    StolzLambda,
    TentOverPoint,
    WholeDisc,
    hyperbolic_disc_euclidean,
    hyperbolic_distance,
    luecking_center,
    region_contains,
    stolz_arc_measure,
)
from .quadrature import QuadratureConfig, integrate_boundary, integrate_disc
from .functions import (
    Dilated,
    KernelSum,
    LogKernel,
    PowerKernel,
    PowerSeries,
    Scaled,
    build_s_operator,
    evaluate,
    function_from_spec,
    function_to_spec,
    monomial,
    submean_ratio,
)
from .lattice import (
    Lattice,
    generate_luecking_lattice,
    lattice_from_json,
    lattice_to_json,
    points_in_region,
    validate_lattice,
)
from .measures import (
    DiscMeasure,
    RadialPowerDensity,
    SymbolPowerDensity,
    ZeroDensity,
    lebesgue_area,
    measure_from_spec,
    measure_to_spec,
    mu_from_symbol,
    region_mass,
)
from .norms import (
    BlochGrid,
    ExponentSet,
    NormEstimate,
    bergman_norm,
    bloch_seminorm,
    equivalence_report,
    hardy_norm,
    rm_norm,
    tent_norm,
)
from .seqtent import (
    closed_form_dual_norm,
    discretize_function,
    dual_norm_estimate,
    luecking_dual_value,
    pairing,
    seq_tent_norm,
)
from .carleson import (
    ConditionReport,
    boundedness_verdict,
    classical_carleson_constant,
    classify_case,
    condition_report,
    condition_value,
    derivative_embedding_lhs,
    embedding_lhs,
    luecking_condition,
    luecking_mu_sequence,
)
from .tgop import (
    RatioReport,
    SymbolReport,
    TgModel,
    empirical_operator_ratio,
    symbol_condition_hardy,
    symbol_condition_rm,
    tg_apply,
)
from .corpus import equivalence_corpus, symbol_corpus, witness_ladder

__version__ = "0.1.0"
