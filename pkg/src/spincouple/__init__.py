"""spincouple: exact coupling analysis for the 2x2 Alice-Bob spin scenario.

The package decides, with exact rational arithmetic, which joint
distributions (couplings) of the eight context-indexed variables exist
under marginal, identity and connection constraints; evaluates the
Bell-CH-Fine / quantum-arcsin / Tsirelson inequality hierarchy; and builds
the conditionalization couplings that exist for every scenario regardless
of that hierarchy.
"""

from .campaigns import (
    FineCampaignResult,
    UninformativenessCampaignResult,
    fine_agreement_campaign,
    uninformativeness_campaign,
)
from .conditionalization import (
    KINDS,
    ConditionDistribution,
    ConditionalCoupling,
    PartitionWeights,
    UninformativenessReport,
    even_partition_coupling,
    zero_padded_coupling,
    build_conditional,
    simple_conditional_coupling,
    two_condition_tree,
    uninformativeness_report,
    verify_conditionals,
)
from .connections import (
    RATIONALIZE_MAX_DENOMINATOR,
    S2_EVEN_BOUND,
    SetRole,
    exact_connection,
    rationalize,
    satisfies_s1_prime,
    satisfies_s2_prime,
    test_equivalent,
    test_fitting,
    test_forcing,
)
from .couplings import (
    ALL_PATTERNS,
    CONNECTION_NAMES,
    CONNECTION_POSITIONS,
    ConnectionVector,
    Coupling,
    CouplingVerdict,
    connection_range,
    coupling_exists,
    coupling_from_pattern_map,
    identity_coupling_exists,
    independent_coupling,
    pair_coupling_range,
    pair_coupling_range_lp,
    pattern_from_key,
    pattern_key,
)
from .distributions import (
    CONTEXTS,
    CorrelationVector,
    NoSignalingReport,
    PairDistribution,
    Scenario,
    check_no_signaling,
    correlation,
    scenario_from_correlations,
)
from .errors import DomainError, SamplerExhausted, SpincoupleError, StructuralError
from .inequalities import (
    DEFAULT_EPSILON,
    FAMILIES,
    FAMILY_BELL,
    FAMILY_QUANTUM,
    FAMILY_TSIRELSON,
    TSIRELSON_BOUND,
    Classification,
    FamilyReport,
    arcsin_sum_max,
    bell_ch_fine,
    chsh_max,
    classify,
    family_report,
    quantum_arcsin,
    tsirelson,
)
from .lp import (
    LinearProgram,
    LpOutcome,
    LpStatus,
    Rational,
    as_rational,
    kernel_backend,
    optimize,
    solve_feasibility,
)
from .quantum import (
    SettingVector,
    random_settings,
    realizability_check,
    singlet_correlations,
    standard_chsh_settings,
    unit,
)
from .sampling import (
    BOUNDARY_MARGIN,
    GRID,
    REJECTION_CAP,
    STRATA,
    derive_seed,
    sample_condition_distribution,
    sample_connection_components,
    sample_scenario_in_family,
    sample_scenario_stratum,
    sample_uniform_marginal_scenario,
    slot_rng,
)

__version__ = "1.0.0"

__all__ = [
    "ALL_PATTERNS",
    "CONNECTION_NAMES",
    "CONNECTION_POSITIONS",
    "CONTEXTS",
    "Classification",
    "ConditionDistribution",
    "ConditionalCoupling",
    "ConnectionVector",
    "Coupling",
    "CouplingVerdict",
    "CorrelationVector",
    "DEFAULT_EPSILON",
    "DomainError",
    "FAMILIES",
    "FAMILY_BELL",
    "FAMILY_QUANTUM",
    "FAMILY_TSIRELSON",
    "FamilyReport",
    "FineCampaignResult",
    "KINDS",
    "LinearProgram",
    "LpOutcome",
    "LpStatus",
    "NoSignalingReport",
    "PairDistribution",
    "PartitionWeights",
    "RATIONALIZE_MAX_DENOMINATOR",
    "Rational",
    "S2_EVEN_BOUND",
    "BOUNDARY_MARGIN",
    "GRID",
    "REJECTION_CAP",
    "STRATA",
    "SamplerExhausted",
    "Scenario",
    "SetRole",
    "SettingVector",
    "SpincoupleError",
    "StructuralError",
    "TSIRELSON_BOUND",
    "UninformativenessCampaignResult",
    "UninformativenessReport",
    "arcsin_sum_max",
    "as_rational",
    "even_partition_coupling",
    "zero_padded_coupling",
    "bell_ch_fine",
    "build_conditional",
    "check_no_signaling",
    "chsh_max",
    "classify",
    "connection_range",
    "correlation",
    "coupling_exists",
    "coupling_from_pattern_map",
    "derive_seed",
    "exact_connection",
    "family_report",
    "fine_agreement_campaign",
    "identity_coupling_exists",
    "independent_coupling",
    "kernel_backend",
    "optimize",
    "pair_coupling_range",
    "pair_coupling_range_lp",
    "pattern_from_key",
    "pattern_key",
    "quantum_arcsin",
    "random_settings",
    "rationalize",
    "realizability_check",
    "sample_condition_distribution",
    "sample_connection_components",
    "sample_scenario_in_family",
    "sample_scenario_stratum",
    "sample_uniform_marginal_scenario",
    "satisfies_s1_prime",
    "satisfies_s2_prime",
    "scenario_from_correlations",
    "simple_conditional_coupling",
    "singlet_correlations",
    "slot_rng",
    "solve_feasibility",
    "standard_chsh_settings",
    "test_equivalent",
    "test_fitting",
    "test_forcing",
    "tsirelson",
    "two_condition_tree",
    "uninformativeness_campaign",
    "uninformativeness_report",
    "unit",
    "verify_conditionals",
    "__version__",
]
