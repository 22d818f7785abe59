"""Exact Kempf-Rousseau-Hesselink stratification of nilpotent cones."""

from .exact_geometry import GramForm, MinNormCertificate, min_norm_point, origin_in_hull, pairing, transport, vec
from .induction import InductionResult, independence_check, induce, sampling_fallback, transitivity_check, xi_indicator
from .instability import (
    KempfDatum,
    candidate_labels,
    generic_semistable,
    stratum_nonempty,
    torus_optimal,
    vector_label,
)
from .root_datum import ParabolicSpec, RelativeRootDatum, RootDatum, build, build_relative, dominantize, mu_P, weyl_group
from .stratification import (
    StratumLabel,
    StrataTable,
    enumerate_strata,
    isogeny_invariance_check,
    norm_invariance_check,
    regular_label,
)
from .weighted_module import WeightedModule, adjoint_module, filtration_dims, graded_piece, levi_perp

__version__ = "0.1.0"
