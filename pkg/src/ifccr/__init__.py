"""Bounds, regimes, and rate regions for the Gaussian interference channel
with a cognitive relay (unit-power standard form, rates in bits)."""

from .gauss import (DomainError, UsageError, DegenerateInputError,
                    GeneralChannel, ChannelGains, InputCoeffs, NoiseCorr,
                    JointCovariance, to_standard_form, build_joint_covariance,
                    build_general_covariance, mutual_info, mi_pair, mi_batch,
                    effective_coeffs, cap)
from .regimes import (RegimeReport, classify, beta2_star, is_strong_at_rx1,
                      is_strong_at_rx2, is_vsi_at_rx1, is_vsi_at_rx2,
                      is_strong_both, degraded_rho, condition_oracle,
                      vsi_extra_rx1)
from .regions import (RatePoint, Frontier, RegionEvaluator, ContainmentReport,
                      directions, frontier, support_value, contains,
                      convexify, polytope_support)
from .outer import (SatoParams, WeakParams, sato_polytope, sato_frontier,
                    strong_rx1_outer, strong_rx2_outer, strong_both_region,
                    strong_rx1_frontier, strong_rx2_frontier,
                    strong_both_frontier, weak_degraded_outer,
                    weak_degraded_frontier)
from .ratesplit import (MITerms, SubRateVector, project, project_frontier,
                        jiang_mask, simplex_max, theorem_drops)
from .inner import (GaussAssign, SCHEME_IDS, mi_terms_for_scheme,
                    region_all_common, region_all_private,
                    region_one_common_one_private,
                    region_common_sources_private_relay, inner_frontier,
                    capacity_vsi, mmse_lambdas)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "1.0.0"
