"""Weight distributions of the trace-representation families."""

from .expsums import (PairScan, QuadFormSpec, ValueDistribution, T_distribution, T_moment_check,
                      closed_T_distribution, eta_power_sum, eta_twist_check, quadratic_form_rank,
                      side_conditions_odd, weight_formula_check)
from .families import (KINDS, TraceFamily, build_family, concat_structure_check, delsarte_family,
                       enumerate_weights, equivalence_witness, family_spans_code)
from .tables import closed_form_distribution

__all__ = [
    "KINDS", "PairScan", "QuadFormSpec", "TraceFamily", "T_distribution", "T_moment_check",
    "ValueDistribution", "build_family", "closed_T_distribution", "closed_form_distribution",
    "concat_structure_check", "delsarte_family", "enumerate_weights", "equivalence_witness",
    "eta_power_sum", "eta_twist_check", "family_spans_code", "quadratic_form_rank",
    "side_conditions_odd", "weight_formula_check",
]
