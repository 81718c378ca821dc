"""Finite-difference experiments for the time evolution of a microcrack length distribution."""
from .analytic import (
    CharacteristicState,
    analytic_field,
    analytic_solution,
    characteristic_foot,
    characteristic_state,
    gated_solution,
    generalized_incomplete_gamma,
    lower_incomplete_gamma,
)
from .diagnostics import (
    ComparisonReport,
    PrecisionReport,
    compare_run,
    moment,
    norm_error,
    precision_experiment,
    total_variation,
)
from .grid import ContractError, Field, Grid, Params, Trajectory, node_length, validate
from .physics import (
    Exponential,
    StepWise,
    crack_velocity,
    growth_active,
    initial_density,
    initial_field,
    sigma_at,
)
from .solver import (
    Precision,
    RunConfig,
    SchemeKind,
    blowup_check,
    ftcs_step,
    run,
    upwind_step,
)

__all__ = [name for name in dir() if not name.startswith("_")]
