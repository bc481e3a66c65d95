"""Differential geometry of driven two-level quantum dynamics.

The library evaluates the curvature coefficient of a qubit trajectory by
three independent routes (closed form, field three-vector form, operator
expectation form), integrates the Schrödinger and Bloch pictures with
cross-checks, and exposes speed, acceleration, transport phase, arc length,
and the speed/geodesic efficiencies, all behind a deterministic CLI.
"""

from .dynamics import (
    TimeGrid,
    Trajectory,
    analytic_bloch,
    analytic_state,
    analytic_state_derivative,
    arc_length_closed,
    bloch_step,
    hamiltonian_at,
    integrate_bloch,
    integrate_schrodinger,
    schrodinger_step,
    synthesize_hamiltonian,
    transport_phase_closed,
)
from .errors import (
    BlochCurveError,
    ContractViolationError,
    ConvergenceError,
    DomainError,
    IntegrationInstabilityError,
    InvalidArgumentError,
    NumericalConsistencyError,
    SingularityError,
    UndefinedEfficiencyError,
)
from .fields import (
    CallableField,
    FieldSample,
    FieldSpec,
    ScenarioParams,
    TwoParameterField,
    default_derivative_step,
    field_derivative,
    h_parallel_sq,
    h_transverse_sq,
    parallel_transverse_ratio,
    two_parameter_field,
)
from .geometry import (
    ExtremaSummary,
    GeometryRecord,
    acceleration,
    curvature_bloch,
    curvature_closed,
    curvature_expectation,
    extrema_summary,
    geodesic_efficiency,
    geodesic_efficiency_generic,
    scenario_records,
    speed,
    speed_efficiency,
)
from .qubit_core import (
    BlochVector,
    PauliDecomp,
    QubitState,
    bloch_vector,
    expectation,
    fidelity,
    pauli_compose,
    pauli_decompose,
    state_from_angles,
)
from .special_functions import (
    QuadratureResult,
    adaptive_simpson,
    carlson_rd,
    carlson_rf,
    elliptic_e,
)
from .validation import (
    DEFAULT_TOLERANCES,
    CheckResult,
    run_battery,
    tilted_field_fixture,
)

__version__ = "0.1.0"

__all__ = [
    "BlochCurveError",
    "BlochVector",
    "CallableField",
    "CheckResult",
    "ContractViolationError",
    "ConvergenceError",
    "DEFAULT_TOLERANCES",
    "DomainError",
    "ExtremaSummary",
    "FieldSample",
    "FieldSpec",
    "GeometryRecord",
    "IntegrationInstabilityError",
    "InvalidArgumentError",
    "NumericalConsistencyError",
    "PauliDecomp",
    "QuadratureResult",
    "QubitState",
    "ScenarioParams",
    "SingularityError",
    "TimeGrid",
    "Trajectory",
    "TwoParameterField",
    "UndefinedEfficiencyError",
    "acceleration",
    "adaptive_simpson",
    "analytic_bloch",
    "analytic_state",
    "analytic_state_derivative",
    "arc_length_closed",
    "bloch_step",
    "bloch_vector",
    "carlson_rd",
    "carlson_rf",
    "curvature_bloch",
    "curvature_closed",
    "curvature_expectation",
    "default_derivative_step",
    "elliptic_e",
    "expectation",
    "extrema_summary",
    "fidelity",
    "field_derivative",
    "geodesic_efficiency",
    "geodesic_efficiency_generic",
    "h_parallel_sq",
    "h_transverse_sq",
    "hamiltonian_at",
    "integrate_bloch",
    "integrate_schrodinger",
    "parallel_transverse_ratio",
    "pauli_compose",
    "pauli_decompose",
    "run_battery",
    "scenario_records",
    "schrodinger_step",
    "speed",
    "speed_efficiency",
    "state_from_angles",
    "synthesize_hamiltonian",
    "tilted_field_fixture",
    "transport_phase_closed",
    "two_parameter_field",
]
