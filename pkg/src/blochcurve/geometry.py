"""Geometric observables of the quantum evolution: speed, acceleration, the
curvature coefficient by three independent routes, efficiencies, and the
extrema/period summary of the built-in scenario.

Conventions held throughout: ℏ = 1 and the speed is v = ΔE = √(⟨H²⟩ − ⟨H⟩²)
(unit proportionality between speed and energy dispersion). The curvature
coefficient κ² is dimensionless and nonnegative; values in [−1e-9, 0) are
round-off and clip to 0, anything more negative raises, because that
distinguishes float noise from an implementation bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics
from .errors import (
    InvalidArgumentError,
    NumericalConsistencyError,
    SingularityError,
    UndefinedEfficiencyError,
)
from .fields import FieldSpec, ScenarioParams
from .qubit_core import IDENTITY
from .special_functions import adaptive_simpson, elliptic_e

EPSILON_SINGULAR = 1e-12   # denominator / speed floor below which curvature is undefined
KAPPA2_CLIP_FLOOR = -1e-9  # analytic routes: clip [floor, 0) to 0, raise below
EXPECT_CLIP_FLOOR = -1e-8  # finite-difference route tolerates more round-off
EXPECT_IMAG_ATOL = 1e-8
DEFAULT_EXPECT_DT = 1e-4


@dataclass(frozen=True)
class GeometryRecord:
    """All scalar observables of the built-in scenario at one node."""

    t: float
    v: float
    acc: float
    kappa2_closed: float
    kappa2_bloch: float
    kappa2_expect: float
    ratio: float
    eta_se: float
    s: float
    beta: float

    def __post_init__(self):
        if self.v < 0.0:
            raise InvalidArgumentError("speed must be nonnegative")
        for val in (self.kappa2_closed, self.kappa2_bloch, self.kappa2_expect):
            if val < KAPPA2_CLIP_FLOOR:
                raise NumericalConsistencyError(f"kappa2 below clip floor: {val!r}")
        if not -1e-12 <= self.eta_se <= 1.0 + 1e-12:
            raise NumericalConsistencyError(f"eta_se out of [0, 1]: {self.eta_se!r}")


@dataclass(frozen=True)
class ExtremaSummary:
    """Closed-form extrema of v, acc, κ², ratio over one period [0, T)."""

    v_max: float
    v_min: float
    t_vmax: float
    t_vmin: float
    acc_max: float
    acc_min: float
    t_accmax: float
    t_accmin: float
    kappa2_max: float
    kappa2_min: float
    t_k2max: float
    t_k2min: float
    ratio_max: float
    ratio_min: float
    period: float


def speed(params: ScenarioParams, t: float) -> float:
    """Evolution speed v(t) = ω₀ √(1 + (1/4)(ν₀/ω₀)² sin²(2ω₀t)).

    Equals the energy dispersion ΔE of the built-in scenario; constant ω₀ in
    the geodesic limit ν₀ = 0.
    """
    w, n = params.omega0, params.nu0
    s2 = math.sin(2.0 * w * t)
    return w * math.sqrt(1.0 + 0.25 * (n / w) ** 2 * s2 * s2)


def acceleration(params: ScenarioParams, t: float) -> float:
    """dv/dt = (1/4)ν₀² sin(4ω₀t) / √(1 + (1/4)(ν₀/ω₀)² sin²(2ω₀t))."""
    w, n = params.omega0, params.nu0
    s2 = math.sin(2.0 * w * t)
    return (
        0.25 * n * n * math.sin(4.0 * w * t)
        / math.sqrt(1.0 + 0.25 * (n / w) ** 2 * s2 * s2)
    )


def curvature_closed(params: ScenarioParams, t: float) -> float:
    """Closed-form curvature coefficient of the built-in scenario.

    κ²(t) = [sin²(4ω₀t) + 32(ω₀/ν₀)²(1 + cos(4ω₀t))] / [sin²(2ω₀t) + 4(ω₀/ν₀)²]²
            − 4(ω₀/ν₀)² sin²(4ω₀t) / [sin²(2ω₀t) + 4(ω₀/ν₀)²]³

    Periodic with T = π/(2ω₀); maxima 4(ν₀/ω₀)² at t = nT, minima 0 at
    t = π/(4ω₀) + nT. Returns 0 identically in the geodesic limit ν₀ = 0.
    """
    w, n = params.omega0, params.nu0
    if n == 0.0:
        return 0.0
    r2 = (w / n) ** 2
    s2 = math.sin(2.0 * w * t)
    s4 = math.sin(4.0 * w * t)
    c4 = math.cos(4.0 * w * t)
    den = s2 * s2 + 4.0 * r2
    value = (s4 * s4 + 32.0 * r2 * (1.0 + c4)) / den**2 - 4.0 * r2 * s4 * s4 / den**3
    return _clip_nonneg(value, KAPPA2_CLIP_FLOOR)


def curvature_bloch(a, h, h_dot, eps_sing: float = EPSILON_SINGULAR) -> float:
    """Curvature coefficient from the Bloch vector a and the field pair (h, ḣ).

    With D = h² − (a·h)² the three contributions are

        κ² = 4(a·h)²/D
           + ( [h²ḣ² − (h·ḣ)²] − ‖(a·ḣ)h − (a·h)ḣ‖² ) / D³
           + 4(a·h)·[a·(h×ḣ)] / D².

    When a·h = a·ḣ = 0 this collapses to [h²ḣ² − (h·ḣ)²]/h⁶. D ≤ ``eps_sing``
    means a is (numerically) collinear with h, i.e. an instantaneous
    eigenstate with zero speed, where curvature is undefined.
    """
    av = np.asarray(a, dtype=float).reshape(3)
    if abs(float(av @ av) - 1.0) > 1e-9:
        raise InvalidArgumentError("Bloch vector a must have unit length")
    hv = np.asarray(h, dtype=float).reshape(3)
    hd = np.asarray(h_dot, dtype=float).reshape(3)

    h2 = float(hv @ hv)
    ah = float(av @ hv)
    den = h2 - ah * ah
    if den <= eps_sing:
        raise SingularityError(
            "state is an instantaneous eigenstate (a collinear with h); "
            "curvature is undefined"
        )
    adh = float(av @ hd)
    hdh = float(hv @ hd)
    hd2 = float(hd @ hd)
    wvec = adh * hv - ah * hd
    term1 = 4.0 * ah * ah / den
    term2 = ((h2 * hd2 - hdh * hdh) - float(wvec @ wvec)) / den**3
    term3 = 4.0 * ah * float(av @ np.cross(hv, hd)) / den**2
    return _clip_nonneg(term1 + term2 + term3, KAPPA2_CLIP_FLOOR)


def curvature_expectation(
    spec: FieldSpec,
    state,
    t: float,
    dt: float = DEFAULT_EXPECT_DT,
    eps_sing: float = EPSILON_SINGULAR,
) -> float:
    """Curvature coefficient from operator expectation values in ``state``.

    Builds Δh = (H − ⟨H⟩)/v as a 2x2 operator and its along-the-flow rate
    Δh′ = [∂ₜ(Δh)]/v, the latter by symmetric differencing at t ± dt with the
    state advanced by one integrator step (the derivative must follow the
    evolving expectation values, not a frozen state). Then

        κ² = ⟨(Δh)⁴⟩ − ⟨(Δh)²⟩²  +  ⟨(Δh′)²⟩ − ⟨Δh′⟩²  +  i⟨[(Δh)², Δh′]⟩.

    The total must be real within ``EXPECT_IMAG_ATOL`` and nonnegative within
    ``EXPECT_CLIP_FLOOR``. For a stationary H the Δh′ terms vanish and the
    kurtosis-like first pair remains.
    """
    if not (dt > 0.0 and math.isfinite(dt)):
        raise InvalidArgumentError(f"dt must be > 0, got {dt!r}")
    psi = np.asarray(state, dtype=complex).reshape(2)
    if abs(float(np.linalg.norm(psi)) - 1.0) > 1e-10:
        raise InvalidArgumentError("state must be normalized")

    dh, v = _deviation_operator(spec, psi, t, eps_sing)

    psi_p = schrodinger_unit_step(spec, psi, t, dt)
    psi_m = schrodinger_unit_step(spec, psi, t, -dt)
    dh_p, _ = _deviation_operator(spec, psi_p, t + dt, eps_sing)
    dh_m, _ = _deviation_operator(spec, psi_m, t - dt, eps_sing)
    dh_prime = (dh_p - dh_m) / (2.0 * dt * v)

    dh2 = dh @ dh
    total = (
        _cexp(dh2 @ dh2, psi)
        - _cexp(dh2, psi) ** 2
        + _cexp(dh_prime @ dh_prime, psi)
        - _cexp(dh_prime, psi) ** 2
        + 1j * _cexp(dh2 @ dh_prime - dh_prime @ dh2, psi)
    )
    if abs(total.imag) > EXPECT_IMAG_ATOL:
        raise NumericalConsistencyError(
            f"curvature has imaginary residue {total.imag:.3e}"
        )
    return _clip_nonneg(total.real, EXPECT_CLIP_FLOOR)


def speed_efficiency(h0: float, h, a) -> float:
    """Speed efficiency η_SE = √(h·h − (a·h)²) / (|h₀| + √(h·h)).

    The numerator is the energy dispersion in the state with Bloch vector a,
    the denominator the spectral norm of H (largest |eigenvalue|, from
    eig(H†H) = (h₀ ± ‖h‖)²). Equals 1 exactly when h₀ = 0 and a ⊥ h: all of
    the Hamiltonian drives the state.
    """
    hv = np.asarray(h, dtype=float).reshape(3)
    av = np.asarray(a, dtype=float).reshape(3)
    h_sq = float(hv @ hv)
    if h_sq == 0.0 and h0 == 0.0:
        raise UndefinedEfficiencyError("zero Hamiltonian has no speed efficiency")
    num = math.sqrt(max(h_sq - float(av @ hv) ** 2, 0.0))
    return num / (abs(h0) + math.sqrt(h_sq))


def geodesic_efficiency(params: ScenarioParams) -> float:
    """Geodesic efficiency of the built-in evolution between the orthogonal
    endpoint states at t = 0 and t = π/(2ω₀):

        η_GE = (π/2) / E(−(1/4)(ν₀/ω₀)²).

    Equals 1 iff ν₀ = 0 (great-circle path); below 1 otherwise because the
    actual arc exceeds the geodesic distance π/2.
    """
    ratio = params.nu0 / params.omega0
    return (math.pi / 2.0) / elliptic_e(-0.25 * ratio * ratio)


def geodesic_efficiency_generic(traj: dynamics.Trajectory) -> float:
    """Geodesic efficiency of an arbitrary trajectory:
    2·arccos|⟨ψ(t0)|ψ(t1)⟩| / (2·s(t1)), geodesic distance over path length.
    """
    s_total = float(traj.arc[-1])
    if s_total <= 0.0:
        raise UndefinedEfficiencyError("zero arc length; efficiency undefined")
    overlap = min(abs(complex(np.vdot(traj.states[0], traj.states[-1]))), 1.0)
    return 2.0 * math.acos(overlap) / (2.0 * s_total)


def extrema_summary(params: ScenarioParams) -> ExtremaSummary:
    """Closed-form extrema of the scenario observables with their first
    attainment times in [0, T), T = π/(2ω₀).

    The acceleration extremum is a genuine critical point of the quotient
    acc = (ν₀²/4)sin(4ω₀t)/v, not of its numerator alone: with
    u = sin²(2ω₀t), d(acc)/dt = 0 gives r²u² + 8u − 4 = 0 (r = ν₀/ω₀), so

        u* = 2 / (2 + √(4 + r²)),    t* = arcsin(√u*)/(2ω₀),

    and acc(T − t) = −acc(t) places the minimum at T − t*. In the weak-drive
    limit r → 0 this reduces to u* = 1/2, i.e. the familiar t* = π/(8ω₀) and
    acc_max = (ν₀²/4)[1 + r²/8]^{−1/2}; at finite r those limiting
    expressions miss the true extremum (by 3.7e-4 in value at r = 1), which
    is why the exact forms are used here.
    """
    w, n = params.omega0, params.nu0
    r = n / w
    period = math.pi / (2.0 * w)
    u = 2.0 / (2.0 + math.sqrt(4.0 + r * r))
    t_acc = math.asin(math.sqrt(u)) / (2.0 * w)
    acc_max = (
        0.25 * n * n * 2.0 * math.sqrt(u * (1.0 - u))
        / math.sqrt(1.0 + 0.25 * r * r * u)
    )
    return ExtremaSummary(
        v_max=w * math.sqrt(1.0 + 0.25 * r * r),
        v_min=w,
        t_vmax=math.pi / (4.0 * w),
        t_vmin=0.0,
        acc_max=acc_max,
        acc_min=-acc_max,
        t_accmax=t_acc,
        t_accmin=period - t_acc,
        kappa2_max=4.0 * r * r,
        kappa2_min=0.0,
        t_k2max=0.0,
        t_k2min=math.pi / (4.0 * w),
        ratio_max=0.25 * r * r,
        ratio_min=0.0,
        period=period,
    )


def scenario_records(
    params: ScenarioParams,
    grid: dynamics.TimeGrid,
    expect_dt: float = DEFAULT_EXPECT_DT,
) -> list[GeometryRecord]:
    """Evaluate every observable of the built-in scenario on a time grid.

    Arc length accumulates interval-by-interval adaptive quadrature of the
    closed-form speed; the stored phase column is β(t) = −φ(t) (see
    ``dynamics.transport_phase_closed`` for the gauge bookkeeping).
    """
    from . import fields as fields_mod

    spec = fields_mod.TwoParameterField(params)
    records = []
    s = 0.0
    prev_t = None
    for t in grid.times():
        t = float(t)
        sample = fields_mod.two_parameter_field(params, t)
        a = dynamics.analytic_bloch(params, t)
        if prev_t is not None:
            s += adaptive_simpson(lambda tt: speed(params, tt), prev_t, t, 1e-12).value
        prev_t = t
        records.append(
            GeometryRecord(
                t=t,
                v=speed(params, t),
                acc=acceleration(params, t),
                kappa2_closed=curvature_closed(params, t),
                kappa2_bloch=curvature_bloch(a, sample.h, sample.h_dot),
                kappa2_expect=curvature_expectation(
                    spec, dynamics.analytic_state(params, t), t, expect_dt
                ),
                ratio=fields_mod.parallel_transverse_ratio(params, t),
                eta_se=speed_efficiency(sample.h0, sample.h, a),
                s=s,
                beta=-dynamics.transport_phase_closed(params, t),
            )
        )
    return records


def schrodinger_unit_step(spec: FieldSpec, psi: np.ndarray, t: float, dt: float) -> np.ndarray:
    """One renormalized RK4 step (helper for the expectation route)."""
    raw = dynamics.schrodinger_step(spec, psi, t, dt)
    return raw / np.linalg.norm(raw)


def _deviation_operator(spec, psi, t, eps_sing):
    h = dynamics.hamiltonian_at(spec, t)
    hpsi = h @ psi
    e = float(np.real(np.vdot(psi, hpsi)))
    var = float(np.real(np.vdot(hpsi, hpsi))) - e * e
    v = math.sqrt(max(var, 0.0))
    if v <= eps_sing:
        raise SingularityError(
            f"evolution speed {v:.3e} below singular threshold at t = {t!r}", t=t
        )
    return (h - e * IDENTITY) / v, v


def _cexp(op: np.ndarray, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, op @ psi))


def _clip_nonneg(value: float, floor: float) -> float:
    if value >= 0.0:
        return value
    if value >= floor:
        return 0.0
    raise NumericalConsistencyError(
        f"curvature {value!r} is negative beyond round-off tolerance {floor!r}"
    )
