"""Opto-electronic converter: optical cavity coupled to a microwave cavity
through a photodetector/varactor chain.

Structurally a sibling of the electro-opto-mechanical model, with the
photodetector pair (q_x, p_x) as mediator at its transition frequency
omega_eg; because that frequency is optical, the mediator bath is empty even
at kelvin temperatures, which is what lets this converter hold entanglement
where the mechanical one cannot.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants, optimize

from .channels import GaussianChannel, round_trip
from .criteria import BipartiteBlocks, CriteriaReport, gaussian_discord
from .errors import ConvergenceError, NoSteadyStateError, ValidationError
from .gaussian import GaussianState, apply_channel
from .langevin import (
    BathSpec,
    LinearLangevinModel,
    diffusion_from_baths,
    is_stable,
    steady_state_cov,
)
from .sweeps import bisect_threshold, run_grid

__all__ = [
    "OeParams",
    "OeOperatingPoint",
    "PdMaterialSpec",
    "DetuningSweep",
    "DetuningPoint",
    "coupling_gop",
    "gwp_from_mu_c",
    "operating_point",
    "drift_matrix",
    "build_model",
    "direct_report",
    "entanglement_vs_detuning",
    "end_to_end_report",
    "threshold_temperature",
]


@dataclass(frozen=True)
class OeParams:
    """Converter parameters (rates rad/s, temperature kelvin).

    ``mu_c`` is the dimensionless capacitance sensitivity; ``g_wp`` is the
    microwave/photodetector coupling it generates (see :func:`gwp_from_mu_c`).
    The absolute frequencies are needed for the bath occupations.
    """

    delta_c: float
    delta_w: float
    delta_eg: float
    kappa_c: float
    kappa_w: float
    gamma_p: float
    g_op: float
    g_wp: float
    mu_c: float
    temperature: float
    e_c: float
    e_w: float
    omega_c: float = 2.332e15          # 808 nm
    omega_w: float = 2 * math.pi * 10e9
    omega_eg: float = 2.332e15

    def __post_init__(self):
        for name in ("kappa_c", "kappa_w", "gamma_p", "g_op", "g_wp", "mu_c", "e_c", "e_w"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be non-negative")
        for name in ("omega_c", "omega_w", "omega_eg"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")
        if self.temperature < 0:
            raise ValidationError("temperature must be non-negative")


@dataclass(frozen=True)
class OeOperatingPoint:
    a_s: complex
    c_s: complex
    p_s: float
    x_s: float
    residual: float


@dataclass(frozen=True)
class PdMaterialSpec:
    """Photodetector material constants for the perturbative coupling rate."""

    dipole_moment: float        # C m
    density_of_states: float    # 1/(J m^3), evaluated at hbar omega_eg
    lorentzian_width: float     # rad/s (half width)
    mode_volume: float          # m^3

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValidationError(f"{f.name} must be positive")


def coupling_gop(spec: PdMaterialSpec, omega_c: float, omega_eg: float) -> float:
    """First-order perturbative optical/photodetector coupling rate.

    g_op = (pi omega_c / eps0 V_m) mu^2 g_J(hbar omega_eg) L(omega_eg), with
    the Lorentzian line shape evaluated on resonance, L = 1/(pi width).
    """
    if omega_c <= 0 or omega_eg <= 0:
        raise ValidationError("frequencies must be positive")
    lorentzian_peak = 1.0 / (math.pi * spec.lorentzian_width)
    return (
        math.pi
        * omega_c
        / (constants.epsilon_0 * spec.mode_volume)
        * spec.dipole_moment**2
        * spec.density_of_states
        * lorentzian_peak
    )


def gwp_from_mu_c(
    mu_c: float,
    omega_w: float = 2 * math.pi * 10e9,
    depletion_width: float = 1e-6,
    m_eff: float = 0.067 * constants.m_e,
    omega_eg: float = 2.332e15,
) -> float:
    """Microwave/photodetector coupling from the capacitance sensitivity,
    g_wp = (mu_c omega_w / 2 d) sqrt(hbar / (omega_eg m_eff))."""
    if mu_c < 0:
        raise ValidationError("mu_c must be non-negative")
    return mu_c * omega_w / (2.0 * depletion_width) * math.sqrt(
        constants.hbar / (omega_eg * m_eff)
    )


def _residual(params: OeParams, a_s, c_s, p_s, x_s) -> float:
    f1 = (
        -(1j * (params.delta_c + params.g_op * p_s) + params.kappa_c) * a_s
        + params.e_c
    )
    f2 = (
        -(1j * (params.delta_w - params.g_wp * x_s) + params.kappa_w) * c_s
        + params.e_w
    )
    f3 = params.delta_eg * p_s + params.g_op * abs(a_s) ** 2
    f4 = (
        -params.gamma_p * p_s
        - params.delta_eg * x_s
        + params.g_wp * abs(c_s) ** 2
    )
    scale = max(1.0, abs(params.e_c), abs(params.e_w))
    return max(abs(f1), abs(f2), abs(f3), abs(f4)) / scale


def operating_point(params: OeParams, max_iter: int = 10_000) -> OeOperatingPoint:
    """Driven fixed point; the photodetector pair is singular at delta_eg = 0."""
    if params.delta_eg == 0.0:
        raise ConvergenceError(
            "operating point is singular at delta_eg = 0 (undamped static mediator)"
        )
    a_s = 0.0 + 0.0j
    c_s = 0.0 + 0.0j
    p_s = 0.0
    x_s = 0.0
    damp = 0.5
    for _ in range(max_iter):
        a_new = params.e_c / (1j * (params.delta_c + params.g_op * p_s) + params.kappa_c)
        c_new = params.e_w / (1j * (params.delta_w - params.g_wp * x_s) + params.kappa_w)
        p_new = -params.g_op * abs(a_new) ** 2 / params.delta_eg
        x_new = (params.g_wp * abs(c_new) ** 2 - params.gamma_p * p_new) / params.delta_eg
        a_s = (1 - damp) * a_s + damp * a_new
        c_s = (1 - damp) * c_s + damp * c_new
        p_s = (1 - damp) * p_s + damp * p_new
        x_s = (1 - damp) * x_s + damp * x_new
        if _residual(params, a_s, c_s, p_s, x_s) <= 1e-9:
            return OeOperatingPoint(a_s, c_s, p_s, x_s, _residual(params, a_s, c_s, p_s, x_s))

    def system(v):
        a = v[0] + 1j * v[1]
        c = v[2] + 1j * v[3]
        p, x = v[4], v[5]
        f1 = -(1j * (params.delta_c + params.g_op * p) + params.kappa_c) * a + params.e_c
        f2 = -(1j * (params.delta_w - params.g_wp * x) + params.kappa_w) * c + params.e_w
        f3 = params.delta_eg * p + params.g_op * abs(a) ** 2
        f4 = -params.gamma_p * p - params.delta_eg * x + params.g_wp * abs(c) ** 2
        return [f1.real, f1.imag, f2.real, f2.imag, f3, f4]

    sol = optimize.root(system, [a_s.real, a_s.imag, c_s.real, c_s.imag, p_s, x_s])
    a_s = sol.x[0] + 1j * sol.x[1]
    c_s = sol.x[2] + 1j * sol.x[3]
    p_s, x_s = sol.x[4], sol.x[5]
    residual = _residual(params, a_s, c_s, p_s, x_s)
    if residual > 1e-9:
        raise ConvergenceError(
            f"operating point did not converge (relative residual {residual:.3e})",
            residual=residual,
        )
    return OeOperatingPoint(a_s, c_s, p_s, x_s, residual)


def drift_matrix(params: OeParams, op_point: OeOperatingPoint) -> np.ndarray:
    """Linearized 6x6 drift in (q_x, p_x, X_c, Y_c, X_w, Y_w) order.

    Both cavity frames are rotated so A_s and C_s are real and positive; the
    detunings carry the operating-point shifts delta_c + g_op P_s and
    delta_w - g_wp X_s.
    """
    a_s = abs(op_point.a_s)
    c_s = abs(op_point.c_s)
    ga = math.sqrt(2.0) * params.g_op * a_s
    gc = math.sqrt(2.0) * params.g_wp * c_s
    dc1 = params.delta_c + params.g_op * op_point.p_s
    dw1 = params.delta_w - params.g_wp * op_point.x_s
    deg = params.delta_eg
    return np.array([
        [0.0, deg, ga, 0.0, 0.0, 0.0],
        [-deg, -params.gamma_p, 0.0, 0.0, gc, 0.0],
        [0.0, 0.0, -params.kappa_c, dc1, 0.0, 0.0],
        [0.0, -ga, -dc1, -params.kappa_c, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -params.kappa_w, dw1],
        [gc, 0.0, 0.0, 0.0, -dw1, -params.kappa_w],
    ])


def build_model(params: OeParams) -> LinearLangevinModel:
    op = operating_point(params)
    baths = [
        BathSpec(params.omega_eg, params.gamma_p, params.temperature, "mechanical"),
        BathSpec(params.omega_c, params.kappa_c, params.temperature, "cavity"),
        BathSpec(params.omega_w, params.kappa_w, params.temperature, "cavity"),
    ]
    return LinearLangevinModel(
        drift_matrix(params, op), diffusion_from_baths(baths), ("pd", "oc", "mc")
    )


def _oc_mc_state(params: OeParams) -> GaussianState:
    """Steady-state two-mode (OC, MC) reduced state."""
    model = build_model(params)
    stable, max_re = is_stable(model)
    if not stable:
        raise NoSteadyStateError(
            f"converter drift is unstable at these parameters (max Re {max_re:.3e})",
            eigenvalue=max_re,
        )
    cov = steady_state_cov(model)
    GaussianState(3, np.zeros(6), cov).validate_physical(1e-6)
    return GaussianState(2, np.zeros(4), cov[2:6, 2:6])


def direct_report(params: OeParams) -> CriteriaReport:
    """Criteria between the intracavity OC and MC modes."""
    state = _oc_mc_state(params)
    return gaussian_discord(BipartiteBlocks.from_covariance(state.cov))


@dataclass(frozen=True)
class DetuningPoint:
    delta_eg: float
    two_eta: float | None
    stable: bool


@dataclass(frozen=True)
class DetuningSweep:
    points: list[DetuningPoint]
    argmin_delta_eg: float | None
    min_two_eta: float | None


def entanglement_vs_detuning(
    params: OeParams, delta_eg_grid, parallelism: int = 1
) -> DetuningSweep:
    """2eta(OC-MC) versus photodetector detuning, with instability markers."""
    grid = [float(v) for v in delta_eg_grid]
    if not all(math.isfinite(v) for v in grid):
        raise ValidationError("detuning grid must be finite")

    def point(value: float) -> DetuningPoint:
        try:
            rep = direct_report(dataclasses.replace(params, delta_eg=value))
        except (NoSteadyStateError, ConvergenceError):
            return DetuningPoint(value, None, False)
        return DetuningPoint(value, rep.two_eta, True)

    points = run_grid(point, grid, parallelism)
    stable_pts = [p for p in points if p.stable]
    if stable_pts:
        best = min(stable_pts, key=lambda p: p.two_eta)
        return DetuningSweep(points, best.delta_eg, best.two_eta)
    return DetuningSweep(points, None, None)


def end_to_end_report(
    params: OeParams,
    channel_spec: GaussianChannel,
    target_spec: GaussianChannel,
) -> CriteriaReport:
    """Criteria between the retained OC mode and the returned mode c_b.

    The MC mode of the steady-state (OC, MC) covariance is sent out through
    ``channel_spec``, scattered by ``target_spec``, and returned through the
    same medium.
    """
    state = _oc_mc_state(params)
    composite = round_trip(channel_spec, target_spec, channel_spec)
    returned = apply_channel(state, composite.expand(mode=1, n_modes=2))
    return gaussian_discord(BipartiteBlocks.from_covariance(returned.cov))


def threshold_temperature(
    params: OeParams,
    resolution: float = 1e-3,
    t_max: float = 8.0,
    channel_spec: GaussianChannel | None = None,
    target_spec: GaussianChannel | None = None,
) -> float | None:
    """Temperature where 2eta(OC-MC) crosses 1, by bisection to ``resolution``.

    With a channel/target pair the threshold of the backscattered mode c_b is
    located instead.
    """

    def crossing(temperature: float) -> float:
        p = dataclasses.replace(params, temperature=temperature)
        if channel_spec is None:
            return direct_report(p).two_eta - 1.0
        return end_to_end_report(p, channel_spec, target_spec).two_eta - 1.0

    return bisect_threshold(crossing, lo=1e-4, hi=t_max, resolution=resolution)
