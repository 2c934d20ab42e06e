"""Linear quantum Langevin machinery shared by the converter models.

Assembles drift/diffusion matrices from bath specifications, decides
stability, solves the steady-state Lyapunov equation A V + V A^T + D = 0 by
Schur reduction and quasi-triangular back-substitution, and propagates
transient covariances.

Noise normalisation: this module uses the sqrt(2 kappa) input convention, so
a lone cavity block gets D = kappa (2 N + 1) I and relaxes to variance
N + 1/2.  (The parametric-amplifier module uses the sqrt(kappa) convention of
its own input-output relation and builds its diffusion directly.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np
from scipy import constants, integrate, linalg

from .errors import NoSteadyStateError, StiffnessError, ValidationError

__all__ = [
    "BathSpec",
    "LinearLangevinModel",
    "Stability",
    "thermal_occupation",
    "diffusion_from_baths",
    "is_stable",
    "steady_state_cov",
    "propagate_cov",
]


def thermal_occupation(omega: float, temperature: float) -> float:
    """Mean thermal photon number N = 1/(exp(hbar w / kB T) - 1); 0 at T = 0."""
    if omega <= 0:
        raise ValidationError("thermal_occupation requires omega > 0")
    if temperature < 0:
        raise ValidationError("temperature must be non-negative")
    thermal_energy = constants.k * temperature
    if thermal_energy == 0.0:
        return 0.0
    x = constants.hbar * omega / thermal_energy
    if x > 60.0:
        return math.exp(-x) if x < 700.0 else 0.0
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class BathSpec:
    """One dissipative bath: mode frequency, damping rate, and temperature.

    ``kind`` selects the noise structure: a cavity mode receives isotropic
    input noise on both quadratures, a mechanical mode is Brownian with noise
    entering on the momentum quadrature only.
    """

    omega: float
    damping: float
    temperature: float
    kind: Literal["cavity", "mechanical"] = "cavity"

    def __post_init__(self):
        if self.omega <= 0:
            raise ValidationError("bath frequency must be positive")
        if self.damping < 0:
            raise ValidationError("bath damping must be non-negative")
        if self.temperature < 0:
            raise ValidationError("bath temperature must be non-negative")
        if self.kind not in ("cavity", "mechanical"):
            raise ValidationError(f"unknown bath kind {self.kind!r}")

    def occupation(self) -> float:
        return thermal_occupation(self.omega, self.temperature)


def diffusion_from_baths(baths: Sequence[BathSpec]) -> np.ndarray:
    """Block-diagonal diffusion matrix, one 2x2 block per bath/mode."""
    n = len(baths)
    d = np.zeros((2 * n, 2 * n))
    for i, bath in enumerate(baths):
        weight = bath.damping * (2.0 * bath.occupation() + 1.0)
        if bath.kind == "cavity":
            d[2 * i, 2 * i] = weight
            d[2 * i + 1, 2 * i + 1] = weight
        else:
            d[2 * i + 1, 2 * i + 1] = weight
    return d


@dataclass(frozen=True, eq=False)
class LinearLangevinModel:
    """Drift matrix, diffusion matrix and mode labels of u' = A u + n(t)."""

    drift: np.ndarray
    diffusion: np.ndarray
    mode_labels: tuple[str, ...]

    def __post_init__(self):
        a = np.asarray(self.drift, dtype=float)
        d = np.asarray(self.diffusion, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise ValidationError(f"drift must be square 2N x 2N, got {a.shape}")
        if d.shape != a.shape:
            raise ValidationError("diffusion shape must match drift")
        if not np.isfinite(a).all():
            raise ValidationError("drift must be finite")
        scale = max(1.0, abs(d).max())
        if abs(d - d.T).max() > 1e-10 * scale:
            raise ValidationError("diffusion must be symmetric")
        d = 0.5 * (d + d.T)
        if np.linalg.eigvalsh(d).min() < -1e-10 * scale:
            raise ValidationError("diffusion must be positive semidefinite")
        if len(self.mode_labels) != a.shape[0] // 2:
            raise ValidationError("one mode label per mode is required")
        object.__setattr__(self, "drift", a)
        object.__setattr__(self, "diffusion", d)
        object.__setattr__(self, "mode_labels", tuple(self.mode_labels))

    @property
    def n_modes(self) -> int:
        return self.drift.shape[0] // 2


class Stability(NamedTuple):
    stable: bool
    max_real_part: float


def is_stable(model: LinearLangevinModel) -> Stability:
    """Strict Hurwitz test: every drift eigenvalue has real part < -1e-12."""
    max_re = float(np.linalg.eigvals(model.drift).real.max())
    return Stability(max_re < -1e-12, max_re)


def _schur_blocks(t: np.ndarray) -> list[slice]:
    """Diagonal 1x1/2x2 block slices of a real quasi-triangular Schur factor."""
    n = t.shape[0]
    blocks = []
    k = 0
    while k < n:
        if k + 1 < n and t[k + 1, k] != 0.0:
            blocks.append(slice(k, k + 2))
            k += 2
        else:
            blocks.append(slice(k, k + 1))
            k += 1
    return blocks


def _solve_quasi_triangular_lyapunov(t: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Solve T W + W T^T = C for quasi-upper-triangular T by back-substitution."""
    n = t.shape[0]
    w = np.zeros((n, n))
    blocks = _schur_blocks(t)
    for bj in reversed(blocks):
        for bi in reversed(blocks):
            rhs = c[bi, bj].copy()
            after_i = slice(bi.stop, n)
            after_j = slice(bj.stop, n)
            if bi.stop < n:
                rhs -= t[bi, after_i] @ w[after_i, bj]
            if bj.stop < n:
                rhs -= w[bi, after_j] @ t[bj, after_j].T
            tii = t[bi, bi]
            tjj = t[bj, bj]
            mi = tii.shape[0]
            nj = tjj.shape[0]
            # Small Sylvester system T_ii W_ij + W_ij T_jj^T = rhs via Kronecker.
            sys = np.kron(np.eye(nj), tii) + np.kron(tjj, np.eye(mi))
            w[bi, bj] = np.linalg.solve(sys, rhs.flatten(order="F")).reshape(
                (mi, nj), order="F"
            )
    return w


def steady_state_cov(model: LinearLangevinModel) -> np.ndarray:
    """Unique steady-state covariance of a stable model (Bartels-Stewart).

    Solves A V + V A^T + D = 0 by real Schur reduction of the drift and
    block back-substitution over the quasi-triangular factor.
    """
    stable, max_re = is_stable(model)
    if not stable:
        raise NoSteadyStateError(
            f"drift is not strictly stable (max Re eigenvalue {max_re:.6e})",
            eigenvalue=max_re,
        )
    t, u = linalg.schur(model.drift, output="real")
    c = -(u.T @ model.diffusion @ u)
    w = _solve_quasi_triangular_lyapunov(t, c)
    v = u @ w @ u.T
    v = 0.5 * (v + v.T)
    d_scale = abs(model.diffusion).max()
    residual = abs(model.drift @ v + v @ model.drift.T + model.diffusion).max()
    if d_scale > 0 and residual > 1e-9 * d_scale:
        raise StiffnessError(
            f"Lyapunov residual {residual:.3e} exceeds 1e-9 * ||D||_inf "
            f"(severely ill-conditioned drift)"
        )
    return v


def propagate_cov(model: LinearLangevinModel, v0: np.ndarray, t: float) -> np.ndarray:
    """Integrate dV/dt = A V + V A^T + D from V0 to time t (adaptive, rtol 1e-9)."""
    if t < 0:
        raise ValidationError("propagation time must be non-negative")
    v0 = np.asarray(v0, dtype=float)
    if v0.shape != model.drift.shape:
        raise ValidationError(f"V0 must match the drift shape {model.drift.shape}")
    if t == 0.0:
        return v0.copy()
    a = model.drift
    d = model.diffusion
    dim = a.shape[0]

    def rhs(_t, y):
        v = y.reshape(dim, dim)
        return (a @ v + v @ a.T + d).ravel()

    atol = 1e-12 * max(1.0, abs(v0).max(), abs(d).max())
    sol = integrate.solve_ivp(
        rhs, (0.0, t), v0.ravel(), method="DOP853", rtol=1e-9, atol=atol
    )
    if not sol.success:
        raise StiffnessError(
            f"covariance ODE failed ({sol.message}); consider steady_state_cov"
        )
    v = sol.y[:, -1].reshape(dim, dim)
    return 0.5 * (v + v.T)
