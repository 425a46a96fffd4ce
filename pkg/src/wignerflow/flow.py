"""Exact phase-space flow for V(x, t) = gamma x^2 + Q(t) x (2m = 1 units).

The transport equation dW/dt = -2 xi dW/dx + (2 gamma x + Q(t)) dW/dxi is
solved by composing the initial field with an affine backward map whose six
coefficients follow closed forms in every curvature regime: trigonometric
for gamma > 0, hyperbolic for gamma < 0 (the analytic continuation keeps the
Wronskian a2*b1 - a1*b2 = -1), and a series in gamma*t^2 near gamma = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .catalog import HarmonicEigen
from .errors import ConfigurationError, NumericalConsistencyError
from .grids import PhaseSpaceGrid
from .tolerances import GAMMA_EPS
from .transform import WignerField

_QUAD_TOL = 1e-10


@dataclass(frozen=True)
class Constant:
    """Q(t) = lam (a linear Stark term; lam = 0 is the undriven oscillator)."""

    lam: float = 0.0


@dataclass(frozen=True)
class Cosine:
    """Q(t) = lam + b*cos(Omega*t)."""

    lam: float
    b: float
    Omega: float


@dataclass(frozen=True)
class Tabulated:
    """Q(t) linearly interpolated between samples; constant beyond the table."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.ndim != 1 or t.size < 2 or t.shape != v.shape:
            raise ConfigurationError("tabulated drive needs matching 1-D arrays of length >= 2")
        if not np.all(np.diff(t) > 0):
            raise ConfigurationError("tabulated drive times must be strictly ascending")


DrivePolicy = Union[Constant, Cosine, Tabulated]


def drive_value(drive: DrivePolicy, t):
    """Q(t), vectorised over t."""
    t = np.asarray(t, dtype=float)
    if isinstance(drive, Constant):
        return np.full_like(t, drive.lam)
    if isinstance(drive, Cosine):
        return drive.lam + drive.b * np.cos(drive.Omega * t)
    return np.interp(t, drive.times, drive.values)


@dataclass(frozen=True)
class OscillatorParams:
    """Quadratic potential gamma x^2 plus the drive Q(t) x."""

    gamma: float
    drive: DrivePolicy = Constant(0.0)
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma):
            raise ConfigurationError("gamma must be finite")
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")


@dataclass(frozen=True)
class FlowCoefficients:
    """Backward characteristic map X = a1 x + a2 xi + a3, Xi = b1 x + b2 xi + b3.

    a2*b1 - a1*b2 = -1 holds analytically for every regime; in floating
    point the hyperbolic branch can only represent it while cosh(2 w t)^2
    stays within ~1e-10/eps (cancellation), which bounds usable 2*w*t by
    about 6 when asserting at that tolerance.
    """

    a1: float
    a2: float
    a3: float
    b1: float
    b2: float
    b3: float
    t: float

    def wronskian(self) -> float:
        return self.a2 * self.b1 - self.a1 * self.b2


def _entries(gamma: float, t):
    """Homogeneous-part entries (a1, a2, b1, b2), vectorised over t."""
    t = np.asarray(t, dtype=float)
    if gamma >= GAMMA_EPS:
        root = math.sqrt(gamma)
        c, s = np.cos(2.0 * root * t), np.sin(2.0 * root * t)
        return c, -s / root, root * s, c
    if gamma <= -GAMMA_EPS:
        w = math.sqrt(-gamma)
        ch, sh = np.cosh(2.0 * w * t), np.sinh(2.0 * w * t)
        return ch, -sh / w, -w * sh, ch
    s = gamma * t * t
    cos_like = 1.0 + s * (-2.0 + s * (2.0 / 3.0 + s * (-4.0 / 45.0 + s * (2.0 / 315.0))))
    sinc_like = 1.0 + s * (-2.0 / 3.0 + s * (2.0 / 15.0 + s * (-4.0 / 315.0 + s * (2.0 / 2835.0))))
    return cos_like, -2.0 * t * sinc_like, 2.0 * gamma * t * sinc_like, cos_like


def _constant_drive_terms(gamma: float, lam: float, t: float) -> tuple[float, float]:
    a1, a2, _, _ = _entries(gamma, t)
    if abs(gamma) >= GAMMA_EPS:
        a3 = lam * (a1 - 1.0) / (2.0 * gamma)
    else:
        s = gamma * t * t
        a3 = lam * t * t * (-1.0 + s * (1.0 / 3.0 + s * (-2.0 / 45.0 + s / 315.0)))
    return float(a3), float(-lam * a2 / 2.0)


def _simpson(f, a: float, b: float) -> float:
    prev = None
    m = 8
    for _ in range(22):
        xs = np.linspace(a, b, 2 * m + 1)
        ys = f(xs)
        h = (b - a) / (2 * m)
        val = float(h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum() + 2.0 * ys[2:-1:2].sum()))
        if prev is not None and abs(val - prev) <= _QUAD_TOL * max(1.0, abs(val)):
            return val
        prev = val
        m *= 2
    raise NumericalConsistencyError("drive quadrature did not converge")


def _quadrature_drive_terms(params: OscillatorParams, t: float) -> tuple[float, float]:
    """a3 = Int Q a2, b3 = Int Q b2 by Richardson-checked composite Simpson."""
    gamma, drive = params.gamma, params.drive

    def f_a(ts):
        return drive_value(drive, ts) * _entries(gamma, ts)[1]

    def f_b(ts):
        return drive_value(drive, ts) * _entries(gamma, ts)[3]

    cuts = [0.0, t]
    if isinstance(drive, Tabulated):
        cuts += [float(tc) for tc in drive.times if 0.0 < tc < t]
    cuts = sorted(set(cuts))
    a3 = b3 = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo > 1e-15:
            a3 += _simpson(f_a, lo, hi)
            b3 += _simpson(f_b, lo, hi)
    return a3, b3


def flow_coefficients(params: OscillatorParams, t: float) -> FlowCoefficients:
    """Method-of-characteristics map coefficients at time t >= 0."""
    if t < 0:
        raise ValueError(f"flow time must be non-negative, got {t}")
    gamma = params.gamma
    a1, a2, b1, b2 = (float(v) for v in _entries(gamma, t))

    drive = params.drive
    if isinstance(drive, Constant):
        a3, b3 = _constant_drive_terms(gamma, drive.lam, t)
    elif isinstance(drive, Cosine):
        a3, b3 = _constant_drive_terms(gamma, drive.lam, t)
        omega_d = drive.Omega
        denom = 4.0 * gamma - omega_d * omega_d
        if abs(denom) > 1e-6 * max(1.0, abs(4.0 * gamma), omega_d * omega_d):
            cos_d, sin_d = math.cos(omega_d * t), math.sin(omega_d * t)
            a3 += -drive.b * (2.0 * (1.0 - a1 * cos_d) + omega_d * a2 * sin_d) / denom
            b3 += drive.b * (-2.0 * gamma * a2 * cos_d - omega_d * a1 * sin_d) / denom
        else:
            # near-resonant forced harmonic case: closed form degenerates
            qa, qb = _quadrature_drive_terms(
                OscillatorParams(gamma, Cosine(0.0, drive.b, omega_d), params.hbar), t
            )
            a3 += qa
            b3 += qb
    else:
        a3, b3 = _quadrature_drive_terms(params, t)

    return FlowCoefficients(a1, a2, a3, b1, b2, b3, t)


def drive_convolutions(params: OscillatorParams, t: float) -> tuple[float, float]:
    """Inhomogeneous displacements of the reversed-time classical flow,

        conv_q = Int_0^t Q(s) a2(t - s) ds  ( = a2 b3 - b2 a3 )
        conv_p = Int_0^t Q(s) b2(t - s) ds  ( = a1 b3 - b1 a3 )

    evaluated in closed form.  The product combinations on the right cancel
    catastrophically once cosh(2 w t) exceeds ~1/sqrt(eps); these direct
    forms stay single-scale and remain accurate for arbitrarily large t.
    """
    if t < 0:
        raise ValueError(f"flow time must be non-negative, got {t}")
    gamma, drive = params.gamma, params.drive
    a1, a2, _, _ = (float(v) for v in _entries(gamma, t))

    if isinstance(drive, (Constant, Cosine)):
        lam = drive.lam
        conv_q, _ = _constant_drive_terms(gamma, lam, t)  # lam*(a1-1)/(2 gamma)
        conv_p = -lam * a2 / 2.0
        if isinstance(drive, Cosine):
            omega_d = drive.Omega
            denom = 4.0 * gamma - omega_d * omega_d
            if abs(denom) > 1e-6 * max(1.0, abs(4.0 * gamma), omega_d * omega_d):
                cos_d, sin_d = math.cos(omega_d * t), math.sin(omega_d * t)
                conv_q += -2.0 * drive.b * (cos_d - a1) / denom
                conv_p += drive.b * (-2.0 * gamma * a2 - omega_d * sin_d) / denom
            else:
                qq, qp = _convolution_quadrature(
                    OscillatorParams(gamma, Cosine(0.0, drive.b, omega_d), params.hbar), t
                )
                conv_q += qq
                conv_p += qp
        return conv_q, conv_p
    return _convolution_quadrature(params, t)


def _convolution_quadrature(params: OscillatorParams, t: float) -> tuple[float, float]:
    gamma, drive = params.gamma, params.drive

    def f_q(ts):
        return drive_value(drive, ts) * _entries(gamma, t - ts)[1]

    def f_p(ts):
        return drive_value(drive, ts) * _entries(gamma, t - ts)[3]

    cuts = [0.0, t]
    if isinstance(drive, Tabulated):
        cuts += [float(tc) for tc in drive.times if 0.0 < tc < t]
    cuts = sorted(set(cuts))
    cq = cp = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo > 1e-15:
            cq += _simpson(f_q, lo, hi)
            cp += _simpson(f_p, lo, hi)
    return cq, cp


def backward_map(coeffs: FlowCoefficients, x, xi):
    """(X, Xi): the phase-space point whose forward image at time t is (x, xi)."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return (
        coeffs.a1 * x + coeffs.a2 * xi + coeffs.a3,
        coeffs.b1 * x + coeffs.b2 * xi + coeffs.b3,
    )


def forward_map(coeffs: FlowCoefficients, x0, xi0):
    """Inverse of backward_map (unit determinant, so no division)."""
    u = np.asarray(x0, dtype=float) - coeffs.a3
    v = np.asarray(xi0, dtype=float) - coeffs.b3
    return (coeffs.b2 * u - coeffs.a2 * v, -coeffs.b1 * u + coeffs.a1 * v)


def classical_flow(params: OscillatorParams, x, xi, t: float):
    """Hamiltonian flux of h = p^2 + V(q, t) integrated with reversed signs
    (q' = -2p, p' = +dV/dq), so that for a time-independent drive it
    coincides with the backward map composing the transported field."""
    c = flow_coefficients(params, t)
    conv_q, conv_p = drive_convolutions(params, t)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return c.a1 * x + c.a2 * xi + conv_q, c.b1 * x + c.b2 * xi + conv_p


InitialField = Union[WignerField, Callable[[np.ndarray, np.ndarray], np.ndarray]]


def field_evaluator(field: WignerField) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Bilinear interpolation on the field's grid, zero outside."""
    xg, xig = field.grid.x_grid, field.grid.xi_grid
    vals = field.values
    n, m = vals.shape

    def evaluate(x, xi):
        fx = (np.asarray(x, float) - xg.x_min) / xg.step
        fxi = (np.asarray(xi, float) - xig.x_min) / xig.step
        inside = (fx >= 0.0) & (fx <= n - 1) & (fxi >= 0.0) & (fxi <= m - 1)
        i = np.clip(np.floor(fx).astype(int), 0, n - 2)
        j = np.clip(np.floor(fxi).astype(int), 0, m - 2)
        wx = np.clip(fx - i, 0.0, 1.0)
        wj = np.clip(fxi - j, 0.0, 1.0)
        v = (
            vals[i, j] * (1 - wx) * (1 - wj)
            + vals[i + 1, j] * wx * (1 - wj)
            + vals[i, j + 1] * (1 - wx) * wj
            + vals[i + 1, j + 1] * wx * wj
        )
        return np.where(inside, v, 0.0)

    return evaluate


def _as_evaluator(initial: InitialField):
    if isinstance(initial, WignerField):
        return field_evaluator(initial)
    return initial


def _evaluate_transported(initial, coeffs: FlowCoefficients, x_nodes, xi_nodes) -> np.ndarray:
    x = np.asarray(x_nodes, float)[:, None]
    xi = np.asarray(xi_nodes, float)[None, :]
    bx, bxi = backward_map(coeffs, x, xi)
    return np.asarray(initial(bx, bxi), dtype=float)


def propagate_field(
    initial: InitialField, params: OscillatorParams, t: float, ps_grid: PhaseSpaceGrid
) -> WignerField:
    """Transport: W(x, xi, t) = W0(X(x, xi, t), Xi(x, xi, t)) sampled on the grid.

    ``initial`` is a closed-form evaluator (x, xi) -> W0 defined on all of
    R^2, or a gridded field used through bilinear interpolation with zero
    extension (interpolation error is then the caller's responsibility).
    """
    coeffs = flow_coefficients(params, t)
    evaluator = _as_evaluator(initial)
    values = _evaluate_transported(
        evaluator, coeffs, ps_grid.x_grid.nodes(), ps_grid.xi_grid.nodes()
    )
    return WignerField(ps_grid, values, params.hbar)


def liouville_residual(
    params: OscillatorParams,
    initial: InitialField,
    t: float,
    ps_grid: PhaseSpaceGrid,
    dt: float,
    dx: float,
    dxi: float,
) -> float:
    """Max-norm central-difference residual of the transport equation.

    All seven samples are transported fields (time-shifted grids and
    space-shifted meshes), so the residual measures pure discretisation
    error and decays at second order in (dt, dx, dxi).
    """
    if min(dt, dx, dxi) <= 0:
        raise ConfigurationError("finite-difference steps must be positive")
    if t - dt < 0:
        raise ValueError("need t - dt >= 0 for the centred time stencil")
    evaluator = _as_evaluator(initial)
    xs = ps_grid.x_grid.nodes()
    xis = ps_grid.xi_grid.nodes()

    def field_at(time: float, x_nodes, xi_nodes) -> np.ndarray:
        return _evaluate_transported(evaluator, flow_coefficients(params, time), x_nodes, xi_nodes)

    w_tp = field_at(t + dt, xs, xis)
    w_tm = field_at(t - dt, xs, xis)
    w_xp = field_at(t, xs + dx, xis)
    w_xm = field_at(t, xs - dx, xis)
    w_kp = field_at(t, xs, xis + dxi)
    w_km = field_at(t, xs, xis - dxi)

    q_now = float(drive_value(params.drive, t))
    dw_dt = (w_tp - w_tm) / (2.0 * dt)
    dw_dx = (w_xp - w_xm) / (2.0 * dx)
    dw_dxi = (w_kp - w_km) / (2.0 * dxi)
    residual = dw_dt + 2.0 * xis[None, :] * dw_dx - (2.0 * params.gamma * xs[:, None] + q_now) * dw_dxi
    return float(np.max(np.abs(residual[1:-1, 1:-1])))


def stationary_residual(
    state: HarmonicEigen,
    E: float,
    point: tuple[float, float],
    steps: tuple[float, float],
) -> tuple[float, float]:
    """Finite-difference residuals of the eigenvalue pair for a harmonic
    eigenstate field: the second-order equation (rA) and the transport
    constraint (rB), both evaluated at one phase-space point."""
    x, xi = point
    dx, dxi = steps
    if min(dx, dxi) <= 0:
        raise ConfigurationError("finite-difference steps must be positive")
    h = state.hbar
    w0 = float(state.wigner(x, xi))
    wxx = (float(state.wigner(x + dx, xi)) - 2.0 * w0 + float(state.wigner(x - dx, xi))) / dx**2
    wkk = (float(state.wigner(x, xi + dxi)) - 2.0 * w0 + float(state.wigner(x, xi - dxi))) / dxi**2
    wx = (float(state.wigner(x + dx, xi)) - float(state.wigner(x - dx, xi))) / (2.0 * dx)
    wk = (float(state.wigner(x, xi + dxi)) - float(state.wigner(x, xi - dxi))) / (2.0 * dxi)

    v = state.omega**2 * x * x
    v2 = 2.0 * state.omega**2
    r_a = E * w0 - (-(h * h / 4.0) * wxx + (xi * xi + v) * w0 - (h * h / 8.0) * v2 * wkk)
    r_b = -2.0 * xi * wx + 2.0 * state.omega**2 * x * wk
    return float(r_a), float(r_b)


def delta_stationary_residual(
    gamma: float,
    hbar: float,
    point: tuple[float, float],
    xi_cutoff: float,
    fd_step: float = 2e-3,
    quad_step: float | None = None,
) -> tuple[float, float]:
    """Residuals of the delta-potential stationary pair on the bound state.

    The nonlocal term couples all momenta through an oscillatory kernel, so
    the xi' integral is resolved with a step tied to the oscillation length
    pi*hbar/(2|x|).  x-derivatives use centred differences; the |x| kink at
    0 is excluded (require |x| > fd_step).
    """
    from .catalog import DeltaBound

    state = DeltaBound(gamma, hbar)
    x, xi = point
    if abs(x) <= fd_step:
        raise ConfigurationError("evaluation point must avoid the kink at x = 0")
    if xi_cutoff <= abs(xi):
        raise ConfigurationError("xi_cutoff must exceed the evaluation |xi|")

    if quad_step is None:
        quad_step = min(0.05, math.pi * hbar / (50.0 * max(abs(x), 0.1)))
    n = int(math.ceil(2.0 * xi_cutoff / quad_step))
    n += n % 2  # Simpson needs an even interval count
    xi_p = np.linspace(-xi_cutoff, xi_cutoff, n + 1)
    w_row = state.wigner(x, xi_p)
    weights = np.ones(n + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    hq = 2.0 * xi_cutoff / n

    phase = 2.0 * (0.0 - x) * (xi_p - xi) / hbar
    int_cos = float(hq / 3.0 * np.sum(weights * w_row * np.cos(phase)))
    int_sin = float(hq / 3.0 * np.sum(weights * w_row * np.sin(phase)))

    w0 = float(state.wigner(x, xi))
    wxx = (
        float(state.wigner(x + fd_step, xi)) - 2.0 * w0 + float(state.wigner(x - fd_step, xi))
    ) / fd_step**2
    wx = (
        float(state.wigner(x + fd_step, xi)) - float(state.wigner(x - fd_step, xi))
    ) / (2.0 * fd_step)

    energy = -(gamma * gamma) / (4.0 * hbar * hbar)
    r40 = energy * w0 - (
        -(hbar * hbar / 4.0) * wxx + xi * xi * w0 + gamma / (hbar * math.pi) * int_cos
    )
    r41 = -2.0 * xi * wx + 2.0 * gamma / (math.pi * hbar * hbar) * int_sin
    return float(r40), float(r41)
