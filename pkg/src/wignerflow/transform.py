"""Discrete Wigner transform on uniform grids, and its exact identities.

Conventions (used throughout the package): units with 2m = 1, the transform

    W(x, xi) = (1/2pi) * Integral  e^{-i xi y} psi(x + hbar y/2) conj(psi(x - hbar y/2)) dy

discretised on y_j = j*(2*step/hbar) so that x +- hbar*y_j/2 lands exactly on
position-grid nodes (no interpolation), with psi extended by zero beyond the
grid and a rectangle rule in every quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    ConfigurationError,
    DomainTooSmallError,
    IndeterminateResultError,
    NotInvertibleError,
    NumericalConsistencyError,
)
from .grids import Grid1D, PhaseSpaceGrid, is_natural_xi_grid

_CHUNK_BYTES = 1 << 27  # ~134 MB of complex scratch per chunk


@dataclass(frozen=True)
class WaveSample:
    """Complex wavefunction sampled on a uniform position grid."""

    grid: Grid1D
    values: np.ndarray
    hbar: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.count,):
            raise ConfigurationError(
                f"wave has {v.shape} values for a grid of {self.grid.count} nodes"
            )
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise ConfigurationError("wave values must be finite")

    def norm_sq(self) -> float:
        """Rectangle-rule squared L2 norm."""
        return float(self.grid.step * np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True)
class WignerField:
    """Real phase-space function sampled on a rectangular (x, xi) grid."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    hbar: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != self.grid.shape:
            raise ConfigurationError(f"field shape {v.shape} != grid shape {self.grid.shape}")
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("field values must be finite")


def sample_state(psi, grid: Grid1D, hbar: float) -> WaveSample:
    """Sample a callable psi(x) on a grid."""
    return WaveSample(grid, np.asarray(psi(grid.nodes()), dtype=complex), hbar)


def _check_decay(wave: WaveSample) -> None:
    peak = float(np.max(np.abs(wave.values)))
    if peak == 0.0:
        return
    edge = max(abs(wave.values[0]), abs(wave.values[-1]))
    if edge > tol.DECAY_TOL * peak:
        raise DomainTooSmallError(
            f"wave does not decay at the grid boundary: |psi(edge)|/|psi|_max = {edge / peak:.3e} "
            f"> {tol.DECAY_TOL:.1e}; enlarge the grid"
        )


def _is_natural(wave: WaveSample, xi_grid: Grid1D) -> bool:
    return is_natural_xi_grid(wave.grid, wave.hbar, xi_grid)


def _row_chunks(n_rows: int, row_width: int) -> list[slice]:
    rows = max(1, min(n_rows, _CHUNK_BYTES // (16 * row_width)))
    return [slice(k, min(k + rows, n_rows)) for k in range(0, n_rows, rows)]


def _transform_values(wave: WaveSample, ps_grid: PhaseSpaceGrid) -> np.ndarray:
    """Complex discrete transform values before the realness check."""
    if not wave.grid.close_to(ps_grid.x_grid):
        raise ConfigurationError("ps_grid.x_grid must equal the wave grid")
    _check_decay(wave)

    n = wave.grid.count
    m = 2 * n - 1
    dy = 2.0 * wave.grid.step / wave.hbar
    # Zero padding realises the extension of psi beyond the grid; row k of the
    # sliding window is pad[k : k+m], and nu[k, j] = psi(x_k + j d) conj(psi(x_k - j d))
    # is that window times its reversed conjugate (j runs -(n-1)..(n-1)).
    pad = np.zeros(3 * n - 2, dtype=complex)
    pad[n - 1 : 2 * n - 1] = wave.values
    windows = np.lib.stride_tricks.sliding_window_view(pad, m)  # (n, m) view

    natural = _is_natural(wave, ps_grid.xi_grid)
    m_out = ps_grid.xi_grid.count
    if not natural:
        j = np.arange(-(n - 1), n)
        kernel = np.exp(-1j * np.outer(j * dy, ps_grid.xi_grid.nodes()))  # (m, n_xi)

    out = np.empty(ps_grid.shape, dtype=complex)
    for sl in _row_chunks(n, max(m, m_out)):
        win = windows[sl]
        nu = win * np.conj(win[:, ::-1])
        if natural:
            # FFT layout: j >= 0 at the front, j < 0 wrapped to the back;
            # zero padding up to the (FFT-friendly) frequency count.
            nu_pad = np.zeros((nu.shape[0], m_out), dtype=complex)
            nu_pad[:, :n] = nu[:, n - 1 :]
            nu_pad[:, m_out - (n - 1) :] = nu[:, : n - 1]
            spectrum = np.fft.fft(nu_pad, axis=1)
            out[sl] = np.fft.fftshift(spectrum, axes=1) * (dy / (2.0 * math.pi))
        else:
            out[sl] = nu @ kernel * (dy / (2.0 * math.pi))
    return out


def wigner_transform(wave: WaveSample, ps_grid: PhaseSpaceGrid) -> WignerField:
    """Discrete Wigner transform of a sampled pure state.

    The output x-grid must coincide with the wave's grid.  When the xi grid
    is a natural conjugate lattice the inner sum is evaluated by FFT;
    otherwise the discrete sum is evaluated exactly at the requested
    frequencies.  The result is real by symmetry of the summand; the
    floating-point imaginary residue is checked against IM_TOL (relative to
    the field peak when that exceeds unity) and then dropped.
    """
    out = _transform_values(wave, ps_grid)
    residue = float(np.max(np.abs(out.imag)))
    peak = float(np.max(np.abs(out.real)))
    if residue > tol.IM_TOL * max(1.0, peak):
        raise NumericalConsistencyError(
            f"imaginary residue {residue:.3e} exceeds {tol.IM_TOL:.1e}"
        )
    return WignerField(ps_grid, np.ascontiguousarray(out.real), wave.hbar)


def position_marginal(field: WignerField) -> np.ndarray:
    """Integral of W over xi; equals |psi(x)|^2 for transform outputs."""
    return field.grid.xi_grid.step * field.values.sum(axis=1)


def momentum_marginal(field: WignerField) -> np.ndarray:
    """Integral of W over x; equals (2pi/hbar)|psihat(xi/hbar)|^2."""
    return field.grid.x_grid.step * field.values.sum(axis=0)


def total_mass(field: WignerField) -> float:
    """2-D rectangle quadrature of W; equals the squared norm of the state."""
    return float(field.grid.x_grid.step * field.grid.xi_grid.step * field.values.sum())


def _require_same_layout(f1: WignerField, f2: WignerField) -> None:
    if not (
        f1.grid.x_grid.close_to(f2.grid.x_grid)
        and f1.grid.xi_grid.close_to(f2.grid.xi_grid)
        and abs(f1.hbar - f2.hbar) <= 1e-12 * f1.hbar
    ):
        raise ConfigurationError("fields must share grids and hbar")


def overlap_identity(f1: WignerField, f2: WignerField) -> float:
    """2*pi*hbar <W1, W2>; equals |<psi1, psi2>|^2 for pure-state fields."""
    _require_same_layout(f1, f2)
    dxdxi = f1.grid.x_grid.step * f1.grid.xi_grid.step
    return float(2.0 * math.pi * f1.hbar * dxdxi * np.sum(f1.values * f2.values))


def sup_norm_bound_slack(field: WignerField) -> float:
    """max|W| - mass/(pi*hbar); non-positive up to FIELD_TOL for pure states."""
    return float(np.max(np.abs(field.values)) - total_mass(field) / (math.pi * field.hbar))


# ---------------------------------------------------------------------------
# Inversion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InversionInfo:
    """Diagnostics of an inverse transform."""

    x_star: float
    x_star_index: int
    secondary_index: int | None
    relative_phase: float
    clipped: bool


def _anchor_products(field: WignerField, k_targets: np.ndarray, k_anchor: int) -> np.ndarray:
    """psi(x_k) * conj(psi(x_anchor)) for targets with (k + k_anchor) even.

    Rectangle quadrature of the reconstruction integral; exact on the
    natural frequency lattice.
    """
    x = field.grid.x_grid.nodes()
    xi = field.grid.xi_grid.nodes()
    dxi = field.grid.xi_grid.step
    mids = (k_targets + k_anchor) // 2
    phases = np.exp(1j * np.outer(x[k_targets] - x[k_anchor], xi) / field.hbar)
    return dxi * np.sum(field.values[mids] * phases, axis=1)


def _half_row_products(field: WignerField, k_targets: np.ndarray, k_anchor: int) -> np.ndarray:
    """Same as _anchor_products but for odd k + k_anchor (half-step midpoints).

    Rows of W at half-step x are interpolated with a 4-point cubic; only used
    to estimate the single cross-parity phase, which enters fidelity at
    second order.
    """
    w = field.values
    n = field.grid.x_grid.count
    x = field.grid.x_grid.nodes()
    xi = field.grid.xi_grid.nodes()
    dxi = field.grid.xi_grid.step
    lo = (k_targets + k_anchor - 1) // 2  # half row sits between lo and lo+1
    c0 = np.clip(lo - 1, 0, n - 1)
    c1 = np.clip(lo, 0, n - 1)
    c2 = np.clip(lo + 1, 0, n - 1)
    c3 = np.clip(lo + 2, 0, n - 1)
    rows = (-w[c0] + 9.0 * w[c1] + 9.0 * w[c2] - w[c3]) / 16.0
    phases = np.exp(1j * np.outer(x[k_targets] - x[k_anchor], xi) / field.hbar)
    return dxi * np.sum(rows * phases, axis=1)


def invert_wigner(
    field: WignerField,
    x_star: float | None = None,
    with_info: bool = False,
):
    """Recover the wavefunction from its Wigner field, up to a global phase.

    The global phase is fixed so psi(x_star) is real and positive.  x_star
    defaults to the smallest node attaining the maximum of the position
    marginal; a user-supplied value is snapped to the nearest node.  Node
    sampling only ties nodes of equal parity to the anchor, so the opposite
    sublattice is reconstructed from its own anchor and joined with a phase
    estimated from interpolated half-step rows.
    """
    marg = position_marginal(field)
    g = field.grid.x_grid
    n = g.count

    if x_star is None:
        k_star = int(np.argmax(marg))
    else:
        k_star = int(round((x_star - g.x_min) / g.step))
        if not 0 <= k_star < n:
            raise ConfigurationError(f"x_star {x_star} lies outside the grid")
    if marg[k_star] <= tol.INVERSION_FLOOR:
        k_star = int(np.argmax(marg))
    if marg[k_star] <= tol.INVERSION_FLOOR:
        raise NotInvertibleError(
            f"position marginal peak {marg[k_star]:.3e} is below the inversion floor"
        )

    values = np.zeros(n, dtype=complex)
    k_all = np.arange(n)
    same = k_all[(k_all + k_star) % 2 == 0]
    values[same] = _anchor_products(field, same, k_star) / math.sqrt(marg[k_star])

    opp = k_all[(k_all + k_star) % 2 == 1]
    k2 = None
    alpha = 0.0
    if opp.size:
        k2 = int(opp[np.argmax(marg[opp])])
        if marg[k2] > tol.INVERSION_FLOOR:
            raw = _anchor_products(field, opp, k2) / math.sqrt(marg[k2])
            cross = _half_row_products(field, opp, k_star) / math.sqrt(marg[k_star])
            z = np.vdot(raw, cross)  # sum conj(raw)*cross, weighted by |psi|^2
            if abs(z) > 0.0:
                alpha = float(np.angle(z))
            values[opp] = raw * np.exp(1j * alpha)

    wave = WaveSample(g, values, field.hbar)
    if with_info:
        info = InversionInfo(g.nodes()[k_star], k_star, k2, alpha, False)
        return wave, info
    return wave


# ---------------------------------------------------------------------------
# Continuity of the transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuityReport:
    """Observed field gaps and their wavefunction-side upper bounds."""

    l2_gap: float
    sup_gap: float
    l2_bound: float
    sup_bound: float
    theta_used: float


def _inner(w1: WaveSample, w2: WaveSample) -> complex:
    return complex(w1.grid.step * np.sum(np.conj(w1.values) * w2.values))


def continuity_gap(
    w1: WignerField, w2: WignerField, phi1: WaveSample, phi2: WaveSample
) -> ContinuityReport:
    """Field distance bounds: L2 gap and sup gap of w1 - w2 against
    C * min_theta ||e^{i theta} phi1 - phi2||, with C = sqrt(2/hbar)(||phi1|| + ||phi2||)
    for the L2 bound and C = (||phi1|| + ||phi2||)/(pi hbar) for the sup bound.

    The minimising theta is arg<phi2, phi1>, the exact closed-form minimiser.
    """
    _require_same_layout(w1, w2)
    if not (phi1.grid.close_to(phi2.grid) and phi1.grid.close_to(w1.grid.x_grid)):
        raise ConfigurationError("wavefunctions must share the fields' x grid")

    diff = w1.values - w2.values
    dxdxi = w1.grid.x_grid.step * w1.grid.xi_grid.step
    l2_gap = math.sqrt(dxdxi * float(np.sum(diff * diff)))
    sup_gap = float(np.max(np.abs(diff)))

    # arg<phi2, phi1> in the conjugate-second convention, i.e. arg Int phi1 conj(phi2):
    # the exact minimiser of theta -> ||e^{i theta} phi1 - phi2||.
    theta = float(np.angle(_inner(phi1, phi2)))
    rotated = np.exp(1j * theta) * phi1.values
    phi_gap = math.sqrt(phi1.grid.step * float(np.sum(np.abs(rotated - phi2.values) ** 2)))
    norms = math.sqrt(phi1.norm_sq()) + math.sqrt(phi2.norm_sq())
    hbar = w1.hbar
    return ContinuityReport(
        l2_gap=l2_gap,
        sup_gap=sup_gap,
        l2_bound=math.sqrt(2.0 / hbar) * norms * phi_gap,
        sup_bound=norms / (math.pi * hbar) * phi_gap,
        theta_used=theta,
    )


# ---------------------------------------------------------------------------
# Pure-state diagnostic
# ---------------------------------------------------------------------------

def purity_separability_check(field: WignerField, max_nodes: int = 14) -> float:
    """Cross-ratio residual of the reconstructed kernel Q(x1, x2).

    Q(x1, x2) = Integral W((x1+x2)/2, xi) e^{i(x1-x2)xi/hbar} dxi equals
    psi(x1) conj(psi(x2)) exactly when the field comes from a pure state, so
    every 2x2 determinant of Q vanishes.  The residual is the largest
    determinant over sampled same-parity node pairs, normalised by max|Q|^2.
    Raises IndeterminateResultError when max|Q| is below floor.
    """
    marg = position_marginal(field)
    peak = float(np.max(np.abs(marg)))
    if peak <= tol.INVERSION_FLOOR:
        raise IndeterminateResultError("field carries no usable marginal mass")

    k_star = int(np.argmax(marg))
    candidates = np.flatnonzero(np.abs(marg) >= 1e-3 * peak)
    candidates = candidates[(candidates + k_star) % 2 == 0]
    if candidates.size > max_nodes:
        sel = np.linspace(0, candidates.size - 1, max_nodes).round().astype(int)
        candidates = candidates[np.unique(sel)]
    if candidates.size < 2:
        raise IndeterminateResultError("not enough usable nodes for the cross-ratio check")

    x = field.grid.x_grid.nodes()[candidates]
    xi = field.grid.xi_grid.nodes()
    dxi = field.grid.xi_grid.step
    mids = (candidates[:, None] + candidates[None, :]) // 2
    phases = np.exp(1j * (x[:, None, None] - x[None, :, None]) * xi / field.hbar)
    q = dxi * np.sum(field.values[mids] * phases, axis=2)

    qmax = float(np.max(np.abs(q)))
    if qmax <= tol.INVERSION_FLOOR:
        raise IndeterminateResultError("kernel magnitude below floor")
    minors = q[:, None, :, None] * q[None, :, None, :] - q[:, None, None, :] * q[None, :, :, None]
    return float(np.max(np.abs(minors))) / qmax**2
