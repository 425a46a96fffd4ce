"""Discrete transform operations: reference cases and error contracts."""

import math

import numpy as np
import pytest

import wignerflow as wf
from wignerflow.errors import (
    ConfigurationError,
    DomainTooSmallError,
    IndeterminateResultError,
    NotInvertibleError,
)
from wignerflow.transform import _transform_values

from conftest import fidelity


@pytest.fixture(scope="module")
def gaussian_field():
    grid = wf.Grid1D.from_span(-8.0, 8.0, 512)
    state = wf.CoherentGaussian(0.0, 0.0, 1.0)
    wave = wf.sample_catalog_state(state, grid)
    ps = wf.natural_grid(grid, 1.0)
    return state, wave, ps, wf.wigner_transform(wave, ps)


def test_gaussian_transform_matches_closed_form(gaussian_field):
    state, _, ps, field = gaussian_field
    exact = state.wigner(ps.x_grid.nodes()[:, None], ps.xi_grid.nodes()[None, :])
    assert np.max(np.abs(field.values - exact)) <= 1e-8


def test_zero_wavefunction_gives_zero_field():
    grid = wf.Grid1D.symmetric(4.0, 65)
    wave = wf.WaveSample(grid, np.zeros(65, dtype=complex), 1.0)
    field = wf.wigner_transform(wave, wf.natural_grid(grid, 1.0))
    assert np.all(field.values == 0.0)


def test_box_value_at_quarter_period():
    # half-step edge placement; xi grid contains pi/2 exactly
    box = wf.Box(1.0, 2.0)
    step = 2.0 / 1401.0
    grid = wf.Grid1D(-750.0 * step, step, 1501)
    xi = wf.Grid1D(-160 * math.pi / 16, math.pi / 16, 321)
    field = wf.wigner_transform(
        wf.sample_catalog_state(box, grid), wf.PhaseSpaceGrid(grid, xi)
    )
    i = int(round((0.0 - grid.x_min) / grid.step))
    j = int(round((math.pi / 2 - xi.x_min) / xi.step))
    assert field.values[i, j] == pytest.approx(1.0 / math.pi**2, abs=1e-6)
    assert field.values[i, j] == pytest.approx(
        math.sin(math.pi / 2) / (2.0 * math.pi * (math.pi / 2)), abs=1e-6
    )


def test_grid_mismatch_raises_configuration_error(gaussian_field):
    _, wave, _, _ = gaussian_field
    other = wf.natural_grid(wf.Grid1D.from_span(-8.0, 8.0, 256), 1.0)
    with pytest.raises(ConfigurationError):
        wf.wigner_transform(wave, other)


def test_boundary_decay_violation_raises():
    grid = wf.Grid1D.symmetric(2.0, 65)  # far too small for this packet
    wave = wf.sample_catalog_state(wf.CoherentGaussian(0.0, 0.0, 1.0), grid)
    with pytest.raises(DomainTooSmallError):
        wf.wigner_transform(wave, wf.natural_grid(grid, 1.0))


# ---------------------------------------------------------------------------
# marginals, mass, overlap
# ---------------------------------------------------------------------------

def test_position_marginal_gaussian(gaussian_field):
    _, _, ps, field = gaussian_field
    xs = ps.x_grid.nodes()
    target = np.exp(-xs * xs) / math.sqrt(math.pi)
    assert np.max(np.abs(wf.position_marginal(field) - target)) <= 1e-6


def test_momentum_marginal_gaussian(gaussian_field):
    _, _, ps, field = gaussian_field
    xis = ps.xi_grid.nodes()
    target = np.exp(-xis * xis) / math.sqrt(math.pi)
    assert np.max(np.abs(wf.momentum_marginal(field) - target)) <= 1e-6


def test_marginals_of_zero_field():
    grid = wf.Grid1D.symmetric(4.0, 33)
    ps = wf.natural_grid(grid, 1.0)
    field = wf.WignerField(ps, np.zeros(ps.shape), 1.0)
    assert np.all(wf.position_marginal(field) == 0.0)
    assert np.all(wf.momentum_marginal(field) == 0.0)


def test_momentum_marginal_shifted_gaussian():
    grid = wf.Grid1D.from_span(-8.0, 8.0, 512)
    wave = wf.sample_catalog_state(wf.CoherentGaussian(0.0, 2.0, 1.0), grid)
    ps = wf.natural_grid(grid, 1.0)
    field = wf.wigner_transform(wave, ps)
    xis = ps.xi_grid.nodes()
    target = np.exp(-((xis - 2.0) ** 2)) / math.sqrt(math.pi)
    assert np.max(np.abs(wf.momentum_marginal(field) - target)) <= 1e-6


def test_box_position_marginal_against_closed_form_quadrature(catalog_fields):
    box, wave, ps, field = catalog_fields("box")
    xs = ps.x_grid.nodes()
    keep = np.abs(np.abs(xs) - box.R) > 0.2  # Gibbs-limited near the edges
    marginal = wf.position_marginal(field)[keep]

    # independent oracle: quadrature of the closed form over a wide xi window
    xi = np.linspace(-4000.0, 4000.0, 2**18 + 1)
    sub = xs[keep][::40]
    oracle = np.trapezoid(box.wigner(sub[:, None], xi[None, :]), xi, axis=1)
    indicator = np.where(np.abs(sub) < box.R, 1.0 / (2.0 * box.R), 0.0)

    assert np.max(np.abs(oracle - indicator)) <= 1e-3
    assert np.max(np.abs(marginal[::40] - indicator)) <= 1e-3


def test_total_mass_examples(gaussian_field, catalog_fields):
    _, _, _, field = gaussian_field
    assert wf.total_mass(field) == pytest.approx(1.0, abs=1e-6)
    scaled = wf.WignerField(field.grid, 4.0 * field.values, field.hbar)
    assert wf.total_mass(scaled) == pytest.approx(4.0 * wf.total_mass(field), rel=1e-14)
    _, _, _, h1 = catalog_fields("hermite1")
    assert wf.total_mass(h1) == pytest.approx(1.0, abs=1e-6)


def test_overlap_identity_examples(catalog_fields):
    _, w0, _, f0 = catalog_fields("hermite0")
    _, w1, _, f1 = catalog_fields("hermite1")
    assert wf.overlap_identity(f0, f0) == pytest.approx(1.0, abs=1e-6)
    assert wf.overlap_identity(f0, f1) == pytest.approx(0.0, abs=1e-6)
    zero = wf.WignerField(f0.grid, np.zeros_like(f0.values), f0.hbar)
    assert wf.overlap_identity(f0, zero) == 0.0
    with pytest.raises(ConfigurationError):
        g2 = wf.Grid1D.symmetric(3.0, 33)
        wf.overlap_identity(f0, wf.WignerField(wf.natural_grid(g2, 1.0),
                                               np.zeros((33, 67)), 1.0))


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

def test_inversion_recovers_shifted_gaussian():
    grid = wf.Grid1D.from_span(-8.0, 8.0, 512)
    state = wf.CoherentGaussian(0.0, 2.0, 1.0)
    wave = wf.sample_catalog_state(state, grid)
    ps = wf.natural_grid(grid, 1.0)
    field = wf.wigner_transform(wave, ps)
    recovered = wf.invert_wigner(field)
    assert fidelity(recovered, wave) >= 1.0 - 1e-6
    # round trip reproduces the field
    again = wf.wigner_transform(recovered, ps)
    assert np.max(np.abs(again.values - field.values)) <= 1e-6


def test_inversion_phase_convention_keeps_positive_state_positive(catalog_fields):
    _, wave, _, field = catalog_fields("coherent_origin")
    recovered = wf.invert_wigner(field)
    assert np.max(np.abs(recovered.values.imag)) <= 1e-9
    significant = np.abs(wave.values) > 1e-3
    assert np.all(recovered.values.real[significant] > 0.0)


def test_inversion_hermite2_against_analytic(catalog_fields):
    _, wave, _, field = catalog_fields("hermite2")
    recovered = wf.invert_wigner(field)
    assert fidelity(recovered, wave) >= 1.0 - 1e-5


def test_inversion_floor_error():
    grid = wf.Grid1D.symmetric(4.0, 65)
    ps = wf.natural_grid(grid, 1.0)
    field = wf.WignerField(ps, np.zeros(ps.shape), 1.0)
    with pytest.raises(NotInvertibleError):
        wf.invert_wigner(field)


def test_inversion_with_info_and_explicit_anchor():
    grid = wf.Grid1D.from_span(-7.5, 9.5, 512)
    wave = wf.sample_catalog_state(wf.CoherentGaussian(1.0, 0.0, 1.0), grid)
    ps = wf.natural_grid(grid, 1.0)
    field = wf.wigner_transform(wave, ps)
    recovered, info = wf.invert_wigner(field, x_star=1.0, with_info=True)
    assert abs(info.x_star - 1.0) <= grid.step
    assert not info.clipped
    assert fidelity(recovered, wave) >= 1.0 - 1e-6
    with pytest.raises(ConfigurationError):
        wf.invert_wigner(field, x_star=99.0)


# ---------------------------------------------------------------------------
# continuity bounds
# ---------------------------------------------------------------------------

def _gaussian_pair(a1, p1, a2, p2, count=201):
    grid = wf.Grid1D.symmetric(10.0, count)
    ps = wf.natural_grid(grid, 1.0)
    phi1 = wf.sample_catalog_state(wf.CoherentGaussian(a1, p1, 1.0), grid)
    phi2 = wf.sample_catalog_state(wf.CoherentGaussian(a2, p2, 1.0), grid)
    w1 = wf.wigner_transform(phi1, ps)
    w2 = wf.wigner_transform(phi2, ps)
    return w1, w2, phi1, phi2


def test_continuity_identical_states_gives_zeros():
    w1, w2, phi1, phi2 = _gaussian_pair(0.3, -0.2, 0.3, -0.2)
    report = wf.continuity_gap(w1, w2, phi1, phi2)
    assert report.l2_gap == 0.0 and report.sup_gap == 0.0
    assert report.l2_bound <= 1e-12 and report.sup_bound <= 1e-12


def test_continuity_phase_invariance():
    w1, _, phi1, _ = _gaussian_pair(0.3, -0.2, 0.3, -0.2)
    rotated = wf.WaveSample(phi1.grid, np.exp(1j * math.pi / 3) * phi1.values, 1.0)
    w2 = wf.wigner_transform(rotated, w1.grid)
    report = wf.continuity_gap(w1, w2, phi1, rotated)
    plain_gap = math.sqrt(
        phi1.grid.step * float(np.sum(np.abs(phi1.values - rotated.values) ** 2))
    )
    assert plain_gap > 0.4  # the unoptimised wavefunction distance is large
    assert report.sup_gap <= 1e-12 and report.l2_gap <= 1e-12
    assert report.l2_bound <= 1e-12  # theta-optimised bound collapses to zero


def test_continuity_bounds_hold_strictly_for_shifted_gaussian():
    w1, w2, phi1, phi2 = _gaussian_pair(0.0, 0.0, 0.1, 0.0)
    report = wf.continuity_gap(w1, w2, phi1, phi2)
    assert 0.0 < report.l2_gap < report.l2_bound
    assert 0.0 < report.sup_gap < report.sup_bound


# ---------------------------------------------------------------------------
# purity diagnostic
# ---------------------------------------------------------------------------

def test_purity_residual_small_for_pure_state(gaussian_field):
    _, _, _, field = gaussian_field
    assert wf.purity_separability_check(field) <= 1e-6


def test_purity_residual_large_for_mixture(catalog_fields):
    _, _, ps, f0 = catalog_fields("hermite0")
    _, _, _, f1 = catalog_fields("hermite1")
    mix = wf.WignerField(ps, 0.5 * f0.values + 0.5 * f1.values, f0.hbar)
    assert wf.purity_separability_check(mix) >= 1e-2


def test_purity_residual_scale_invariant(gaussian_field):
    _, _, _, field = gaussian_field
    base = wf.purity_separability_check(field)
    scaled = wf.WignerField(field.grid, 7.5 * field.values, field.hbar)
    assert wf.purity_separability_check(scaled) == pytest.approx(base, rel=1e-9, abs=1e-15)


def test_purity_indeterminate_on_empty_field():
    grid = wf.Grid1D.symmetric(4.0, 65)
    ps = wf.natural_grid(grid, 1.0)
    with pytest.raises(IndeterminateResultError):
        wf.purity_separability_check(wf.WignerField(ps, np.zeros(ps.shape), 1.0))


# ---------------------------------------------------------------------------
# structural properties
# ---------------------------------------------------------------------------

def test_realness_residue_below_tolerance():
    grid = wf.Grid1D.symmetric(9.0, 257)
    wave = wf.sample_catalog_state(wf.CoherentGaussian(0.7, 1.3, 1.0), grid)
    raw = _transform_values(wave, wf.natural_grid(grid, 1.0))
    assert np.max(np.abs(raw.imag)) <= 1e-10


def test_phase_invariance_of_transform():
    grid = wf.Grid1D.symmetric(9.0, 257)
    ps = wf.natural_grid(grid, 1.0)
    wave = wf.sample_catalog_state(wf.CoherentGaussian(0.4, -0.8, 1.0), grid)
    rotated = wf.WaveSample(grid, np.exp(1j * 1.234) * wave.values, 1.0)
    f1 = wf.wigner_transform(wave, ps)
    f2 = wf.wigner_transform(rotated, ps)
    assert np.max(np.abs(f1.values - f2.values)) <= 1e-10


def test_hbar_scaling_property():
    # W^hbar(x, xi) = W^1(x, xi/hbar)/hbar for the same sampled wavefunction
    grid = wf.Grid1D.symmetric(9.0, 257)
    values = wf.CoherentGaussian(0.0, 0.0, 1.0).psi(grid.nodes())
    hbar = 2.5
    ps_h = wf.natural_grid(grid, hbar)
    xi_unit = wf.Grid1D(ps_h.xi_grid.x_min / hbar, ps_h.xi_grid.step / hbar,
                        ps_h.xi_grid.count)
    f_h = wf.wigner_transform(wf.WaveSample(grid, values, hbar), ps_h)
    f_1 = wf.wigner_transform(
        wf.WaveSample(grid, values, 1.0), wf.PhaseSpaceGrid(grid, xi_unit)
    )
    assert np.max(np.abs(f_h.values - f_1.values / hbar)) <= 1e-8


@pytest.mark.parametrize("state_id", ["coherent_origin", "hermite1", "soliton"])
def test_parity_property(catalog_fields, state_id):
    _, _, _, field = catalog_fields(state_id)
    flipped = np.max(np.abs(field.values[::-1, :] - field.values[:, ::-1]))
    assert flipped <= 1e-8
