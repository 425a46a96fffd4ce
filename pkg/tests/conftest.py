"""Shared catalog registry and cached transform fields."""

from __future__ import annotations

import numpy as np
import pytest

import wignerflow as wf

# Identity-grade catalog: every state is (numerically) normalised before the
# transform, sampled on its documented grid with the natural frequency lattice.
CATALOG = {
    "box": wf.Box(1.0, 2.0),
    "coherent": wf.CoherentGaussian(0.5, -0.3, 1.0),
    "coherent_origin": wf.CoherentGaussian(0.0, 0.0, 1.0),
    "gauss_general": wf.GaussGeneral(1.3, 0.4, 0.2, -0.5, 0.3, 0.1, 1.0),
    "hermite0": wf.Hermite(0, 1.0, normalized=True),
    "hermite1": wf.Hermite(1, 1.0, normalized=True),
    "hermite2": wf.Hermite(2, 1.0, normalized=True),
    "hermite3": wf.Hermite(3, 1.0, normalized=True),
    "hermite4": wf.Hermite(4, 1.0, normalized=True),
    "hermite5": wf.Hermite(5, 1.0, normalized=True),
    "free_gaussian": wf.FreeEvolvedGaussian(0.7, 1.0),
    "delta_bound": wf.DeltaBound(-2.0, 1.0),
    "soliton": wf.Soliton(-4.0, 1.0),
    "harmonic_eigen": wf.HarmonicEigen(3, 0.7, 1.0, normalized=True),
}

# States whose wavefunction is even or odd about 0 on a symmetric grid.
PARITY_STATES = [
    "box",
    "coherent_origin",
    "hermite0",
    "hermite1",
    "hermite2",
    "hermite3",
    "hermite4",
    "hermite5",
    "free_gaussian",
    "delta_bound",
    "soliton",
    "harmonic_eigen",
]


@pytest.fixture(scope="session")
def catalog_fields():
    """state id -> (state, normalised wave, natural ps grid, field), built lazily."""
    cache: dict[str, tuple] = {}

    def build(state_id: str):
        if state_id not in cache:
            state = CATALOG[state_id]
            grid = wf.default_grid(state)
            wave = wf.normalize_sample(wf.sample_catalog_state(state, grid))
            ps = wf.natural_grid(grid, state.hbar)
            cache[state_id] = (state, wave, ps, wf.wigner_transform(wave, ps))
        return cache[state_id]

    return build


def fidelity(recovered: wf.WaveSample, reference: wf.WaveSample) -> float:
    """|<recovered, reference>| / ||reference||^2 (phase-insensitive)."""
    inner = recovered.grid.step * np.sum(np.conj(recovered.values) * reference.values)
    return float(abs(inner) / reference.norm_sq())
