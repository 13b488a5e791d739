"""Shared non-fixture helpers for the test suite."""

import numpy as np

import koopid


def sine_mode(grid: koopid.Grid1D, k: int) -> np.ndarray:
    """The k-th Dirichlet sine mode on the grid, endpoints exactly zero."""
    x = grid.nodes()
    span = grid.x_max - grid.x_min
    v = np.sin(k * np.pi * (x - grid.x_min) / span)
    v[0] = 0.0
    v[-1] = 0.0
    return v


def dirichlet_field(grid: koopid.Grid1D, values: np.ndarray) -> koopid.Field:
    v = np.array(values, dtype=float)
    v[0] = 0.0
    v[-1] = 0.0
    return koopid.Field(grid, v, dirichlet=True)
