"""Generalized EDMD over functional bases: data matrices, operator fit,
spectrum extraction and eigenfunctional evaluation.

The fitted matrix acts on basis coefficients from the right: row k of the
data matrices collects the functional values on snapshot k, and the fit is
the minimum-norm least-squares solution of ``Xi1 @ U ~ Xi2``.  Eigenvalues
of the fitted matrix approximate the sampled-flow operator spectrum; dividing
the principal complex log by the sampling time gives generator-scale
eigenvalues.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import InsufficientDataError, KoopidError, RankDeficiencyWarning, ShapeError
from .fields import Field
from .linalg import eig, matrix_rank, pinv
from .observables import FunctionalSpec, functional_values
from .simulate import SnapshotDataset


def build_data_matrices(
    dataset: SnapshotDataset, basis: Sequence[FunctionalSpec]
) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate every basis functional on every snapshot pair.

    Returns (Xi1, Xi2), both m x n: rows follow the dataset order, columns the
    basis order; Xi1 holds values on the initial snapshots, Xi2 on the
    advanced ones.
    """
    if len(basis) == 0:
        raise KoopidError("basis must be nonempty")
    m, n = len(dataset), len(basis)
    xi1 = np.empty((m, n))
    xi2 = np.empty((m, n))
    grid = dataset.grid
    for k, (u, u_next) in enumerate(dataset.pairs):
        for i, spec in enumerate(basis):
            try:
                xi1[k, i] = functional_values(spec, u.values, grid, u.dirichlet)
                xi2[k, i] = functional_values(spec, u_next.values, grid, u_next.dirichlet)
            except KoopidError as exc:
                raise type(exc)(f"functional {i} failed on pair {k}: {exc}") from exc
    return xi1, xi2


@dataclass(frozen=True, eq=False)
class KoopmanFit:
    """Least-squares fit of the sampled-flow operator on a functional basis."""

    xi1: np.ndarray
    xi2: np.ndarray
    U: np.ndarray
    t_s: float
    rank_used: int
    residual: float
    basis: Optional[Tuple[FunctionalSpec, ...]] = None


def edmd_fit(
    xi1: np.ndarray,
    xi2: np.ndarray,
    t_s: float,
    basis: Optional[Sequence[FunctionalSpec]] = None,
) -> KoopmanFit:
    """Fit ``U = pinv(Xi1) @ Xi2`` and report retained rank and residual.

    Requires at least as many snapshot pairs as basis functionals; a retained
    rank below the column count raises a RankDeficiencyWarning.
    """
    xi1 = np.asarray(xi1, dtype=float)
    xi2 = np.asarray(xi2, dtype=float)
    if xi1.shape != xi2.shape:
        raise ShapeError(f"data matrices must have equal shapes, got {xi1.shape} and {xi2.shape}")
    m, n = xi1.shape
    if m < n:
        raise InsufficientDataError(f"insufficient data: m < n ({m} < {n})")
    rank = matrix_rank(xi1)
    if rank < n:
        warnings.warn(
            f"data matrix rank {rank} < {n} columns; fit uses the truncated pseudoinverse",
            RankDeficiencyWarning,
            stacklevel=2,
        )
    u_mat = pinv(xi1) @ xi2
    denom = np.linalg.norm(xi2)
    residual = float(np.linalg.norm(xi1 @ u_mat - xi2) / denom) if denom > 0 else 0.0
    return KoopmanFit(
        xi1=xi1,
        xi2=xi2,
        U=u_mat,
        t_s=float(t_s),
        rank_used=rank,
        residual=residual,
        basis=tuple(basis) if basis is not None else None,
    )


@dataclass(frozen=True)
class SpectrumMode:
    """One eigenpair of the fitted operator.

    ``lambda_l`` is the generator-scale eigenvalue ``log(lambda_u)/t_s`` via
    the principal branch, or None when ``lambda_u`` lies on the closed
    negative real axis.  ``residual_score`` is the data-consistency residual
    ``||Xi2 v - lambda_u Xi1 v|| / ||lambda_u Xi1 v||``, used to rank
    plausibility (never as a hard filter); the denominator scale keeps
    strongly decaying modes from ranking well merely because their one-step
    prediction is close to zero.
    """

    lambda_u: complex
    lambda_l: Optional[complex]
    coefficients: np.ndarray
    residual_score: float


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    modes: Tuple[SpectrumMode, ...]
    t_s: float

    def __len__(self) -> int:
        return len(self.modes)

    def lambda_l_values(self) -> List[Optional[complex]]:
        return [m.lambda_l for m in self.modes]


def spectrum(fit: KoopmanFit) -> SpectrumResult:
    """Eigenvalues and eigenfunctional coefficients of a fitted operator.

    Modes are sorted by residual score ascending, then by |Re lambda_l|
    ascending (undefined generator eigenvalues sort last within a score tie).
    """
    dec = eig(fit.U)
    modes = []
    for i, lam in enumerate(dec.eigenvalues):
        v = dec.right_eigenvectors[:, i]
        x1v = fit.xi1 @ v
        denom = abs(lam) * np.linalg.norm(x1v)
        score = float(np.linalg.norm(fit.xi2 @ v - lam * x1v) / denom) if denom > 0 else np.inf
        on_cut = lam.imag == 0.0 and lam.real <= 0.0
        lam_l = None if on_cut else cmath.log(lam) / fit.t_s
        modes.append(
            SpectrumMode(
                lambda_u=complex(lam),
                lambda_l=lam_l,
                coefficients=v.copy(),
                residual_score=score,
            )
        )
    modes.sort(key=lambda m: (m.residual_score, abs(m.lambda_l.real) if m.lambda_l is not None else np.inf))
    return SpectrumResult(modes=tuple(modes), t_s=fit.t_s)


def eval_eigenfunctional(fit: KoopmanFit, coefficients: np.ndarray, u: Field) -> complex:
    """Evaluate an eigenfunctional, given as basis coefficients, on a field."""
    if fit.basis is None:
        raise KoopidError("fit carries no basis; build it with edmd_fit(..., basis=...)")
    c = np.asarray(coefficients)
    if c.shape != (len(fit.basis),):
        raise ShapeError(f"expected {len(fit.basis)} coefficients, got shape {c.shape}")
    vals = np.array([functional_values(spec, u.values, u.grid, u.dirichlet) for spec in fit.basis])
    return complex(np.sum(c * vals))
