"""Dense linear-algebra kernels: pseudoinverse, least squares, eigendecomposition,
matrix exponential and principal matrix logarithm.

The pseudoinverse, least-squares solve, eigendecomposition and matrix
exponential delegate to LAPACK-backed numpy/scipy routines behind the
package's error contracts.  The principal logarithm is computed by
eigendecomposition, ``V log(diag(w)) V^{-1}``, which is adequate for the
near-identity matrices produced by short-sampling-time fits; an
ill-conditioned eigenvector matrix triggers a warning rather than a failure.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchCutError,
    IllConditionedWarning,
    InvalidInputError,
    NumericError,
    ShapeError,
)

#: cond(V) above which logm/eig results carry an IllConditionedWarning.
CONDITION_WARN_THRESHOLD = 1e8


def _check_matrix(a, name="matrix"):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"{name} must be 2-D with at least one row and column, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return a


def _check_square(a, name="matrix"):
    a = _check_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a


def pinv(a: np.ndarray, rcond: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse with singular-value truncation.

    Singular values below ``rcond * sigma_max`` are treated as zero.  The
    default ``rcond`` is ``max(rows, cols) * machine epsilon``, the standard
    rank-revealing choice.
    """
    a = _check_matrix(a)
    if rcond is None:
        rcond = max(a.shape) * np.finfo(a.dtype if a.dtype.kind == "f" else np.float64).eps
    if rcond < 0:
        raise InvalidInputError(f"rcond must be nonnegative, got {rcond}")
    return np.linalg.pinv(a, rcond=rcond)


def matrix_rank(a: np.ndarray, rcond: float | None = None) -> int:
    """Numerical rank under the same truncation rule as :func:`pinv`."""
    a = _check_matrix(a)
    if rcond is None:
        rcond = max(a.shape) * np.finfo(np.float64).eps
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rcond * s[0]))


def lstsq_fit(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Minimum-norm least-squares solution ``B`` of ``x1 @ B ~ x2``.

    Computed as ``pinv(x1) @ x2``; with full column rank this coincides with
    the normal-equations solution.
    """
    x1 = _check_matrix(x1, "x1")
    x2 = _check_matrix(x2, "x2")
    if x1.shape[0] != x2.shape[0]:
        raise ShapeError(f"row-count mismatch: x1 has {x1.shape[0]} rows, x2 has {x2.shape[0]}")
    return pinv(x1) @ x2


@dataclass(frozen=True)
class EigenDecomposition:
    """Right eigenpairs of a square matrix.

    ``eigenvalues[i]`` pairs with column ``i`` of ``right_eigenvectors``.
    ``condition_estimate`` is the 2-norm condition number of the eigenvector
    matrix; large values signal a nearly defective matrix.
    """

    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray
    condition_estimate: float


def eig(a: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a real square matrix.

    Complex eigenvalues of real input appear in conjugate pairs (LAPACK
    guarantee).  A conditioning warning is attached when the eigenvector
    matrix has condition number above ``CONDITION_WARN_THRESHOLD``.
    """
    a = _check_square(a)
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:  # QR iteration failed to converge
        raise NumericError(f"eigendecomposition did not converge: {exc}") from exc
    try:
        cond = float(np.linalg.cond(v, 2))
    except np.linalg.LinAlgError:
        cond = float("inf")
    if cond > CONDITION_WARN_THRESHOLD:
        warnings.warn(
            f"eigenvector matrix condition number {cond:.3e} exceeds "
            f"{CONDITION_WARN_THRESHOLD:.0e}; eigenvectors may be inaccurate",
            IllConditionedWarning,
            stacklevel=2,
        )
    return EigenDecomposition(eigenvalues=w, right_eigenvectors=v, condition_estimate=cond)


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring with Pade approximation)."""
    a = _check_square(a)
    return scipy.linalg.expm(a)


def logm(a: np.ndarray, rcond: float = 1e-12) -> np.ndarray:
    """Principal matrix logarithm of a real square matrix.

    Requires that no eigenvalue of ``a`` lies on the closed negative real
    axis (including zero); otherwise a :class:`BranchCutError` is raised,
    which for sampled-flow matrices signals a sampling time too large or a
    rank-deficient lift.  The result is real for real input off the branch
    cut; residual imaginary parts from the complex eigendecomposition are
    discarded after a consistency check.
    """
    a = _check_square(a)
    if np.iscomplexobj(a):
        raise InvalidInputError("logm expects a real matrix")
    dec = eig(a)
    w = dec.eigenvalues
    scale = max(float(np.max(np.abs(w))), 1.0)
    on_cut = (np.abs(w) <= rcond * scale) | ((w.real <= 0.0) & (np.abs(w.imag) <= rcond * scale))
    if np.any(on_cut):
        bad = w[on_cut]
        raise BranchCutError(
            "principal logarithm undefined: eigenvalue(s) on the closed negative "
            f"real axis or numerically zero: {bad}"
        )
    v = dec.right_eigenvectors
    b = v @ (np.log(w)[:, None] * np.linalg.inv(v))
    imag_norm = np.linalg.norm(b.imag)
    real_norm = max(np.linalg.norm(b.real), 1.0)
    if imag_norm > 1e-6 * real_norm:
        warnings.warn(
            f"discarding imaginary part of size {imag_norm:.3e} in matrix logarithm",
            IllConditionedWarning,
            stacklevel=2,
        )
    return np.ascontiguousarray(b.real)
