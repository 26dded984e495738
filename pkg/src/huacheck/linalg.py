"""Thin complex linear-algebra helpers with loud failure near singularity."""

from __future__ import annotations

import numpy as np

SINGULARITY_FLOOR = 1e-12


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a matrix is too close to singular to invert reliably.

    For the kernel tensors this signals a point too close to the domain
    boundary, where V(z) or W(z,w) degenerates.
    """


def det(M):
    return complex(np.linalg.det(np.asarray(M, dtype=complex)))


def inverse(M):
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    scale = max(1.0, float(np.linalg.norm(M, 2)) ** n)
    if abs(np.linalg.det(M)) < SINGULARITY_FLOOR * scale:
        raise SingularMatrixError("matrix is singular to working precision")
    return np.linalg.inv(M)
