"""Small shared numerical helpers: ranks, directions, per-point RNG streams."""

import numpy as np

from .errors import ZeroDirection

# Relative SVD threshold shared by every rank computation in the package.
RANK_TOL = 1e-10


def numeric_rank(mat, rel_tol=RANK_TOL):
    """Rank of ``mat`` counting singular values above ``rel_tol`` times the largest."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def smallest_singular_ratio(mat):
    """sigma_min / sigma_max of ``mat`` (0.0 for a zero matrix)."""
    s = np.linalg.svd(np.asarray(mat, dtype=float), compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def unit_direction(u):
    """Normalize ``u`` to a unit vector, rejecting (near-)zero input."""
    u = np.asarray(u, dtype=float).ravel()
    n = np.linalg.norm(u)
    if not np.isfinite(n) or n < 1e-14:
        raise ZeroDirection("cannot normalize a zero direction")
    return u / n


def orthonormal_complement(w):
    """Orthonormal basis of the hyperplane orthogonal to vector ``w`` in R^n.

    Returns an (n-1, n) array whose rows span w-perp.
    """
    w = np.asarray(w, dtype=float).ravel()
    _, _, vt = np.linalg.svd(w.reshape(1, -1))
    return vt[1:]


def point_stream(seed, index):
    """Counter-based RNG stream for sample ``index`` under ``seed``.

    Streams are disjoint and order-independent, so parallel sampling would
    reproduce the sequential results bit for bit.
    """
    return np.random.Generator(
        np.random.Philox(key=np.uint64(seed), counter=int(index) << 128)
    )
