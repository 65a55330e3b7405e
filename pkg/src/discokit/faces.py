"""Face classification: which face a direction exposes, tangency, multi-exposure."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection, InvalidBoundaryPoint
from .geometry import DEGENERATE_TOL, exposed_point_disc
from .linalg import numeric_rank, orthonormal_complement

# Absolute bound on |<u, t>| for a unit tangent generator t to count as
# contained in the hyperplane u-perp.
TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class FaceDescription:
    """The face exposed by a direction.

    ``flat_indices`` lists the discs orthogonal to the direction (0-based);
    those contribute a full translated copy of themselves. ``point_part``
    sums the exposed points of the remaining discs. ``face_dim`` is the rank
    of the concatenated bases of the flat discs; 0 means an exposed point.
    """

    flat_indices: tuple
    point_part: np.ndarray
    face_dim: int

    @property
    def is_point(self):
        return self.face_dim == 0


def face_of_direction(dt, u, degenerate_tol=DEGENERATE_TOL):
    """Classify the face of the discotope exposed by ``u``."""
    u = np.asarray(u, dtype=float)
    flat = []
    point_part = np.zeros(dt.ambient_dim)
    for j, disc in enumerate(dt.discs):
        if np.linalg.norm(disc.basis.T @ u) <= degenerate_tol:
            flat.append(j)
        else:
            point_part += exposed_point_disc(disc, u, degenerate_tol)
    if flat:
        stacked = np.hstack([dt.discs[j].basis for j in flat])
        face_dim = numeric_rank(stacked)
    else:
        face_dim = 0
    return FaceDescription(tuple(flat), point_part, face_dim)


def _unit_preimage(disc, xi, tol=1e-8):
    """Preimage of a boundary point under the basis map; must have unit norm."""
    w, *_ = np.linalg.lstsq(disc.basis, np.asarray(xi, dtype=float), rcond=None)
    if abs(np.linalg.norm(w) - 1.0) > tol:
        raise InvalidBoundaryPoint(
            f"preimage norm {np.linalg.norm(w):.6f} is not 1 within {tol}"
        )
    return w


def tangent_containment_check(dt, u, xi_list, tangency_tol=TANGENCY_TOL):
    """True iff the tangent space of each disc boundary at xi_i lies in u-perp.

    Tangent generators at a point with unit preimage w are basis @ v for v
    orthogonal to w. Note the tangent space at -xi equals the one at xi, so
    this certifies tangency only; whether the summed point is actually
    exposed by u is a separate question (compare against gradient_support).
    """
    u = np.asarray(u, dtype=float)
    for disc, xi in zip(dt.discs, xi_list):
        w = _unit_preimage(disc, xi)
        if disc.dim == 1:
            continue  # a segment boundary point has no tangent directions
        for v in orthonormal_complement(w):
            gen = disc.basis @ v
            gen = gen / np.linalg.norm(gen)
            if abs(float(u @ gen)) > tangency_tol:
                return False
    return True


def multi_exposure_test(dt, u, degenerate_tol=DEGENERATE_TOL):
    """Whether the point exposed by ``u`` is exposed by more than one direction.

    With H = u-perp and L_i the span of disc i, the point is multi-exposed
    iff dim((H cap L_1) + ... + (H cap L_N)) <= d - 2. Requires u outside
    every C_j, else the face is positive-dimensional and the test is vacuous.
    """
    u = np.asarray(u, dtype=float)
    bad = [
        j
        for j, disc in enumerate(dt.discs)
        if np.linalg.norm(disc.basis.T @ u) <= degenerate_tol
    ]
    if bad:
        raise DegenerateDirection(bad)
    spanning = []
    for disc in dt.discs:
        if disc.dim == 1:
            continue  # H cap L_i = 0 for a segment not orthogonal to u
        w = disc.basis.T @ u
        for v in orthonormal_complement(w / np.linalg.norm(w)):
            spanning.append(disc.basis @ v)
    if not spanning:
        return True  # the sum is the zero subspace, dimension 0 <= d - 2
    rank = numeric_rank(np.column_stack(spanning))
    return rank <= dt.ambient_dim - 2
