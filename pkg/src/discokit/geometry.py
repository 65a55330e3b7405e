"""Discs, discotopes, support functions and exposed points.

A generalized disc is the image of the unit ball of R^n under a full-rank
d x n matrix; a discotope is a Minkowski sum of such discs. Support values
and exposed points have closed forms in terms of the basis matrices, which
is what everything here evaluates.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDirection, SpecValidationError
from .linalg import RANK_TOL, numeric_rank

# Below this, `basis^T u` is treated as zero and the direction as orthogonal
# to the disc (u in C_j): the exposed face is the whole disc.
DEGENERATE_TOL = 1e-10


@dataclass(frozen=True)
class DiscSpec:
    """One generalized disc, held as a d x n basis matrix with independent columns."""

    basis: np.ndarray

    def __post_init__(self):
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if basis.ndim != 2:
            raise SpecValidationError("basis must be a 2-d matrix")
        d, n = basis.shape
        if n < 1:
            raise SpecValidationError("disc needs at least one basis column")
        if n > d:
            raise SpecValidationError(f"disc dimension {n} exceeds ambient dimension {d}")
        if not np.all(np.isfinite(basis)):
            raise SpecValidationError("basis entries must be finite")
        s = np.linalg.svd(basis, compute_uv=False)
        if s[-1] <= RANK_TOL * s[0] or s[0] == 0.0:
            raise SpecValidationError(
                f"basis columns are numerically dependent (sv ratio {s[-1] / s[0]:.2e})"
            )
        basis = basis.copy()
        basis.flags.writeable = False
        object.__setattr__(self, "basis", basis)

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        """Dimension n of the disc (its rank)."""
        return self.basis.shape[1]


@dataclass(frozen=True)
class DiscotopeSpec:
    """Ordered list of discs in a common ambient space."""

    discs: tuple

    def __post_init__(self):
        discs = tuple(
            d if isinstance(d, DiscSpec) else DiscSpec(d) for d in self.discs
        )
        if not discs:
            raise SpecValidationError("discotope needs at least one disc")
        d0 = discs[0].ambient_dim
        for j, disc in enumerate(discs):
            if disc.ambient_dim != d0:
                raise SpecValidationError(
                    f"ambient dimension {disc.ambient_dim} != {d0}", f"discs[{j}]"
                )
        object.__setattr__(self, "discs", discs)

    @property
    def ambient_dim(self):
        return self.discs[0].ambient_dim

    @property
    def num_discs(self):
        return len(self.discs)


def support_disc(disc, u):
    """Support value max <u, p> over the disc: the norm of basis^T u.

    Positively homogeneous in u; exactly 0 iff u is orthogonal to the disc.
    """
    u = np.asarray(u, dtype=float)
    return float(np.linalg.norm(disc.basis.T @ u))


def support_discotope(dt, u):
    """Support value of the Minkowski sum: plain left-to-right sum over discs."""
    total = 0.0
    for disc in dt.discs:
        total += support_disc(disc, u)
    return total


def exposed_point_disc(disc, u, degenerate_tol=DEGENERATE_TOL):
    """The unique boundary point of the disc exposed by direction u.

    Closed form basis . basis^T u / |basis^T u|. Raises DegenerateDirection
    when u is orthogonal to the disc within ``degenerate_tol``.
    """
    u = np.asarray(u, dtype=float)
    w = disc.basis.T @ u
    n = np.linalg.norm(w)
    if n <= degenerate_tol:
        raise DegenerateDirection()
    return disc.basis @ (w / n)


def gradient_support(dt, u, degenerate_tol=DEGENERATE_TOL):
    """Gradient of the support function at u: the exposed point of the discotope.

    Requires u outside every orthogonal sphere C_j; otherwise raises
    DegenerateDirection carrying the offending disc indices, in which case
    the exposed face is a translated sub-discotope rather than a point.
    """
    u = np.asarray(u, dtype=float)
    bad = [
        j
        for j, disc in enumerate(dt.discs)
        if np.linalg.norm(disc.basis.T @ u) <= degenerate_tol
    ]
    if bad:
        raise DegenerateDirection(bad)
    total = np.zeros(dt.ambient_dim)
    for disc in dt.discs:
        total += exposed_point_disc(disc, u, degenerate_tol)
    return total


def type_vector(dt):
    """Counts (N_1, ..., N_d) of discs by dimension."""
    counts = np.zeros(dt.ambient_dim, dtype=int)
    for disc in dt.discs:
        counts[disc.dim - 1] += 1
    return counts


def is_full_dimensional(dt):
    """True iff the spans of all discs together fill the ambient space."""
    stacked = np.hstack([disc.basis for disc in dt.discs])
    return numeric_rank(stacked) == dt.ambient_dim


def nondegeneracy_margin(dt):
    """sum (m-1) N_m minus (d-1); >= 0 iff the purely nonlinear part is
    expected to be a hypersurface."""
    counts = type_vector(dt)
    # counts[i] holds the number of discs of dimension i+1
    return int(sum(i * c for i, c in enumerate(counts))) - (dt.ambient_dim - 1)


def satisfies_nondegeneracy(dt):
    """The inequality sum (m-1) N_m >= d - 1."""
    return nondegeneracy_margin(dt) >= 0


# --- JSON interchange -------------------------------------------------------
#
# Schema: {"ambient_dim": d, "discs": [{"basis": [[column d-vectors]]}, ...]}
# Each inner list is one basis column of length d.


def discotope_to_json_dict(dt):
    return {
        "ambient_dim": int(dt.ambient_dim),
        "discs": [{"basis": disc.basis.T.tolist()} for disc in dt.discs],
    }


def discotope_from_json_dict(obj):
    if not isinstance(obj, dict):
        raise SpecValidationError("top-level value must be an object")
    try:
        d = int(obj["ambient_dim"])
    except (KeyError, TypeError, ValueError):
        raise SpecValidationError("missing or non-integer field", "ambient_dim")
    raw_discs = obj.get("discs")
    if not isinstance(raw_discs, list) or not raw_discs:
        raise SpecValidationError("must be a non-empty list", "discs")
    discs = []
    for j, entry in enumerate(raw_discs):
        loc = f"discs[{j}]"
        if not isinstance(entry, dict) or "basis" not in entry:
            raise SpecValidationError("missing 'basis'", loc)
        cols = entry["basis"]
        if not isinstance(cols, list) or not cols:
            raise SpecValidationError("'basis' must be a non-empty list of columns", loc)
        for i, col in enumerate(cols):
            if not isinstance(col, list) or len(col) != d:
                raise SpecValidationError(
                    f"column must be a list of {d} numbers", f"{loc}.basis[{i}]"
                )
            for v in col:
                if not isinstance(v, (int, float)) or isinstance(v, bool):
                    raise SpecValidationError("non-numeric entry", f"{loc}.basis[{i}]")
        try:
            discs.append(DiscSpec(np.array(cols, dtype=float).T))
        except SpecValidationError as err:
            raise SpecValidationError(str(err), loc)
    return DiscotopeSpec(tuple(discs))


def load_discotope(path):
    """Read a DiscotopeSpec from a JSON file, with field-precise errors."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise SpecValidationError(f"invalid JSON: {err}", str(path))
    return discotope_from_json_dict(obj)


def save_discotope(dt, path):
    with open(path, "w") as fh:
        json.dump(discotope_to_json_dict(dt), fh, indent=1)
        fh.write("\n")
