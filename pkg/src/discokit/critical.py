"""Critical configurations of the addition map and boundary sampling.

The purely nonlinear part S of a discotope is swept out by sums of
antipodally-flipped exposed points: for a direction u and a sign pattern
sigma, the point sum_j sigma_j xi_j(u) has all its disc tangent spaces
inside u-perp, hence lies on (the closure of) the critical image. The
all-plus pattern recovers the boundary sheet.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConditionViolated,
    DegenerateDirection,
    NotTwoDiscs,
    SamplingExhausted,
)
from .geometry import (
    DEGENERATE_TOL,
    exposed_point_disc,
    nondegeneracy_margin,
    satisfies_nondegeneracy,
)
from .linalg import numeric_rank, point_stream

MAX_RETRIES = 100

# Stream index offsets keep direction draws, guard draws and join draws on
# disjoint Philox counter ranges.
_SHEET_STRIDE = 1 << 32
_GUARD_OFFSET = 1 << 48


def enumerate_sheets(num_discs):
    """All sign patterns with the first entry fixed to +1, all-plus first."""
    out = []
    for s in range(2 ** (num_discs - 1)):
        sigma = np.ones(num_discs, dtype=int)
        for j in range(1, num_discs):
            if (s >> (j - 1)) & 1:
                sigma[j] = -1
        out.append(sigma)
    return out


def sample_critical_point(dt, u, sigma, degenerate_tol=DEGENERATE_TOL):
    """Point sum_j sigma_j xi_j(u) on the critical image.

    Works for discs of any dimension. All-plus sigma gives the exposed
    boundary point; other patterns land on the other real sheets of S.
    """
    u = np.asarray(u, dtype=float)
    sigma = np.asarray(sigma, dtype=int)
    xis = _exposed_points(dt, u, degenerate_tol)
    return np.einsum("j,jk->k", sigma.astype(float), xis)


def _exposed_points(dt, u, degenerate_tol=DEGENERATE_TOL):
    bad = [
        j
        for j, disc in enumerate(dt.discs)
        if np.linalg.norm(disc.basis.T @ u) <= degenerate_tol
    ]
    if bad:
        raise DegenerateDirection(bad)
    return np.array([exposed_point_disc(d, u, degenerate_tol) for d in dt.discs])


def critical_angles(dt, u, sigma):
    """Angles theta_j with basis_j (cos, sin) = sigma_j xi_j(u); 2-discs only."""
    u = np.asarray(u, dtype=float)
    thetas = []
    for disc, s in zip(dt.discs, np.asarray(sigma, dtype=int)):
        if disc.dim != 2:
            raise NotTwoDiscs(f"disc has dimension {disc.dim}")
        w = disc.basis.T @ u
        n = np.linalg.norm(w)
        if n <= DEGENERATE_TOL:
            raise DegenerateDirection()
        c, s_ = s * w / n
        thetas.append(np.arctan2(s_, c) % (2 * np.pi))
    return np.asarray(thetas)


def build_M(dt, theta):
    """N x d matrix of circle tangent rows b2 cos(theta_j) - b1 sin(theta_j).

    Rank below the ambient dimension characterizes critical configurations;
    all discs must be 2-dimensional.
    """
    theta = np.asarray(theta, dtype=float)
    rows = []
    for disc, t in zip(dt.discs, theta):
        if disc.dim != 2:
            raise NotTwoDiscs(f"disc has dimension {disc.dim}")
        b1, b2 = disc.basis[:, 0], disc.basis[:, 1]
        rows.append(b2 * np.cos(t) - b1 * np.sin(t))
    return np.array(rows)


def rank_defect(mat):
    """Ambient dimension minus numeric rank (columns index the ambient space)."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    return mat.shape[1] - numeric_rank(mat)


@dataclass
class SampleCloud:
    """Points on (a sheet family of) S together with their provenance.

    ``points[i]`` always equals ``sigma[i] . xis[i]`` summed over discs;
    ``us[i]`` is the generating direction (NaN rows for join samples, which
    are not direction-driven). ``guard_points`` optionally holds points with
    complexified directions, used by the implicitization module to reject
    pseudo-equations that are merely small on the real locus.
    """

    ambient_dim: int
    num_discs: int
    points: np.ndarray
    us: np.ndarray
    sigmas: np.ndarray
    sheet_ids: np.ndarray
    xis: np.ndarray
    guard_points: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    # -- CSV: x1..xd,u1..ud,sigma,sheet_id; guard points are JSON-only ------

    def to_csv(self, path, header_comment=None):
        d = self.ambient_dim
        cols = [f"x{i + 1}" for i in range(d)] + [f"u{i + 1}" for i in range(d)]
        cols += ["sigma", "sheet_id"]
        with open(path, "w") as fh:
            if header_comment:
                fh.write(f"# {header_comment}\n")
            fh.write(",".join(cols) + "\n")
            for i in range(len(self.points)):
                vals = [repr(float(v)) for v in self.points[i]]
                vals += [repr(float(v)) for v in self.us[i]]
                vals.append("".join("+" if s > 0 else "-" for s in self.sigmas[i]))
                vals.append(str(int(self.sheet_ids[i])))
                fh.write(",".join(vals) + "\n")

    @classmethod
    def from_csv(cls, path):
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        header = lines[0].split(",")
        d = sum(1 for c in header if c.startswith("x"))
        pts, us, sigmas, sheets = [], [], [], []
        for ln in lines[1:]:
            parts = ln.split(",")
            pts.append([float(v) for v in parts[:d]])
            us.append([float(v) for v in parts[d : 2 * d]])
            sigmas.append([1 if ch == "+" else -1 for ch in parts[2 * d]])
            sheets.append(int(parts[2 * d + 1]))
        sigmas = np.array(sigmas, dtype=int)
        n = sigmas.shape[1] if sigmas.size else 1
        m = len(pts)
        return cls(
            ambient_dim=d,
            num_discs=n,
            points=np.array(pts),
            us=np.array(us),
            sigmas=sigmas,
            sheet_ids=np.array(sheets, dtype=int),
            xis=np.full((m, n, d), np.nan),
            meta={"source": str(path)},
        )

    # -- JSON: full metadata --------------------------------------------------

    def to_json_dict(self):
        obj = {
            "ambient_dim": int(self.ambient_dim),
            "num_discs": int(self.num_discs),
            "points": self.points.tolist(),
            "us": self.us.tolist(),
            "sigmas": self.sigmas.tolist(),
            "sheet_ids": self.sheet_ids.tolist(),
            "xis": self.xis.tolist(),
            "meta": dict(self.meta),
        }
        if self.guard_points is not None and len(self.guard_points):
            obj["guard_points_re"] = self.guard_points.real.tolist()
            obj["guard_points_im"] = self.guard_points.imag.tolist()
        return obj

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)
            fh.write("\n")

    @classmethod
    def from_json_dict(cls, obj):
        guard = None
        if "guard_points_re" in obj:
            guard = np.array(obj["guard_points_re"]) + 1j * np.array(
                obj["guard_points_im"]
            )
        return cls(
            ambient_dim=int(obj["ambient_dim"]),
            num_discs=int(obj["num_discs"]),
            points=np.array(obj["points"], dtype=float),
            us=np.array(obj["us"], dtype=float),
            sigmas=np.array(obj["sigmas"], dtype=int),
            sheet_ids=np.array(obj["sheet_ids"], dtype=int),
            xis=np.array(obj["xis"], dtype=float),
            guard_points=guard,
            meta=dict(obj.get("meta", {})),
        )

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def load_cloud(path):
    path = str(path)
    if path.endswith(".json"):
        return SampleCloud.from_json(path)
    return SampleCloud.from_csv(path)


def sample_S(dt, count, seed, sheets="all", guard_count=0, degenerate_tol=DEGENERATE_TOL):
    """Sample ``count`` points per sheet of the purely nonlinear part.

    Directions are normalized standard Gaussians drawn from per-point
    counter-based streams, so the cloud is reproducible point by point.
    Degenerate directions are resampled (up to MAX_RETRIES per point).
    ``sheets`` is "all" (the 2^(N-1) patterns with sigma_1 = +1) or
    "boundary_only" (the all-plus sheet). ``guard_count`` adds that many
    complex-direction points per sheet, stored separately in the cloud.
    """
    if not satisfies_nondegeneracy(dt):
        raise ConditionViolated(
            f"sum (m-1) N_m = {nondegeneracy_margin(dt) + dt.ambient_dim - 1} "
            f"< d - 1 = {dt.ambient_dim - 1}; S is not a hypersurface family "
            "(use sample_join)"
        )
    if sheets not in ("all", "boundary_only"):
        raise ValueError("sheets must be 'all' or 'boundary_only'")
    patterns = enumerate_sheets(dt.num_discs)
    if sheets == "boundary_only":
        patterns = patterns[:1]
    d = dt.ambient_dim
    pts, us, sigs, ids, xis = [], [], [], [], []
    for sheet_id, sigma in enumerate(patterns):
        for i in range(count):
            rng = point_stream(seed, sheet_id * _SHEET_STRIDE + i)
            for _ in range(MAX_RETRIES):
                u = rng.standard_normal(d)
                n = np.linalg.norm(u)
                if n < 1e-12:
                    continue
                u = u / n
                try:
                    xi = _exposed_points(dt, u, degenerate_tol)
                except DegenerateDirection:
                    continue
                break
            else:
                raise SamplingExhausted(
                    f"no admissible direction after {MAX_RETRIES} draws"
                )
            pts.append(np.einsum("j,jk->k", sigma.astype(float), xi))
            us.append(u)
            sigs.append(sigma)
            ids.append(sheet_id)
            xis.append(xi)
    guard = None
    if guard_count:
        guard = _sample_guard(dt, guard_count, seed, patterns, degenerate_tol)
    return SampleCloud(
        ambient_dim=d,
        num_discs=dt.num_discs,
        points=np.array(pts),
        us=np.array(us),
        sigmas=np.array(sigs, dtype=int),
        sheet_ids=np.array(ids, dtype=int),
        xis=np.array(xis),
        guard_points=guard,
        meta={"seed": int(seed), "count": int(count), "sheets": sheets,
              "guard_count": int(guard_count)},
    )


# Complexified directions for guard points: u = g + i*imag*h extends the
# exposed-point formula holomorphically; the resulting points lie on the
# complex variety S but off its real locus, where real pseudo-equations
# cannot stay small.
GUARD_IMAG = 0.9
GUARD_QMIN = 0.2


def _sample_guard(dt, count, seed, patterns, degenerate_tol, imag=GUARD_IMAG,
                  qmin=GUARD_QMIN):
    d = dt.ambient_dim
    out = []
    for sheet_id, sigma in enumerate(patterns):
        for i in range(count):
            rng = point_stream(seed, _GUARD_OFFSET + sheet_id * _SHEET_STRIDE + i)
            for _ in range(MAX_RETRIES):
                u = rng.standard_normal(d) + 1j * imag * rng.standard_normal(d)
                nu2 = float(np.sum(np.abs(u) ** 2))
                p = np.zeros(d, dtype=complex)
                ok = True
                for s, disc in zip(sigma, dt.discs):
                    w = disc.basis.T @ u
                    q = np.sum(w * w)  # complex bilinear square, not Hermitian
                    if abs(q) < qmin * nu2:
                        ok = False
                        break
                    p += s * (disc.basis @ w) / np.sqrt(q)
                if ok:
                    out.append(p)
                    break
            else:
                raise SamplingExhausted(
                    f"no admissible guard direction after {MAX_RETRIES} draws"
                )
    return np.array(out)


def sample_join(dt, count, seed):
    """Sample sums of independent uniform boundary points, one per disc.

    Valid when sum (m-1) N_m <= d - 1 (the reverse inequality), where the
    closure of these sums is the join of the disc boundaries.
    """
    margin = nondegeneracy_margin(dt)
    if margin > 0:
        raise ConditionViolated(
            f"join sampling needs sum (m-1) N_m <= d - 1, but margin is +{margin}"
        )
    d = dt.ambient_dim
    pts, xis = [], []
    for i in range(count):
        rng = point_stream(seed, i)
        xi = []
        for disc in dt.discs:
            for _ in range(MAX_RETRIES):
                z = rng.standard_normal(disc.dim)
                n = np.linalg.norm(z)
                if n > 1e-12:
                    xi.append(disc.basis @ (z / n))
                    break
            else:
                raise SamplingExhausted("degenerate sphere draw")
        xi = np.array(xi)
        pts.append(xi.sum(axis=0))
        xis.append(xi)
    m = len(pts)
    return SampleCloud(
        ambient_dim=d,
        num_discs=dt.num_discs,
        points=np.array(pts),
        us=np.full((m, d), np.nan),
        sigmas=np.ones((m, dt.num_discs), dtype=int),
        sheet_ids=np.zeros(m, dtype=int),
        xis=np.array(xis),
        meta={"seed": int(seed), "count": int(count), "kind": "join"},
    )
