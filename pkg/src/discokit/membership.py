"""Point membership for discotopes via a Frank-Wolfe projection.

The exposed-point formulas make the linear minimization oracle over a
discotope a sum of per-disc closed forms, so projecting a query point onto
the body needs nothing beyond support evaluations. A returned separating
direction is always re-verified against the support inequality; it is never
taken on faith from the iteration.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotConverged, ZeroDirection
from .geometry import support_discotope

INSIDE_TOL = 1e-6
MARGIN_TOL = 1e-8
DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITER = 20000


class _StackedOracle:
    """Per-discotope stacked basis matrices for fast repeated lmo calls."""

    def __init__(self, dt):
        self.stack = np.hstack([disc.basis for disc in dt.discs])  # d x sum(n_j)
        self.slices = []
        start = 0
        for disc in dt.discs:
            self.slices.append(slice(start, start + disc.dim))
            start += disc.dim

    def minimize(self, c):
        """argmin <c, .> over the discotope (origin for orthogonal discs)."""
        w = self.stack.T @ c
        scaled = np.zeros_like(w)
        for sl in self.slices:
            n = np.linalg.norm(w[sl])
            if n > 1e-14:
                scaled[sl] = w[sl] / n
        return -(self.stack @ scaled)


def lmo(dt, c):
    """Minimizer of <c, .> over the discotope.

    Per disc, the minimizer of a linear functional over an ellipsoid is the
    exposed point in the opposite direction: -basis basis^T c / |basis^T c|.
    A disc orthogonal to c contributes the origin (any of its points is
    optimal). The objective value achieved is -|c| h(c/|c|).
    """
    c = np.asarray(c, dtype=float)
    if np.linalg.norm(c) < 1e-14:
        raise ZeroDirection("lmo needs a nonzero objective vector")
    return _StackedOracle(dt).minimize(c)


@dataclass(frozen=True)
class InsideWitness:
    """Convex combination of oracle vertices reproducing the final iterate."""

    vertices: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class SeparatingDirection:
    """Unit direction u with <u, p> > h(u) + margin, verified post hoc."""

    u: np.ndarray
    margin: float


@dataclass
class MembershipReport:
    point: np.ndarray
    distance_estimate: float
    certificate: object
    iterations: int
    final_gap: float
    gap_checkpoints: list = field(default_factory=list)

    @property
    def is_inside(self):
        return isinstance(self.certificate, InsideWitness)


class _WitnessTrack:
    """Lazy convex-combination bookkeeping: O(1) per iterate.

    After step gamma, all previous weights scale by (1 - gamma); storing the
    running log-product makes the final weight of vertex i
    gamma_i * exp(logP_final - logP_i) without touching earlier entries.
    """

    def __init__(self, v0):
        self.vertices = [np.array(v0)]
        self.gammas = [1.0]
        self.logps = [0.0]
        self.logp = 0.0

    def step(self, v, gamma):
        if gamma >= 1.0:
            self.__init__(v)
            return
        self.logp += math.log1p(-gamma)
        self.vertices.append(np.array(v))
        self.gammas.append(gamma)
        self.logps.append(self.logp)

    def witness(self):
        w = np.array([
            g * math.exp(self.logp - lp) for g, lp in zip(self.gammas, self.logps)
        ])
        keep = w > 1e-17
        if not keep.any():
            keep = w == w.max()
        w = w[keep]
        verts = np.array(self.vertices)[keep]
        return InsideWitness(verts, w / w.sum())


def project(dt, p, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
            inside_tol=INSIDE_TOL, margin_tol=MARGIN_TOL):
    """Project p onto the discotope and classify membership.

    Frank-Wolfe on 1/2 |x - p|^2 with exact line search (the objective is
    quadratic, so the optimal step has a closed form, clipped to [0, 1]).
    Terminates when the duality gap <x - p, x - v> drops to tol^2 or at
    max_iter. Verdicts: inside iff the final distance is at most
    ``inside_tol``; otherwise the direction (p - x)/|p - x| must satisfy the
    strict support inequality by ``margin_tol``, else NotConverged is raised
    carrying the report.
    """
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p) < 1e-14:
        # The origin belongs to every discotope (discs are origin-centered).
        cert = InsideWitness(np.zeros((1, dt.ambient_dim)), np.ones(1))
        return MembershipReport(p, 0.0, cert, 0, 0.0, [0.0])

    oracle = _StackedOracle(dt)
    x = oracle.minimize(-p)
    track = _WitnessTrack(x)
    gap = np.inf
    best_gap = np.inf
    checkpoints = []
    it = 0
    for it in range(1, max_iter + 1):
        c = x - p
        if np.linalg.norm(c) < 1e-15:
            gap = 0.0
            break
        v = oracle.minimize(c)
        d = v - x
        gap = float(-(c @ d))  # duality gap, nonnegative by optimality of v
        best_gap = min(best_gap, gap)
        if it == 1 or it % 64 == 0:
            checkpoints.append(best_gap)
        if gap <= tol * tol:
            break
        dd = float(d @ d)
        if dd == 0.0:
            break
        gamma = min(1.0, gap / dd)
        x = x + gamma * d
        track.step(v, gamma)
    checkpoints.append(min(best_gap, gap))

    dist = float(np.linalg.norm(x - p))
    if dist <= inside_tol:
        return MembershipReport(p, dist, track.witness(), it, gap, checkpoints)

    u = (p - x) / dist
    margin = float(u @ p - support_discotope(dt, u))
    report = MembershipReport(p, dist, None, it, gap, checkpoints)
    if margin > margin_tol:
        report.certificate = SeparatingDirection(u, margin)
        return report
    raise NotConverged(report)
