"""The dice: three orthogonal unit 2-discs in R^3, with its analytic apparatus.

The boundary circles admit the rational parametrization
t -> ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)); composing with the addition map
gives an explicit chart of the purely nonlinear part whose critical locus
is the sextic (1 - t1^2)(1 - t2^2)(1 - t3^2) - 8 t1 t2 t3 = 0, a surface of
multidegree (2,2,2) after homogenizing each parameter line.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geometry import DiscotopeSpec
from .linalg import point_stream

# Branch filter tolerance on the (bounded, trigonometric form of the)
# determinant residual; the determinant is degree 6 in unit-scale inputs.
BRANCH_TOL = 1e-10


def dice_discotope():
    """The three coordinate-plane unit discs, basis columns (b1, b2) per disc."""
    b = {
        1: np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),  # b1=(0,1,0), b2=(0,0,1)
        2: np.array([[0.0, 1.0], [0.0, 0.0], [1.0, 0.0]]),  # b1=(0,0,1), b2=(1,0,0)
        3: np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]),  # b1=(1,0,0), b2=(0,1,0)
    }
    return DiscotopeSpec((b[1], b[2], b[3]))


def dice_det(t):
    """Bracketed numerator of the critical determinant at affine parameters t.

    (1 - t1^2)(1 - t2^2)(1 - t3^2) - 8 t1 t2 t3; the positive prefactor
    1 / prod(1 + t_i^2) is omitted.
    """
    t1, t2, t3 = (float(v) for v in t)
    return (1 - t1 * t1) * (1 - t2 * t2) * (1 - t3 * t3) - 8 * t1 * t2 * t3


@dataclass(frozen=True)
class T3Roots:
    minus: float
    plus: float

    @property
    def product(self):
        return self.minus * self.plus


@dataclass(frozen=True)
class T3Linear:
    t3: float = 0.0


@dataclass(frozen=True)
class T3Degenerate:
    """Every t3 solves: both the quadratic and linear coefficients vanish."""


def solve_t3(t1, t2):
    """Solve the critical equation for t3 given (t1, t2).

    The equation is a t3^2 + 8 t1 t2 t3 - a = 0 with a = (1-t1^2)(1-t2^2);
    when a != 0 the two real roots have product exactly -1 (discriminant
    64 t1^2 t2^2 + 4 a^2 > 0). a = 0 with t1 t2 != 0 gives the linear case
    t3 = 0; if both vanish, every t3 solves.
    """
    t1, t2 = float(t1), float(t2)
    a = (1 - t1 * t1) * (1 - t2 * t2)
    b = 8 * t1 * t2
    if a == 0.0:
        return T3Linear() if b != 0.0 else T3Degenerate()
    disc = b * b + 4 * a * a
    # Stable quadratic roots: no cancellation in b + sign(b) sqrt(disc).
    if b == 0.0:
        q = math.sqrt(disc) / 2
    else:
        q = -(b + math.copysign(math.sqrt(disc), b)) / 2
    r1, r2 = q / a, -a / q
    return T3Roots(min(r1, r2), max(r1, r2))


def theta3_branches(theta1, theta2):
    """The four (cos t3, sin t3) sign combinations compatible in magnitude.

    cos t3 = +/- |sin t1 sin t2| / r and sin t3 = +/- |cos t1 cos t2| / r
    with r = sqrt(cos^2 t1 cos^2 t2 + sin^2 t1 sin^2 t2); each pair squares
    to 1 by construction. See critical_theta3_branches for the two of the
    four that actually lie on the critical locus.
    """
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    r = math.hypot(c1 * c2, s1 * s2)
    if r <= 1e-14:
        raise ValueError("degenerate angle pair (cannot happen for real angles)")
    cos_mag = abs(s1 * s2) / r
    sin_mag = abs(c1 * c2) / r
    return [
        (eps_c * cos_mag, eps_s * sin_mag)
        for eps_c in (1.0, -1.0)
        for eps_s in (1.0, -1.0)
    ]


def branch_residual(theta1, theta2, cos3, sin3):
    """Determinant residual of a branch, in the bounded trigonometric form.

    Equals dice_det at t_i = tan(theta_i / 2) up to the positive factor
    prod(1 + t_i^2); evaluated this way to avoid the tan blow-up near pi.
    """
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    return c1 * c2 * cos3 - s1 * s2 * sin3


def critical_theta3_branches(theta1, theta2, tol=BRANCH_TOL):
    """The branches whose assembled point lies on the critical locus.

    In the interior of each quarter-period cell of (theta1, theta2) exactly
    two of the four sign combinations survive.
    """
    return [
        (c3, s3)
        for c3, s3 in theta3_branches(theta1, theta2)
        if abs(branch_residual(theta1, theta2, c3, s3)) <= tol
    ]


def multidegree_surface(pairs):
    """The (2,2,2) form prod(s_i^2 - t_i^2) - 8 prod(s_i t_i) at three
    homogeneous parameter pairs ((s1,t1),(s2,t2),(s3,t3))."""
    (s1, t1), (s2, t2), (s3, t3) = pairs
    return (s1 * s1 - t1 * t1) * (s2 * s2 - t2 * t2) * (s3 * s3 - t3 * t3) \
        - 8 * s1 * s2 * s3 * t1 * t2 * t3


def phi_map(t):
    """Sum of the three rationally parametrized circle points.

    phi(t1,t2,t3) = ( 2t2/(1+t2^2) + (1-t3^2)/(1+t3^2),
                      (1-t1^2)/(1+t1^2) + 2t3/(1+t3^2),
                      2t1/(1+t1^2) + (1-t2^2)/(1+t2^2) ).
    """
    t1, t2, t3 = (float(v) for v in t)

    def f(t):
        return (1 - t * t) / (1 + t * t)

    def g(t):
        return 2 * t / (1 + t * t)

    return np.array([g(t2) + f(t3), f(t1) + g(t3), g(t1) + f(t2)])


def sample_phi(count, seed):
    """Points of the dice surface via the rational chart.

    Draws (t1, t2) standard Cauchy (the pushforward of uniform angles),
    solves for both t3 roots and maps through phi; skips the measure-zero
    degenerate fibers. Returns roughly 2*count points.
    """
    pts = []
    for i in range(count):
        rng = point_stream(seed, i)
        t1, t2 = rng.standard_cauchy(2)
        sol = solve_t3(t1, t2)
        if isinstance(sol, T3Roots):
            pts.append(phi_map((t1, t2, sol.minus)))
            pts.append(phi_map((t1, t2, sol.plus)))
        elif isinstance(sol, T3Linear):
            pts.append(phi_map((t1, t2, sol.t3)))
    return np.array(pts)


def classify_regions(num_samples, seed):
    """Region classes hit by critical samples: (theta1 cell, theta2 cell, signs).

    Draws uniform (theta1, theta2), keeps the critical branches, and labels
    each resulting sample by the quarter-period cell of each angle plus the
    branch's sign pair. Returns the set of non-empty classes; the sample
    budget counts assembled critical points (two per angle draw).
    """
    classes = set()
    draws = (num_samples + 1) // 2
    half_pi = math.pi / 2
    for i in range(draws):
        rng = point_stream(seed, i)
        theta1, theta2 = rng.uniform(0.0, 2 * math.pi, size=2)
        cell = (int(theta1 // half_pi), int(theta2 // half_pi))
        for c3, s3 in critical_theta3_branches(theta1, theta2):
            classes.add((cell, (c3 > 0, s3 > 0)))
    return classes
