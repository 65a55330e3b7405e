"""Independent oracles used to pin expected values in the tests.

These deliberately avoid the closed forms under test: support values come
from brute-force grids over the full product of boundary angles, gradients
from central finite differences, basis counts from exhaustive enumeration.
"""

import numpy as np


def grid_support_3discs(discs, u, n=64):
    """Max of <u, x> over a full n^3 grid of boundary triples (no separability)."""
    thetas = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    vals = []
    for disc in discs:
        b1, b2 = disc.basis[:, 0], disc.basis[:, 1]
        pts = np.outer(np.cos(thetas), b1) + np.outer(np.sin(thetas), b2)
        vals.append(pts @ u)
    total = vals[0][:, None, None] + vals[1][None, :, None] + vals[2][None, None, :]
    return float(total.max())


def grid_argmax_disc(disc, u, n=200000):
    """Exposed point of a 2-disc by dense angular search."""
    thetas = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    b1, b2 = disc.basis[:, 0], disc.basis[:, 1]
    pts = np.outer(np.cos(thetas), b1) + np.outer(np.sin(thetas), b2)
    return pts[np.argmax(pts @ u)]


def fd_gradient(f, u, h=1e-6):
    """Central-difference gradient of a scalar function at u."""
    u = np.asarray(u, dtype=float)
    g = np.zeros_like(u)
    for i in range(len(u)):
        e = np.zeros_like(u)
        e[i] = h
        g[i] = (f(u + e) - f(u - e)) / (2 * h)
    return g


def count_monomials_brute(dim, degree, parity):
    """Exhaustive monomial count by iterating the full exponent box."""
    from itertools import product

    count = 0
    for e in product(range(degree + 1), repeat=dim):
        t = sum(e)
        if t > degree:
            continue
        if parity == "even_total" and t % 2:
            continue
        if parity == "even_each_variable" and any(x % 2 for x in e):
            continue
        count += 1
    return count
