"""Shared test utilities: random instance ensembles."""

import numpy as np

from discokit import DiscotopeSpec


def eccentric_disc(rng, d, n):
    """Random disc with well-separated axis lengths (generic, away from circles)."""
    q, _ = np.linalg.qr(rng.standard_normal((d, n)))
    sv = np.linspace(1.45, 0.72, n) * (1 + 0.08 * (2 * rng.random(n) - 1))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q @ np.diag(sv) @ q2


def eccentric_discotope(seed, d, dims):
    """Discotope of eccentric random discs with the given dimensions."""
    rng = np.random.default_rng(seed)
    return DiscotopeSpec(tuple(eccentric_disc(rng, d, n) for n in dims))
