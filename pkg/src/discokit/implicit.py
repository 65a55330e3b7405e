"""Implicit equations of sampled hypersurfaces by monomial interpolation.

The defining polynomial is recovered as a null vector of the matrix of
basis monomials evaluated at coordinate-scaled sample points. At degree 24
in double precision a raw SVD cannot isolate that null vector: the
Vandermonde spectrum decays smoothly through any fixed threshold. The fit
therefore (a) column-equilibrates, (b) applies one or two spectrum-whitening
rounds (re-multiplying by clipped inverse singular factors, in extended
precision when affordable), and (c) accepts a candidate only if its residual
on held-out validation points is small. Clouds may carry complex-direction
guard points; candidates must also vanish there, which rejects real-locus
pseudo-equations (polynomials that are merely exponentially small on the
sampled real sheets).
"""

import json
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .errors import AmbiguousNullspace, NoEquation, Undersampled

LONGDOUBLE = np.longdouble
CLONGDOUBLE = np.clongdouble

PARITIES = ("none", "even_total", "even_each_variable")

# Default acceptance gate for validated residuals. Measured margins: genuine
# equations land at <= 1e-7 across the worked examples, pseudo-equations and
# junk at >= 1e-5.
RESIDUAL_TOL = 1e-6
# Work in 80-bit floats while train_rows * basis^2 stays below this.
LD_BUDGET = 4.5e8
WHITEN_CLIP = 1e-10
WHITEN_ROUNDS = 2
TRAIN_FRACTION = 0.75
# Private shuffle seed: fitting is a deterministic function of the cloud.
_SPLIT_SEED = 314159


def _grlex_key(e):
    return (sum(e), tuple(-x for x in e))


def monomial_exponents(dim, degree, parity="none"):
    """Exponent tuples of the monomial basis, graded-lex ordered.

    Parities: "none" keeps every monomial of total degree <= degree;
    "even_total" keeps even total degrees; "even_each_variable" keeps
    monomials that are squares in every variable.
    """
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    exps = set()
    if parity == "even_each_variable":
        for total in range(degree // 2 + 1):
            for combo in combinations_with_replacement(range(dim), total):
                e = [0] * dim
                for i in combo:
                    e[i] += 2
                exps.add(tuple(e))
    else:
        step = 2 if parity == "even_total" else 1
        for total in range(0, degree + 1, step):
            for combo in combinations_with_replacement(range(dim), total):
                e = [0] * dim
                for i in combo:
                    e[i] += 1
                exps.add(tuple(e))
    return sorted(exps, key=_grlex_key)


@dataclass(frozen=True)
class MonomialBasis:
    dim: int
    degree: int
    parity: str
    exponents: tuple

    @property
    def size(self):
        return len(self.exponents)


def monomial_basis(dim, degree, parity="none"):
    return MonomialBasis(dim, degree, parity, tuple(monomial_exponents(dim, degree, parity)))


def basis_size(dim, degree, parity="none"):
    """Closed-form count of the basis (binomials; cross-checked by tests)."""
    if parity == "none":
        return math.comb(dim + degree, dim)
    if parity == "even_total":
        return sum(math.comb(k + dim - 1, dim - 1) for k in range(0, degree + 1, 2))
    if parity == "even_each_variable":
        return math.comb(dim + degree // 2, dim)
    raise ValueError(f"parity must be one of {PARITIES}")


@dataclass
class ImplicitPolynomial:
    """Sparse polynomial: exponent tuple -> coefficient.

    Coefficients are unit-norm with the first nonzero (in graded-lex order)
    positive. ``fit_residual`` is the worst validated residual of the fit
    (0.0 for exact reference polynomials). ``scale`` records the
    per-coordinate scaling used while fitting, if any.
    """

    dim: int
    terms: dict
    total_degree: int
    fit_residual: float = 0.0
    scale: np.ndarray | None = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def coefficient_vector(self, exponents):
        return np.array([self.terms.get(e, 0.0) for e in exponents])


def normalize_terms(terms):
    """Unit-norm coefficients, first nonzero (graded-lex) positive, zeros dropped."""
    items = [(tuple(int(x) for x in e), float(c)) for e, c in terms.items() if c != 0.0]
    if not items:
        raise ValueError("polynomial has no nonzero terms")
    norm = math.sqrt(math.fsum(c * c for _, c in items))
    items = [(e, c / norm) for e, c in items]
    items.sort(key=lambda kv: _grlex_key(kv[0]))
    lead = next(c for _, c in items if abs(c) > 0.0)
    if lead < 0:
        items = [(e, -c) for e, c in items]
    return dict(items)


def make_polynomial(terms, dim, fit_residual=0.0, scale=None):
    tnorm = normalize_terms(terms)
    total = max(sum(e) for e in tnorm)
    return ImplicitPolynomial(dim, tnorm, total, fit_residual, scale)


def evaluate(poly, x):
    """Value of the polynomial at x: direct sparse evaluation, fsum-compensated."""
    x = np.asarray(x)
    maxdeg = max((max(e) for e in poly.terms), default=0)
    pows = [np.ones_like(x)]
    for _ in range(maxdeg):
        pows.append(pows[-1] * x)
    vals = []
    for e, c in poly.sorted_terms():
        t = c
        for i, ei in enumerate(e):
            if ei:
                t = t * pows[ei][i]
        vals.append(t)
    if np.iscomplexobj(x):
        return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return math.fsum(vals)


def residual_at(poly, x):
    """|p(x)| normalized by the norm of the term-value vector at x.

    This is the scale-free measure used for held-out validation: it stays
    meaningful even where individual monomials are huge or tiny.
    """
    x = np.asarray(x)
    maxdeg = max((max(e) for e in poly.terms), default=0)
    pows = [np.ones_like(x)]
    for _ in range(maxdeg):
        pows.append(pows[-1] * x)
    vals = []
    for e, c in poly.sorted_terms():
        t = c
        for i, ei in enumerate(e):
            if ei:
                t = t * pows[ei][i]
        vals.append(t)
    denom = math.sqrt(math.fsum(abs(v) ** 2 for v in vals))
    if denom == 0.0:
        return 0.0
    if np.iscomplexobj(x):
        num = abs(complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)))
    else:
        num = abs(math.fsum(vals))
    return num / denom


def evaluate_many(poly, points):
    """Vectorized polynomial values at an array of points (plain float64 sums)."""
    points = np.asarray(points)
    m, dim = points.shape
    maxdeg = max((max(e) for e in poly.terms), default=0)
    pows = np.empty((maxdeg + 1, m, dim), dtype=points.dtype)
    pows[0] = 1
    for t in range(1, maxdeg + 1):
        pows[t] = pows[t - 1] * points
    out = np.zeros(m, dtype=points.dtype)
    for e, c in poly.sorted_terms():
        col = np.full(m, c, dtype=points.dtype)
        for i, ei in enumerate(e):
            if ei:
                col = col * pows[ei][:, i]
        out += col
    return out


def count_terms(poly, rel_threshold=1e-8):
    """Number of coefficients above rel_threshold times the largest magnitude."""
    if not poly.terms:
        return 0
    cmax = max(abs(c) for c in poly.terms.values())
    return sum(1 for c in poly.terms.values() if abs(c) > rel_threshold * cmax)


def _vandermonde(x_scaled, exponents, dtype):
    X = x_scaled.astype(dtype)
    m, dim = X.shape
    maxdeg = max((max(e) for e in exponents), default=0)
    pows = np.empty((maxdeg + 1, m, dim), dtype=dtype)
    pows[0] = 1
    for t in range(1, maxdeg + 1):
        pows[t] = pows[t - 1] * X
    A = np.empty((m, len(exponents)), dtype=dtype)
    for j, e in enumerate(exponents):
        col = np.ones(m, dtype=dtype)
        for i, ei in enumerate(e):
            if ei:
                col = col * pows[ei][:, i]
        A[:, j] = col
    return A


def _max_residual(rows, coeff):
    tv = rows * coeff
    denom = np.sqrt((np.abs(tv) ** 2).sum(axis=1))
    keep = denom > 0
    if not keep.any():
        return 0.0
    return float((np.abs(tv[keep].sum(axis=1)) / denom[keep]).max())


def fit_implicit(cloud, degree, parity="none", residual_tol=RESIDUAL_TOL,
                 rounds=WHITEN_ROUNDS, clip_rel=WHITEN_CLIP):
    """Fit one implicit equation of the given degree/parity to a cloud.

    Returns an ImplicitPolynomial whose validated residual is at most
    ``residual_tol``. Raises Undersampled when the cloud has fewer than
    3x basis-size points, NoEquation when no candidate validates, and
    AmbiguousNullspace when two independent candidates validate (degree too
    high, or the cloud is not a hypersurface).
    """
    exponents = monomial_exponents(cloud.ambient_dim, degree, parity)
    k = len(exponents)
    pts = np.asarray(cloud.points, dtype=float)
    if len(pts) < 3 * k:
        raise Undersampled(3 * k, len(pts))
    guard = getattr(cloud, "guard_points", None)

    rng = np.random.default_rng(_SPLIT_SEED)
    pts = pts[rng.permutation(len(pts))]
    ntr = int(len(pts) * TRAIN_FRACTION)
    scale = np.abs(pts).max(axis=0)
    have_guard = guard is not None and len(guard)
    if have_guard:
        guard = guard[rng.permutation(len(guard))]
        scale = np.maximum(scale, np.abs(guard).max(axis=0))
    scale[scale == 0] = 1.0

    n_rows = ntr + (len(guard) if have_guard else 0)
    use_ld = n_rows * k * k <= LD_BUDGET

    A = _vandermonde(pts / scale, exponents, LONGDOUBLE if use_ld else np.float64)
    Atr, Ava = A[:ntr], A[ntr:]
    Gva = None
    if have_guard:
        C = _vandermonde(guard / scale, exponents, CLONGDOUBLE if use_ld else complex)
        mg = int(len(guard) * TRAIN_FRACTION)
        Atr = np.vstack([Atr, C[:mg].real, C[:mg].imag])
        Gva = C[mg:]

    cn = np.sqrt((np.abs(Atr) ** 2).sum(axis=0))
    cn[cn == 0] = 1.0
    Atr = Atr / cn
    Ava = Ava / cn
    if have_guard:
        Gva = Gva / cn.astype(Gva.dtype)

    # Whitening: each round re-measures the bottom of the spectrum after
    # dividing out the (clipped) singular structure seen so far.
    M = Atr
    Ttot = None
    for _ in range(rounds):
        s, Vt = np.linalg.svd(np.asarray(M, dtype=np.float64), full_matrices=False)[1:]
        clip = np.maximum(s, s[0] * clip_rel)
        T = Vt.T / clip
        if use_ld:
            T = T.astype(LONGDOUBLE)
        Ttot = T if Ttot is None else Ttot @ T
        M = Atr @ Ttot
    _, s2, Vt2 = np.linalg.svd(np.asarray(M, dtype=np.float64), full_matrices=False)

    candidates = []
    for idx in ((-1, -2) if len(Vt2) >= 2 else (-1,)):
        g = Vt2[idx]
        c = Ttot @ (g.astype(LONGDOUBLE) if use_ld else g)
        r_real = _max_residual(Ava, c)
        r_guard = _max_residual(Gva, np.asarray(c, dtype=complex)) if have_guard else 0.0
        candidates.append((max(r_real, r_guard), c))

    best_res, best_c = candidates[0]
    if best_res > residual_tol:
        raise NoEquation(best_res)
    if len(candidates) > 1 and candidates[1][0] <= residual_tol:
        raise AmbiguousNullspace([best_res, candidates[1][0]])

    coeff = np.asarray(best_c, dtype=np.float64) / np.asarray(cn, dtype=np.float64)
    terms = {}
    for j, e in enumerate(exponents):
        terms[e] = coeff[j] / float(np.prod(scale ** np.array(e)))
    cmax = max(abs(v) for v in terms.values())
    terms = {e: v for e, v in terms.items() if abs(v) > 1e-14 * cmax}
    return make_polynomial(terms, cloud.ambient_dim, fit_residual=best_res, scale=scale)


def find_implicit(cloud, max_degree, parity="none", residual_tol=RESIDUAL_TOL):
    """Smallest degree <= max_degree with a validated equation, plus the fit.

    Returns (degree, polynomial) or None. Degrees whose basis does not grow
    (odd steps under an even parity) are skipped; ambiguous fits at a given
    degree do not stop the search.
    """
    prev_size = -1
    for degree in range(1, max_degree + 1):
        k = basis_size(cloud.ambient_dim, degree, parity)
        if k == prev_size:
            continue
        prev_size = k
        try:
            poly = fit_implicit(cloud, degree, parity, residual_tol=residual_tol)
        except (NoEquation, AmbiguousNullspace):
            continue
        return degree, poly
    return None


def find_degree(cloud, max_degree, parity="none", residual_tol=RESIDUAL_TOL):
    """Degree of the smallest validated equation, or None if none <= max_degree."""
    found = find_implicit(cloud, max_degree, parity, residual_tol)
    return None if found is None else found[0]


# --- JSON interchange --------------------------------------------------------
#
# {"dim": d, "degree": D, "terms": [{"exp": [..], "coef": c}, ...],
#  "residual": r, "ordering": "grlex"}


def polynomial_to_json_dict(poly):
    return {
        "dim": int(poly.dim),
        "degree": int(poly.total_degree),
        "terms": [
            {"exp": list(e), "coef": float(c)} for e, c in poly.sorted_terms()
        ],
        "residual": float(poly.fit_residual),
        "ordering": "grlex",
    }


def polynomial_from_json_dict(obj):
    terms = {tuple(int(x) for x in t["exp"]): float(t["coef"]) for t in obj["terms"]}
    poly = ImplicitPolynomial(
        dim=int(obj["dim"]),
        terms=dict(sorted(terms.items(), key=lambda kv: _grlex_key(kv[0]))),
        total_degree=int(obj["degree"]),
        fit_residual=float(obj.get("residual", 0.0)),
    )
    return poly


def save_polynomial(poly, path, meta=None):
    obj = polynomial_to_json_dict(poly)
    if meta:
        obj["meta"] = meta
    with open(path, "w") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_polynomial(path):
    with open(path) as fh:
        return polynomial_from_json_dict(json.load(fh))
