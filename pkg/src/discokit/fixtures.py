"""Bundled worked examples: specs, reference equations, expected invariants.

Four fixtures ship with the package:

* ``dice``        three orthogonal unit 2-discs in R^3; its boundary surface
                  has degree 24 and a defining polynomial with 455 terms
                  (all exponents even). No printed reference equation; the
                  degree-294 singular locus is informational only.
* ``r3-quartic``  two orthogonal unit 2-discs in R^3 (type (0,2,0)); the
                  purely nonlinear part is an explicit 7-term quartic.
* ``r4-quartic``  two unit 3-discs in R^4 (type (0,0,2,0)); an explicit
                  12-term quartic.
* ``r6-join``     two 2-discs and one 3-disc in R^6 in the join regime; the
                  sampled sums satisfy one cubic and three quartic
                  generators.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .critical import sample_S, sample_join
from .geometry import DiscotopeSpec, discotope_to_json_dict
from .implicit import (
    count_terms,
    find_implicit,
    make_polynomial,
    polynomial_to_json_dict,
    residual_at,
)

DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class ExampleFixture:
    name: str
    discotope: DiscotopeSpec
    known_equations: tuple
    expected_degree: int | None
    expected_terms: int | None
    parity: str
    kind: str  # "hypersurface" | "join"
    notes: dict = field(default_factory=dict)


def _dice():
    from .dice import dice_discotope

    return ExampleFixture(
        name="dice",
        discotope=dice_discotope(),
        known_equations=(),
        expected_degree=24,
        expected_terms=455,
        parity="even_each_variable",
        kind="hypersurface",
        notes={"singular_locus_degree": 294, "informational": True},
    )


def _r3_quartic():
    e = np.eye(3)
    dt = DiscotopeSpec((
        np.column_stack([e[:, 1], e[:, 2]]),  # x1 = 0 plane
        np.column_stack([e[:, 0], e[:, 2]]),  # x2 = 0 plane
    ))
    quartic = make_polynomial({
        (4, 0, 0): 1.0, (2, 2, 0): -2.0, (0, 4, 0): 1.0,
        (2, 0, 2): 2.0, (0, 2, 2): 2.0, (0, 0, 4): 1.0,
        (0, 0, 2): -4.0,
    }, dim=3)
    return ExampleFixture("r3-quartic", dt, (quartic,), 4, 7,
                          "even_each_variable", "hypersurface")


def _r4_quartic():
    e = np.eye(4)
    dt = DiscotopeSpec((
        e[:, :3],   # x4 = 0 hyperplane
        e[:, 1:],   # x1 = 0 hyperplane
    ))
    quartic = make_polynomial({
        (4, 0, 0, 0): 1.0, (2, 2, 0, 0): 2.0, (0, 4, 0, 0): 1.0,
        (2, 0, 2, 0): 2.0, (0, 2, 2, 0): 2.0, (0, 0, 4, 0): 1.0,
        (2, 0, 0, 2): -2.0, (0, 2, 0, 2): 2.0, (0, 0, 2, 2): 2.0,
        (0, 0, 0, 4): 1.0, (0, 2, 0, 0): -4.0, (0, 0, 2, 0): -4.0,
    }, dim=4)
    return ExampleFixture("r4-quartic", dt, (quartic,), 4, 12,
                          "even_each_variable", "hypersurface")


def _r6_join():
    e = np.eye(6)
    dt = DiscotopeSpec((
        e[:, :2],
        e[:, 2:4],
        np.column_stack([(e[:, 0] + e[:, 2]) / 2, e[:, 4], e[:, 5]]),
    ))
    cubic = make_polynomial({
        (2, 0, 1, 0, 0, 0): 4.0, (0, 2, 1, 0, 0, 0): 4.0,
        (1, 0, 2, 0, 0, 0): -4.0, (1, 0, 0, 2, 0, 0): -4.0,
        (1, 0, 0, 0, 2, 0): 1.0, (0, 0, 1, 0, 2, 0): -1.0,
        (1, 0, 0, 0, 0, 2): 1.0, (0, 0, 1, 0, 0, 2): -1.0,
        (1, 0, 0, 0, 0, 0): 3.0, (0, 0, 1, 0, 0, 0): -3.0,
    }, dim=6)
    quartic_34 = make_polynomial({
        (0, 0, 4, 0, 0, 0): 16.0, (0, 0, 2, 2, 0, 0): 32.0, (0, 0, 0, 4, 0, 0): 16.0,
        (0, 0, 2, 0, 2, 0): 8.0, (0, 0, 0, 2, 2, 0): -8.0, (0, 0, 0, 0, 4, 0): 1.0,
        (0, 0, 2, 0, 0, 2): 8.0, (0, 0, 0, 2, 0, 2): -8.0, (0, 0, 0, 0, 2, 2): 2.0,
        (0, 0, 0, 0, 0, 4): 1.0, (0, 0, 2, 0, 0, 0): -40.0, (0, 0, 0, 2, 0, 0): -24.0,
        (0, 0, 0, 0, 2, 0): 6.0, (0, 0, 0, 0, 0, 2): 6.0, (0, 0, 0, 0, 0, 0): 9.0,
    }, dim=6)
    quartic_12 = make_polynomial({
        (4, 0, 0, 0, 0, 0): 16.0, (2, 2, 0, 0, 0, 0): 32.0, (0, 4, 0, 0, 0, 0): 16.0,
        (2, 0, 0, 0, 2, 0): 8.0, (0, 2, 0, 0, 2, 0): -8.0, (0, 0, 0, 0, 4, 0): 1.0,
        (2, 0, 0, 0, 0, 2): 8.0, (0, 2, 0, 0, 0, 2): -8.0, (0, 0, 0, 0, 2, 2): 2.0,
        (0, 0, 0, 0, 0, 4): 1.0, (2, 0, 0, 0, 0, 0): -40.0, (0, 2, 0, 0, 0, 0): -24.0,
        (0, 0, 0, 0, 2, 0): 6.0, (0, 0, 0, 0, 0, 2): 6.0, (0, 0, 0, 0, 0, 0): 9.0,
    }, dim=6)
    quartic_mixed = make_polynomial({
        (2, 0, 2, 0, 0, 0): 16.0, (0, 2, 2, 0, 0, 0): 16.0,
        (2, 0, 0, 2, 0, 0): 16.0, (0, 2, 0, 2, 0, 0): 16.0,
        (2, 0, 0, 0, 2, 0): -4.0, (0, 2, 0, 0, 2, 0): -4.0,
        (0, 0, 2, 0, 2, 0): -4.0, (0, 0, 0, 2, 2, 0): -4.0,
        (2, 0, 0, 0, 0, 2): -4.0, (0, 2, 0, 0, 0, 2): -4.0,
        (0, 0, 2, 0, 0, 2): -4.0, (0, 0, 0, 2, 0, 2): -4.0,
        (0, 0, 0, 0, 4, 0): 1.0, (0, 0, 0, 0, 2, 2): 2.0, (0, 0, 0, 0, 0, 4): 1.0,
        (1, 0, 1, 0, 2, 0): 16.0, (1, 0, 1, 0, 0, 2): 16.0,
        (2, 0, 0, 0, 0, 0): -12.0, (0, 2, 0, 0, 0, 0): -12.0,
        (1, 0, 1, 0, 0, 0): -16.0, (0, 0, 2, 0, 0, 0): -12.0,
        (0, 0, 0, 2, 0, 0): -12.0, (0, 0, 0, 0, 2, 0): 6.0,
        (0, 0, 0, 0, 0, 2): 6.0, (0, 0, 0, 0, 0, 0): 9.0,
    }, dim=6)
    return ExampleFixture("r6-join", dt, (cubic, quartic_34, quartic_12, quartic_mixed),
                          8, None, "none", "join",
                          notes={"codimension": 2, "degree_is_informational": True})


def _build_all():
    return {f.name: f for f in (_dice(), _r3_quartic(), _r4_quartic(), _r6_join())}


FIXTURES = _build_all()


def get_fixture(name):
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}"
        )


@dataclass
class VerifyResult:
    name: str
    passed: bool
    checks: list  # (label, ok, detail)

    def summary_lines(self):
        return [f"{'PASS' if ok else 'FAIL'} {label}: {detail}" for label, ok, detail in self.checks]


def verify_fixture(name, seed=2024, sample_count=None, equation_tol=1e-9,
                   heldout_tol=1e-7):
    """Run a fixture's full pipeline and check its expected invariants.

    Hypersurface fixtures: sample all sheets, recover the implicit equation,
    compare degree/term count (and the printed equation, coefficient-wise,
    when one is bundled). Join fixtures: check the printed generators on
    join samples. Returns a VerifyResult.
    """
    fx = get_fixture(name)
    checks = []
    if fx.kind == "join":
        from .implicit import evaluate_many

        count = sample_count or 1000
        cloud = sample_join(fx.discotope, count, seed)
        for i, gen in enumerate(fx.known_equations):
            worst = float(np.abs(evaluate_many(gen, cloud.points)).max())
            checks.append((
                f"generator[{i}] residual", worst <= equation_tol,
                f"max |value| = {worst:.3e} (tol {equation_tol:g})",
            ))
        return VerifyResult(name, all(ok for _, ok, _ in checks), checks)

    if name == "dice":
        count = sample_count or 600  # 4 sheets -> 2400 fit points
    else:
        count = sample_count or 250
    cloud = sample_S(fx.discotope, count, seed, sheets="all")
    held = sample_S(fx.discotope, max(50, count // 8), seed + 1, sheets="all")

    found = find_implicit(cloud, fx.expected_degree, parity=fx.parity)
    if found is None:
        checks.append(("degree", False, f"no equation found up to {fx.expected_degree}"))
        return VerifyResult(name, False, checks)
    degree, poly = found
    checks.append((
        "degree", degree == fx.expected_degree,
        f"find_degree = {degree}, expected {fx.expected_degree}",
    ))
    nterms = count_terms(poly, 1e-8)
    checks.append((
        "terms", nterms == fx.expected_terms,
        f"count_terms(1e-8) = {nterms}, expected {fx.expected_terms}",
    ))
    worst = max(residual_at(poly, p) for p in held.points)
    checks.append((
        "held-out residual", worst <= heldout_tol,
        f"max residual = {worst:.3e} (tol {heldout_tol:g})",
    ))
    if name == "dice":
        all_even = all(all(x % 2 == 0 for x in e) for e in poly.terms)
        checks.append(("even exponents", all_even, f"all exponents even: {all_even}"))
    for i, ref in enumerate(fx.known_equations):
        exps = sorted(set(ref.terms) | set(poly.terms))
        diff = float(np.max(np.abs(poly.coefficient_vector(exps)
                                   - ref.coefficient_vector(exps))))
        checks.append((
            f"equation[{i}] coefficients", diff <= 1e-6,
            f"max |fitted - printed| = {diff:.3e} (tol 1e-06)",
        ))
    return VerifyResult(name, all(ok for _, ok, _ in checks), checks)


def evaluate_reference(poly, x):
    from .implicit import evaluate

    return evaluate(poly, x)


# --- shipped data files ------------------------------------------------------


def write_fixture_files(directory=DATA_DIR):
    """Export every fixture as DiscotopeSpec + polynomial JSON plus a manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, fx in sorted(FIXTURES.items()):
        spec_file = f"{name}.spec.json"
        with open(directory / spec_file, "w") as fh:
            json.dump(discotope_to_json_dict(fx.discotope), fh, indent=1)
            fh.write("\n")
        eq_files = []
        for i, eq in enumerate(fx.known_equations):
            eq_file = f"{name}.eq{i}.json"
            with open(directory / eq_file, "w") as fh:
                json.dump(polynomial_to_json_dict(eq), fh, indent=1)
                fh.write("\n")
            eq_files.append(eq_file)
        manifest[name] = {
            "spec": spec_file,
            "equations": eq_files,
            "expected_degree": fx.expected_degree,
            "expected_terms": fx.expected_terms,
            "parity": fx.parity,
            "kind": fx.kind,
            "notes": fx.notes,
        }
    with open(directory / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return manifest


def load_manifest(directory=DATA_DIR):
    with open(Path(directory) / "manifest.json") as fh:
        return json.load(fh)
