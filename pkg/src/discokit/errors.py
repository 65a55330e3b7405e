"""Exception types shared across the toolkit."""


class DiscotopeError(Exception):
    """Base class for all discokit errors."""


class SpecValidationError(DiscotopeError):
    """A disc or discotope description failed validation.

    ``location`` pinpoints the offending field (e.g. ``discs[2].basis[1]``).
    """

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class DegenerateDirection(DiscotopeError):
    """Direction orthogonal to one or more discs; the exposed face is not a point.

    ``indices`` holds the 0-based indices of the offending discs.
    """

    def __init__(self, indices=()):
        self.indices = tuple(indices)
        super().__init__(f"direction orthogonal to disc(s) {list(self.indices)}")


class NotTwoDiscs(DiscotopeError):
    """An operation restricted to 2-dimensional discs met a disc of another dimension."""


class SamplingExhausted(DiscotopeError):
    """Retry budget exceeded while resampling degenerate directions."""


class ConditionViolated(DiscotopeError):
    """A structural precondition on the type vector does not hold."""


class InvalidBoundaryPoint(DiscotopeError):
    """A point claimed to lie on a disc boundary has a non-unit preimage."""


class ZeroDirection(DiscotopeError):
    """A (near-)zero vector was passed where a direction is required."""


class Undersampled(DiscotopeError):
    """Too few sample points for the requested monomial basis.

    ``required`` and ``provided`` carry the counts for diagnostics.
    """

    def __init__(self, required, provided):
        self.required = required
        self.provided = provided
        super().__init__(
            f"need at least {required} sample points, got {provided}"
        )


class NoEquation(DiscotopeError):
    """No polynomial of the requested degree/parity vanishes on the cloud."""

    def __init__(self, best_residual):
        self.best_residual = best_residual
        super().__init__(f"no equation found (best residual {best_residual:.3e})")


class AmbiguousNullspace(DiscotopeError):
    """Two or more independent polynomials vanish on the cloud.

    Signals that the degree is too high or the cloud is not a hypersurface.
    """

    def __init__(self, residuals):
        self.residuals = tuple(residuals)
        super().__init__(
            "nullspace dimension >= 2 (residuals "
            + ", ".join(f"{r:.3e}" for r in self.residuals)
            + ")"
        )


class NotConverged(DiscotopeError):
    """Projection stalled without an inside verdict or a valid separator.

    Carries the last ``MembershipReport`` in ``report``.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"no verdict after {report.iterations} iterations "
            f"(distance {report.distance_estimate:.3e}, gap {report.final_gap:.3e})"
        )
