"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or invalid dimensions."""


class InputError(ValueError):
    """Malformed user-supplied data (CSV cells, labels, config values)."""


class DegenerateDenominatorError(ArithmeticError):
    """The denominator ||A_den z||^2 of the ratio objective fell below the
    hard floor (1e-30) at some iterate; the quotient is no longer meaningful."""

    def __init__(self, iteration, value):
        self.iteration = iteration
        self.value = value
        super().__init__(
            f"denominator {value:.3e} below floor 1e-30 at iteration {iteration}; "
            "the current iterate is (numerically) in the null space of the "
            "denominator matrix"
        )


class DivergenceError(ArithmeticError):
    """The objective became non-finite; the step size is too large."""

    def __init__(self, iteration):
        self.iteration = iteration
        super().__init__(
            f"objective became non-finite at iteration {iteration}; "
            "try a smaller step size alpha"
        )


class CurveTooShortError(ValueError):
    """Elbow detection needs at least 3 points."""


class DegenerateCurveError(ValueError):
    """The sorted-magnitude curve is exactly linear; no elbow exists.
    Callers may fall back to keeping all features."""


class EmptyModelError(ValueError):
    """A hyperplane normal is identically zero; classification is undefined."""


class UndefinedMetricError(ValueError):
    """A classification metric is undefined for the given counts
    (e.g. balanced accuracy with an empty class)."""


class ExhaustedGridError(RuntimeError):
    """Every grid-search trial failed."""

    def __init__(self, failures):
        self.failures = list(failures)
        msgs = "; ".join(str(f) for f in self.failures[:5])
        super().__init__(
            f"all {len(self.failures)} grid trials failed (first failures: {msgs})"
        )
