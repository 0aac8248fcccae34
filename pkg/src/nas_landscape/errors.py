"""Exception hierarchy shared by all modules."""


class NasLandscapeError(Exception):
    """Base class for all errors raised by this package."""


class OutOfBounds(NasLandscapeError):
    """A design-matrix entry lies outside its parameter's range."""

    def __init__(self, row: int, col: int, value: float, name: str, lo: float, hi: float):
        self.row, self.col, self.value = row, col, value
        super().__init__(
            f"value {value!r} at row {row}, column {col} ({name}) outside ({lo}, {hi}]"
        )


class InsufficientData(NasLandscapeError):
    """Too few rows/points for the requested operation."""


class DegenerateSample(NasLandscapeError):
    """Sample has no usable variation (constant values, coincident points, ...)."""


class SingularFit(NasLandscapeError):
    """Least-squares system is rank deficient beyond tolerance."""


class UnknownFunction(NasLandscapeError):
    """Benchmark function id outside 1..24."""


class DimensionMismatch(NasLandscapeError):
    """Point dimension does not match the instance dimension."""


class NonFiniteInput(NasLandscapeError):
    """Input contains NaN or infinity."""


class SchemaError(NasLandscapeError):
    """A CSV/JSON document does not conform to the documented schema."""
