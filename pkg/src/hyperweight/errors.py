class NotColorableError(ValueError):
    """The hypergraph has an edge that every weighting leaves monochromatic."""


class PreconditionError(ValueError):
    """Input violates a structural requirement of the chosen algorithm."""


class InternalCaseFailure(RuntimeError):
    """A constructive step could not meet its guarantee; indicates a bug."""


class SamplingError(RuntimeError):
    """A random generator ran out of retries."""


class BudgetExhausted(RuntimeError):
    """An exact search hit its node or time limit before deciding."""
