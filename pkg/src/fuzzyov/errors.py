class FuzzyovError(ValueError):
    """Base class for all library errors."""


class ParseError(FuzzyovError):
    """Malformed input file; the message carries ``name:line``."""


class GraphError(FuzzyovError):
    pass


class CoverError(FuzzyovError):
    pass


class MetricError(FuzzyovError):
    """A metric is undefined for its input (e.g. a graph without edges)."""
