class PlotInputError(Exception):
    """Base class for input-file problems."""


class SchemaMismatch(PlotInputError):
    """The input file does not carry the expected cavicool schema."""


class EmptyGrid(PlotInputError):
    """The grid is degenerate (fewer than two points on an axis)."""
