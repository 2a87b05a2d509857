from lib.errors import SimulationException


class InvalidSweep(SimulationException):
    def __init__(self, msg="invalid sweep"):
        super().__init__(msg)


class UnknownFigure(SimulationException):
    def __init__(self, figure):
        super().__init__(f"unknown figure {figure!r}, expected an id from 1 to 16")
        self.figure = figure


class PointFailed(SimulationException):
    """A single sweep point failed; carries the parameter assignment of the point."""

    def __init__(self, point: dict, cause: Exception):
        where = ", ".join(f"{k}={v!r}" for k, v in point.items())
        super().__init__(f"{type(cause).__name__}: {cause} (at {where or 'base point'})")
        self.point = point
        self.cause = cause
