from lib.errors import SimulationException


class DegenerateBoundary(SimulationException):
    def __init__(self, msg="boundary conditions do not determine the signal/idler solution"):
        super().__init__(msg)


class ShootingNotConverged(SimulationException):
    """Newton shooting gave up; *residual* is the last terminal residual norm."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"shooting did not converge after {iterations} Newton iterations (last residual {residual:.3e}); "
            f"the structure may be in a strong-conversion or multistable regime"
        )
        self.residual = residual
        self.iterations = iterations
