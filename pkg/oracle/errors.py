from lib.errors import SimulationException


class QuadratureNotConverged(SimulationException):
    """*interval* is the subinterval with the largest remaining error estimate."""

    def __init__(self, integral: str, interval):
        a, b = interval
        super().__init__(f"quadrature of {integral} did not converge; worst subinterval [{a:.6g}, {b:.6g}] mm")
        self.integral = integral
        self.interval = (a, b)
