from lib.errors import SimulationException


class NonGaussianSampling(SimulationException):
    def __init__(self, msg="antinormal covariance is not positive definite; the state cannot be sampled"):
        super().__init__(msg)
