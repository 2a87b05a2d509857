from lib.errors import SimulationException


class TransferBlowUp(SimulationException):
    def __init__(self, z: float):
        super().__init__(f"transfer matrix became non-finite at z = {z:.6g} mm")
        self.z = z


class IllConditionedBackwardBlock(SimulationException):
    """The backward-backward block of the transfer matrix is too close to singular to invert."""

    def __init__(self, condition_number: float, threshold: float = None):
        msg = f"backward block is near-singular (condition number {condition_number:.3e}"
        if threshold is not None:
            msg += f" above {threshold:.1e}"
        super().__init__(msg + "); the structure is close to a band-edge resonance")
        self.condition_number = condition_number
