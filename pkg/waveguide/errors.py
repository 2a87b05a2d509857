from lib.errors import SimulationException


class UnknownUnit(SimulationException):
    def __init__(self, msg="unknown unit"):
        super().__init__(msg)


class UnphysicalState(SimulationException):
    def __init__(self, msg="state is not physical"):
        super().__init__(msg)
