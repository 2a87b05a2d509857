from quantumstats.moments import *
from quantumstats.observables import *
from quantumstats.montecarlo import *
from quantumstats.errors import NonGaussianSampling
