from waveguide.modes import *
from waveguide.model import *
import waveguide.units
import waveguide.couplings

rescale_units = waveguide.units.rescale_units
coupling_rates = waveguide.couplings.coupling_rates
