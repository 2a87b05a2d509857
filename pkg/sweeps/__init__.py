from sweeps.parameters import *
from sweeps.spec import *
from sweeps.pipeline import *
from sweeps.runner import *
from sweeps.csvio import *
from sweeps.figures import *
from sweeps.errors import InvalidSweep, PointFailed, UnknownFigure
