from classical.profile import *
from classical.analytic import *
from classical.shooting import *
from classical.errors import DegenerateBoundary, ShootingNotConverged
