from oracle.integrals import *
from oracle.formulas import *
from oracle.errors import QuadratureNotConverged
