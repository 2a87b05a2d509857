from fluctuations.generator import *
from fluctuations.transfer import *
from fluctuations.iomap import *
from fluctuations.errors import IllConditionedBackwardBlock, TransferBlowUp
