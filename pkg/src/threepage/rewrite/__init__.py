"""Relations, the bounded prover, normal forms and verification suites."""

from .relations import *
from .prover import *
from .normal import *
from .suites import *
from .tactics import *
