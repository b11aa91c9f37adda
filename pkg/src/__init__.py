# Package initialization
__version__ = "0.1.0"
__author__ = "MV-Product Verifier"

from .exceptions import *
from .algebra_core import *
from .catalog import *
from .ideal_lattice import *
