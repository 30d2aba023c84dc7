from ._helper import getLogger, log_to_console, log_to_file
from .utils import *
from .exceptions import *
