from .scenarios import *
from .sweep import *
