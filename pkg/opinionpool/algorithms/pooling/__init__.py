from .barycenter import *
from .density import *
from .hellinger import *
from .holder import *
from .linear import *
from .loglinear import *
