import importlib.metadata

from .classes import *
from .config import config
from .exceptions import *
from .algorithms import *  # isort:skip
from .experiments import *  # isort:skip

try:
    __version__ = importlib.metadata.version("opinionpool")
except importlib.metadata.PackageNotFoundError:  # pragma: no cover (not installed)
    __version__ = "0.1.0"
del importlib
