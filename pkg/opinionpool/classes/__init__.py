from .expertset import *
from .expfam import *
from .gaussian import *
from .results import *
