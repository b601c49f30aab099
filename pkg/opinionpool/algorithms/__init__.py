from .expfam import *
from .gaussian import *
from .metrics import *
from .pooling import *
