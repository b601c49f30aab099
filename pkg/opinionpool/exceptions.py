class OpinionPoolException(Exception):
    pass


class DimensionMismatch(OpinionPoolException, ValueError):
    pass


class EmptyExpertSet(OpinionPoolException, ValueError):
    pass


class InvalidParameter(OpinionPoolException, ValueError):
    pass


class InvalidWeights(OpinionPoolException, ValueError):
    pass


class NormalizationRequired(OpinionPoolException):
    pass


class TooManyExperts(OpinionPoolException, ValueError):
    pass


class FamilyMismatch(OpinionPoolException, ValueError):
    pass


class UnknownMethod(OpinionPoolException, ValueError):
    pass


class ConfigError(OpinionPoolException, ValueError):
    """A configuration file that does not parse or does not fit its schema"""

    def __init__(self, message, *, source=None, lineno=None, colno=None):
        self.source = source
        self.lineno = lineno
        self.colno = colno
        where = source or "<config>"
        if lineno is not None:
            where = f"{where}:{lineno}:{colno}"
        super().__init__(f"{where}: {message}")
