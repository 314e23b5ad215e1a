"""Exception hierarchy shared by all modules."""


class FogusError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(FogusError, ValueError):
    pass


class NonInvertibleFrobenius(FogusError, ValueError):
    def __init__(self, place: int):
        super().__init__(f"Frobenius at p={place} is not invertible")
        self.place = place


class DuplicatePlace(FogusError, ValueError):
    def __init__(self, place: int):
        super().__init__(f"place p={place} listed more than once")
        self.place = place


class InvalidPlace(FogusError, ValueError):
    pass


class NotAMorphism(FogusError, ValueError):
    """A matrix fails the Frobenius commutation or filtration conditions."""


class FrobeniusInstability(FogusError, ValueError):
    def __init__(self, place, index: int):
        where = "the tail places" if place is None else f"p={place}"
        super().__init__(f"W_{index} is not stable under Frobenius at {where}")
        self.place = place
        self.index = index


class ImpureObject(FogusError, ValueError):
    """A graded piece fails (or cannot be certified for) the Weil condition."""


class WeightViolation(FogusError, ValueError):
    """A matrix does not lie in W_0 of the relevant internal Hom."""


class NoSection(FogusError, ValueError):
    pass


class EmptyProbe(FogusError, ValueError):
    pass


class FormatError(FogusError, ValueError):
    """Malformed input file; the message names the offending field."""
