"""Exception hierarchy shared by all kinkforge modules."""


class KinkforgeError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(KinkforgeError):
    """An iterative method hit its iteration cap."""


class DegenerateSegment(KinkforgeError):
    """g(a+) and g(a-) coincide, so no segment connects the wells."""


class BlockedByWell(KinkforgeError):
    """The trajectory ran into a zero of f other than the target well."""


class LeftSegment(KinkforgeError):
    """The trajectory drifted off the segment g(e) = g(a-) + m*s."""


class Budget(KinkforgeError):
    """Integration ran past the allowed x budget without arriving."""


class InvalidGrid(KinkforgeError):
    """A grid is too small or otherwise malformed."""


class Breakdown(KinkforgeError):
    """A pivot in the block LDL^T factorization is (numerically) singular."""


class IllConditioned(KinkforgeError):
    """A rank decision cannot be made reliably."""


class BoundaryMinimum(KinkforgeError):
    """A bounded minimization ended at the edge of its search interval."""
