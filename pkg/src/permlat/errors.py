"""Exception types shared across the package."""


class PermlatError(Exception):
    pass


class CapExceeded(PermlatError):
    """A computation would exceed a configured size cap."""


class BadParams(PermlatError, ValueError):
    pass


class NotSubgroup(PermlatError):
    pass


class GroupMismatch(PermlatError):
    pass


class RankTooSmall(PermlatError):
    pass


class NotEquivariant(PermlatError):
    pass


class NotExact(PermlatError):
    def __init__(self, msg, position=None):
        super().__init__(msg)
        self.position = position


class SequenceNotVerified(PermlatError):
    pass


class HypothesisFailed(PermlatError):
    pass


class WitnessInvalid(PermlatError):
    pass
