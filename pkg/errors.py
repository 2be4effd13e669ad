# errors.py
# Exception hierarchy shared by every layer

from __future__ import annotations


class GroupError(Exception):
    """Base class for everything the engine raises on purpose."""


class CapExceeded(GroupError):
    def __init__(self, cap: int, order: int | None = None, what: str = "group"):
        self.cap = cap
        self.order = order
        self.what = what
        if order is None:
            msg = f"{what} exceeds the enumeration cap of {cap} elements"
        else:
            msg = f"{what} of order {order} exceeds the enumeration cap of {cap} elements"
        super().__init__(msg)


class ConstructionError(GroupError):
    """A constructor produced something other than its closed-form group."""


class InvalidAction(GroupError):
    pass


class NoSuchAction(GroupError):
    pass


class InvalidParams(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotPElement(GroupError):
    pass


class UnsupportedFamily(GroupError):
    pass


class UnsupportedTower(GroupError):
    pass


class UnknownClaim(GroupError):
    pass


class SpecSyntaxError(GroupError, ValueError):
    pass
