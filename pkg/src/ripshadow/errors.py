"""Shared failure classes: audits and internal cross-checks fail loudly."""


class AuditError(ValueError):
    """An exact-arithmetic audit of an intended configuration failed."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""
