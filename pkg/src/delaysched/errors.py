"""Exception types shared across the package."""


class InvalidNetworkError(ValueError):
    """A network description violates a structural invariant."""


class CapExceededError(RuntimeError):
    """A brute-force enumeration would exceed the configured bit cap."""
