"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """A parameter lies outside the admissible domain of an operation."""


class PoleError(DomainError):
    """A gamma function was requested at a nonpositive integer."""
