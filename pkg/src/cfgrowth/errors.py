"""Exception types shared across the toolkit.

The CLI maps these onto its documented exit codes: DomainError -> 2,
BudgetError (and subclasses) -> 3, InvariantError -> 4.
"""


class DomainError(ValueError):
    """Input lies outside an operation's mathematical domain."""


class BudgetError(RuntimeError):
    """A precision or digit budget ran out before the request was met."""


class ScaleError(BudgetError):
    """Requested scale is finer than the certified precision of the data."""


class InvariantError(RuntimeError):
    """An internal mathematical invariant failed; indicates a bug."""
