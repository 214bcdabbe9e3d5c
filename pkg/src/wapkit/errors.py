"""Exception types shared across the package.

Input problems (malformed words, bad morphisms, unknown names) subclass
``ValueError``; search budgets that ran out subclass ``RuntimeError`` so
callers can tell "you asked something invalid" from "I looked and did not
find it yet".
"""


class WordError(ValueError):
    """Malformed word, letter outside the alphabet, or bad generator spec."""


class PreconditionError(ValueError):
    """An operation was called outside its domain (e.g. non-prolongeable start)."""


class BudgetError(RuntimeError):
    """A bounded search ran out of budget before finding what it needed."""
