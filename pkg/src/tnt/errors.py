"""Exception types shared across the package."""
from __future__ import annotations


class TntError(Exception):
    """Base class for package-specific errors."""


class InvalidMoveError(TntError):
    """A bistellar move request failed validation.

    The ``clause`` attribute names the specific precondition that failed,
    one of ``"A not a face"``, ``"B already a face"``, ``"link mismatch"``,
    ``"label not fresh"``.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class SearchLimitError(TntError):
    """An exact search exceeded its configured ceiling."""
