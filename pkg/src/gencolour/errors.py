"""Exception types shared across the package."""


class BudgetExceededError(Exception):
    """A search ran past its configured budget; no verdict was reached.

    Raised instead of returning a value so that "unknown" can never be
    mistaken for "false".  The message names the operation and the cap
    that was hit.
    """


class InternalInvariantError(Exception):
    """An invariant the algorithm is supposed to guarantee failed.

    Carries the name of the stage that broke (e.g. ``heavy-set``,
    ``matching``, ``extension``) so certificate pipelines can report
    exactly where trust was lost.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
