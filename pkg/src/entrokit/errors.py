"""Exception types shared across the package."""


class UndefinedResultError(ValueError):
    """A quantity has no defined value for this input.

    Raised for degenerate inputs that the algorithms cannot score, such as
    a constant signal fed to a sigmoid mapping (zero standard deviation) or
    a sample-entropy call that finds no template matches.  Windowed and
    batch drivers catch this and record the affected cell as missing
    instead of aborting the whole run.
    """


class InsufficientDataError(ValueError):
    """The signal is too short for the requested embedding."""
