"""Error types shared across the package."""


class TheoremViolation(Exception):
    """An identity that is guaranteed by a proven theorem failed on a concrete instance.

    This is the most important signal the package can emit: it means either the
    implementation is wrong or the mathematics is.  The CLI maps it to exit
    status 2, reserved exclusively for this case.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}
