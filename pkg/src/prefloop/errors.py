"""Error type shared across the package.

Every failure carries a stable machine-readable ``code`` so callers (tests,
the CLI, the HTTP service) can branch on it without parsing messages.
"""


class PrefLoopError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code

    def __repr__(self):
        return f"PrefLoopError({self.code!r}, {self.args[0]!r})"
