"""Exception types shared across the package."""

from __future__ import annotations


class TintError(Exception):
    """Base class for errors raised by this package."""


class InputError(TintError):
    """A malformed input file or manifest; carries file/line diagnostics."""

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:" if line is None else f"{path}:{line}:"
            where += " "
        super().__init__(f"{where}{message}")
