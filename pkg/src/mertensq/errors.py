"""Exception types shared across the package.

The CLI maps these onto exit codes: DomainError/ResourceError -> 2,
AccuracyError (and subclasses) -> 3, ZeroFileFormatError -> 4.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside an operation's stated domain."""


class ResourceError(MemoryError):
    """A sieve or table would exceed the configured memory budget."""


class AccuracyError(RuntimeError):
    """An internal error bound exceeded its contract (e.g. Euler-Maclaurin
    remainder above 1e-9 on the critical line)."""


class MultiplicityError(AccuracyError):
    """Two zeros collided within 1e-6: the simplicity/independence
    assumptions behind every downstream sum are violated, so we abort
    rather than silently merge."""


class PhaseMissingError(ValueError):
    """An ingested zero set carries only |zeta_K'(rho)| but a consumer
    (h_star) needs the complex value."""


class ZeroFileFormatError(ValueError):
    """A zero-list file failed to parse; .line is the 1-based offender."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
