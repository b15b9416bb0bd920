"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the operation's domain."""


class SizeError(ValueError):
    """A requested matrix order exceeds the configured maximum."""


class NotPrimeError(ValueError):
    """A construction required a prime and got a composite."""


class UnsupportedFieldError(NotPrimeError):
    """A prime power (but not a prime) was passed to a Paley builder."""


class ResidueClassError(ValueError):
    """A prime is in the wrong residue class mod 4 for the construction."""


class PmParseError(ValueError):
    """Malformed `.pm` matrix file.  Carries the 1-based offending line."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NoPrimeInRange(Exception):
    """Prime search exhausted its exponent window.

    Attributes carry the searched interval so callers can report it.
    """

    def __init__(self, k, epsilon, m_lo, m_hi):
        super().__init__(
            f"no prime 2^m*{k}-1 for m in {m_lo}..{m_hi} (epsilon={epsilon})"
        )
        self.k = k
        self.epsilon = epsilon
        self.m_lo = m_lo
        self.m_hi = m_hi


class CoverageGap(Exception):
    """A residue class has no covering prime."""

    def __init__(self, residue, period):
        super().__init__(f"no covering prime for m = {residue} (mod {period})")
        self.residue = residue
        self.period = period


class WindowError(ValueError):
    """Census window is empty (L < 1)."""
