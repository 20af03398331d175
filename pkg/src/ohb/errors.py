"""Exception hierarchy shared by all ohb modules.

Two top-level families matter for callers (and for CLI exit codes):
UsageError means the caller handed us something malformed (exit 2),
DomainError means the inputs were well formed but rejected on
mathematical grounds (exit 1).
"""


class OhbError(Exception):
    pass


class UsageError(OhbError):
    """Malformed input: bad shapes, mismatched configs, out-of-range ranks."""


class DomainError(OhbError):
    """Well-formed input rejected on mathematical grounds."""


class ValidationError(DomainError):
    """A table that was supposed to define a symmetry fails its bijection
    or shape conditions."""


class NotIsometryError(DomainError):
    """A map handed in as distance-preserving is not.

    Carries a witness pair of vector ranks (u, v) with
    d(u, v) != d(f(u), f(v)).
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class StructureError(DomainError):
    """Internal consistency failure while factoring a verified isometry.

    Should be unreachable for genuine isometries; if raised, it carries
    the offending chain index (1-based) so the contradiction can be
    inspected.
    """

    def __init__(self, message, chain_index=None):
        super().__init__(message)
        self.chain_index = chain_index


class CapExceeded(DomainError):
    """A desk-scale guardrail refused to materialize a space."""
