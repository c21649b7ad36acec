"""Residue-class permutations of the non-negative integers.

Selectors follow the CLI: ``pabcd:a,b,c,d``, ``pabcd:a,b,c,d/simple:r``,
``pabcd:a,b,c,d/ext:r``, ``fafc:a,b,fa,c,d,fc``, ``primecomp`` and
``file:path.json``.
"""

from ._permseq import (
    DomainError,
    Error,
    IntegrityError,
    NoCrossingError,
    ParameterError,
    ParseError,
    Perm,
    PrecisionError,
    ResourceError,
    candidates,
    ccset_validate,
    convergents,
    crossovers,
    l_floor,
    table,
    table_ids,
    verify,
)

__all__ = [
    "DomainError",
    "Error",
    "IntegrityError",
    "NoCrossingError",
    "ParameterError",
    "ParseError",
    "Perm",
    "PrecisionError",
    "ResourceError",
    "candidates",
    "ccset_validate",
    "convergents",
    "crossovers",
    "l_floor",
    "table",
    "table_ids",
    "verify",
]
