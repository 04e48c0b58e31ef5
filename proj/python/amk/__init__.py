"""At-most-k CNF encodings (pw, bs, pd, sc, pc, ba) with oracles and pigeonhole instances."""

from ._core import (
    ENCODINGS,
    DimacsError,
    Formula,
    OracleLimitExceeded,
    UnsupportedBound,
    check_ac_by_up,
    count_report,
    encode,
    find_model,
    generate_pigeonhole,
    oracle_check,
    oracle_equivalent,
    unit_propagate,
    verify_model,
)

__all__ = [
    "ENCODINGS",
    "DimacsError",
    "Formula",
    "OracleLimitExceeded",
    "UnsupportedBound",
    "check_ac_by_up",
    "count_report",
    "encode",
    "find_model",
    "generate_pigeonhole",
    "oracle_check",
    "oracle_equivalent",
    "unit_propagate",
    "verify_model",
]
