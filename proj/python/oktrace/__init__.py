"""Trace surjectivity analysis over rings of integers of number fields.

Thin wrapper around the compiled ``_core`` extension. The heavy lifting —
maximal orders, ramification, trace lattices — happens in C++; this layer
converts the JSON/decimal-string boundary into Python types.
"""

from __future__ import annotations

import json
from typing import Any

from ._core import (  # noqa: F401
    IrreducibilityUnknown,
    ParseError,
    ReducibleInput,
    __version__,
    analyze_json,
    discriminant as _discriminant,
    factor as _factor,
    is_irreducible,
    is_prime as _is_prime,
    poly_coeffs,
    poly_text,
    power_sums as _power_sums,
)

__all__ = [
    "IrreducibilityUnknown",
    "ParseError",
    "ReducibleInput",
    "__version__",
    "analyze",
    "analyze_json",
    "discriminant",
    "factor",
    "is_irreducible",
    "is_prime",
    "poly_coeffs",
    "poly_text",
    "power_sums",
]


def analyze(poly: str) -> dict[str, Any]:
    """Full field report for a monic irreducible polynomial, as a dict.

    Unbounded integers stay decimal strings, exactly as serialized; see the
    README for the schema.
    """
    return json.loads(analyze_json(poly))


def discriminant(poly: str) -> int:
    return int(_discriminant(poly))


def factor(n: int | str) -> list[tuple[int, int]]:
    return [(int(p), int(e)) for p, e in _factor(str(n))]


def is_prime(n: int | str) -> bool:
    return _is_prime(str(n))


def power_sums(poly: str, k_max: int) -> list[int]:
    return [int(v) for v in _power_sums(poly, k_max)]
