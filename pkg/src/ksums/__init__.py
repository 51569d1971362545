"""Harmonic subsums over integers with zero or one occurrence of a two-digit string.

K0 keeps the integers whose base-b representation avoids the string ``αβ``;
K1 keeps those containing it exactly once.  Both are computed to arbitrary
precision from moment sequences of digit-string measures.
"""

from .digits_core import PatternSpec, count_occurrences, leading_value, length, to_digits
from .summation import KRequest, KResult, k0, k1, k1_statistics, plan

__all__ = [
    "PatternSpec",
    "KRequest",
    "KResult",
    "count_occurrences",
    "k0",
    "k1",
    "k1_statistics",
    "leading_value",
    "length",
    "plan",
    "to_digits",
]
