"""Base-b digit primitives shared by every other module."""

from __future__ import annotations

from dataclasses import dataclass, field

ALPHABET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


@dataclass(frozen=True)
class PatternSpec:
    """A base ``b`` together with the two-digit string ``alpha beta``."""

    b: int
    alpha: int
    beta: int
    same: bool = field(init=False)

    def __post_init__(self):
        _check_base(self.b)
        for name, d in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0 <= d < self.b:
                raise ValueError(f"{name}={d} is not a digit in base {self.b}")
        object.__setattr__(self, "same", self.alpha == self.beta)

    @classmethod
    def parse(cls, b: int, pattern: str) -> "PatternSpec":
        """Build from a two-character string written in the base's own alphabet."""
        _check_base(b)
        if b > len(ALPHABET):
            raise ValueError(f"string patterns need b <= {len(ALPHABET)}")
        if len(pattern) != 2:
            raise ValueError(f"pattern must have exactly two digits, got {pattern!r}")
        digits = []
        for ch in pattern.upper():
            d = ALPHABET.find(ch)
            if d < 0 or d >= b:
                raise ValueError(f"{ch!r} is not a digit in base {b}")
            digits.append(d)
        return cls(b, digits[0], digits[1])

    @property
    def pair_value(self) -> int:
        """The integer ``alpha*b + beta``."""
        return self.alpha * self.b + self.beta

    def label(self) -> str:
        if self.b <= len(ALPHABET):
            return ALPHABET[self.alpha] + ALPHABET[self.beta]
        return f"({self.alpha},{self.beta})"


def to_digits(n: int, b: int) -> list[int]:
    """Minimal-length base-b digits of ``n``, most significant first.

    Zero maps to the empty list.
    """
    _check_base(b)
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    out.reverse()
    return out


def from_digits(digits, b: int) -> int:
    _check_base(b)
    n = 0
    for d in digits:
        if not 0 <= d < b:
            raise ValueError(f"{d} is not a digit in base {b}")
        n = n * b + d
    return n


def length(n: int, b: int) -> int:
    """Smallest l >= 0 with n < b**l (so length(0) == 0)."""
    _check_base(b)
    if n < 0:
        raise ValueError("n must be nonnegative")
    l, p = 0, 1
    while n >= p:
        p *= b
        l += 1
    return l


def count_windows(digits, alpha: int, beta: int) -> int:
    """Number of (overlapping) positions i with digits[i:i+2] == [alpha, beta]."""
    return sum(1 for x, y in zip(digits, digits[1:]) if x == alpha and y == beta)


def count_occurrences(n: int, p: PatternSpec) -> int:
    if n < 1:
        raise ValueError("count_occurrences needs n >= 1")
    return count_windows(to_digits(n, p.b), p.alpha, p.beta)


def leading_value(m: int, l: int, b: int) -> int:
    """Integer made of the ``l`` leading digits of ``m``."""
    if m < 1:
        raise ValueError("m must be positive")
    total = length(m, b)
    if not 1 <= l <= total:
        raise ValueError(f"l={l} out of range 1..{total}")
    return m // b ** (total - l)


def digit_string(n: int, b: int) -> str:
    if b > len(ALPHABET):
        raise ValueError(f"display needs b <= {len(ALPHABET)}")
    return "".join(ALPHABET[d] for d in to_digits(n, b)) or "0"
