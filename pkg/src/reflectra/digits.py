"""Digit arithmetic for the reflect-and-add iteration.

The reflection of an integer reverses the decimal digits of its magnitude
(leading zeros of the result are dropped) and flips its sign; one step of the
iteration adds a value to its reflection:

>>> reflect(328), reflect(-7250)
(-823, 527)
>>> step(571)
396

Inputs are limited to magnitudes below 10**18 so every iterate fits a signed
64-bit integer; the compiled kernels in :mod:`reflectra.kernel` rely on it.
"""
from __future__ import annotations

MAX_DIGITS = 18
LIMIT = 10**MAX_DIGITS


class MagnitudeOverflow(ValueError):
    """Input has 19 or more decimal digits."""


def _check(x: int) -> int:
    m = -x if x < 0 else x
    if m >= LIMIT:
        raise MagnitudeOverflow(f"|{x}| >= 10**{MAX_DIGITS}")
    return m


def reverse_digits(n: int) -> int:
    """Reverse the decimal digits of ``n >= 0``; ``reverse_digits(7250) == 527``."""
    r = 0
    while n:
        n, d = divmod(n, 10)
        r = r * 10 + d
    return r


def digit_count(x: int) -> int:
    m = -x if x < 0 else x
    d = 1
    while m >= 10:
        m //= 10
        d += 1
    return d


def reflect(x: int) -> int:
    m = _check(x)
    r = reverse_digits(m)
    return -r if x > 0 else r


def step(x: int) -> int:
    """One iteration: ``x + reflect(x)``, which equals ``sign(x) * (|x| - rev(|x|))``."""
    m = _check(x)
    if x > 0:
        return m - reverse_digits(m)
    return reverse_digits(m) - m


def first_step_divisor(x: int) -> int:
    """Divisor guaranteed for ``step(x)``: 99 for an odd digit count, 9 for even."""
    if x == 0:
        raise ValueError("first_step_divisor is undefined for 0")
    _check(x)
    return 99 if digit_count(x) % 2 else 9


def is_palindrome(x: int) -> bool:
    m = -x if x < 0 else x
    return reverse_digits(m) == m
