"""Exact integer helpers shared by the number-theory modules."""

from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (intended for small n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_below(limit: int) -> list[int]:
    """All primes p < limit, by the sieve of Eratosthenes."""
    if limit <= 2:
        return []
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(limit) if sieve[i]]


def exact_sqrt(y: int) -> int | None:
    """Return s with s*s == y, or None if y is not a perfect square."""
    if y < 0:
        return None
    s = isqrt(y)
    return s if s * s == y else None


def iroot(y: int, n: int) -> tuple[int, bool]:
    """Integer n-th root: (floor(y ** (1/n)), whether the root is exact).

    Newton iteration on arbitrary-precision ints; the result is verified by
    multiplication so no rounding can misclassify a perfect power.
    """
    if n < 1:
        raise ValueError(f"root degree must be positive, got {n}")
    if y < 0:
        raise ValueError("negative argument")
    if y < 2 or n == 1:
        return y, True
    if n == 2:
        r = isqrt(y)
        return r, r * r == y
    # initial guess is an upper bound: 2^ceil(bits/n) > y^(1/n)
    x = 1 << -(-y.bit_length() // n)
    while True:
        nxt = ((n - 1) * x + y // x ** (n - 1)) // n
        if nxt >= x:
            break
        x = nxt
    while x**n > y:
        x -= 1
    while (x + 1) ** n <= y:
        x += 1
    return x, x**n == y
