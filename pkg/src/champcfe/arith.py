"""Big-integer helpers shared by the digit and convergent machinery.

Everything here works on plain Python ints. When gmpy2 is importable the
radix conversions and large divisions are routed through GMP, which keeps
the multi-million-digit runs (HWM #9 and #10) practical; without it the
same code runs correct but slow above ~10^5 digits.
"""

from __future__ import annotations

try:
    import gmpy2

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised via the forced-fallback test
    gmpy2 = None
    HAVE_GMPY2 = False


def mz(x):
    """Wrap an int for fast arithmetic (mpz when available, else identity)."""
    return gmpy2.mpz(x) if HAVE_GMPY2 else x


def to_int(x) -> int:
    return int(x)


def pow10(k: int):
    return mz(10) ** k if HAVE_GMPY2 else 10**k


def digit_count(n) -> int:
    """Exact number of decimal digits of n >= 0."""
    if n < 0:
        raise ValueError("digit_count expects a non-negative integer")
    if HAVE_GMPY2:
        n = gmpy2.mpz(n)
        d = n.num_digits(10)
        # num_digits may overestimate by one
        if d > 1 and n < gmpy2.mpz(10) ** (d - 1):
            d -= 1
        return d
    return len(str(int(n)))


def to_digits(n) -> str:
    """Decimal digit string of n >= 0 (no sign, no separators)."""
    if n < 0:
        raise ValueError("to_digits expects a non-negative integer")
    if HAVE_GMPY2:
        return gmpy2.mpz(n).digits(10)
    return str(int(n))


def from_digits(s: str) -> int:
    """Parse a decimal digit string to int (much faster than int() via GMP)."""
    if HAVE_GMPY2:
        return int(gmpy2.mpz(s, 10))
    return int(s, 10)


def scaled_quotient(num, den, shift: int) -> int:
    """floor(num * 10**shift / den), exact."""
    return int((mz(num) * pow10(shift)) // mz(den))


def gcd(a, b) -> int:
    if HAVE_GMPY2:
        return int(gmpy2.gcd(gmpy2.mpz(a), gmpy2.mpz(b)))
    import math

    return math.gcd(int(a), int(b))


def first_difference(a: str, b: str) -> int | None:
    """Index of the first differing character, or None if one string is a
    prefix of the other. Binary search over slice equality, so the scan cost
    is a handful of memcmps even on multi-megabyte strings."""
    n = min(len(a), len(b))
    if a[:n] == b[:n]:
        return None
    lo, hi = 0, n  # invariant: a[:lo] == b[:lo], a[:hi] != b[:hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid
    return lo
