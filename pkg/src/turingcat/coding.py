"""Exact arithmetic helpers shared by every encoding.

Two families live here:

* prime-power codes (``2^a * 3^b``, ``prod p_i^(x_i + 1)``), the textbook schemes;
* compact codes (shifted Cantor pairing, bit-packed lists), used wherever a
  machine actually has to hold the number, because prime-power codes of
  formulas and programs are far too large to materialize.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Sequence

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def nth_prime(i: int) -> int:
    """The i-th prime, 0-indexed (``nth_prime(0) == 2``)."""
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 2
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[i]


def multiplicity(n: int, p: int) -> int:
    """Exponent of the prime p in n > 0."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_exponents(n: int) -> list[int] | None:
    """Exponents of 2, 3, 5, ... in n, up to the last nonzero one.

    Returns None when n is not of the form prod p_i^(k_i) with a contiguous
    run of primes (a gap is allowed: exponent 0 is reported), i.e. only fails
    for n <= 0.
    """
    if n <= 0:
        return None
    out = []
    i = 0
    while n > 1:
        p = nth_prime(i)
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append(k)
        i += 1
        if p * p > n and n > 1:
            # n is now a prime larger than p; walk the primes up to it
            while nth_prime(i) != n:
                out.append(0)
                i += 1
            out.append(1)
            n = 1
    return out


# --- Cantor pairing, shifted so that 0 is never a pair code ---------------

def cantor(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def uncantor(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def pair(a: int, b: int) -> int:
    """Machine-level pairing: ``cantor(a, b) + 1``. Never 0."""
    return cantor(a, b) + 1


def unpair(z: int) -> tuple[int, int]:
    if z <= 0:
        raise ValueError("0 is not a pair code")
    return uncantor(z - 1)


def tuple_code(xs: Sequence[int]) -> int:
    """Right-nested pairing of a fixed-arity tuple (arity >= 1)."""
    if len(xs) == 1:
        return xs[0]
    return pair(xs[0], tuple_code(xs[1:]))


def untuple(z: int, arity: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity - 1):
        a, z = unpair(z)
        out.append(a)
    out.append(z)
    return tuple(out)


# --- bit-packed lists -----------------------------------------------------
# Each element x is written as the Elias gamma code of x + 1; the whole
# bit string gets a leading 1 so that leading zeros survive. [] -> 1.

def pack(xs: Iterable[int]) -> int:
    bits = ["1"]
    for x in xs:
        if x < 0:
            raise ValueError("negative entry")
        b = bin(x + 1)[2:]
        bits.append("0" * (len(b) - 1))
        bits.append(b)
    return int("".join(bits), 2)


def unpack(n: int) -> list[int] | None:
    """Inverse of :func:`pack`; None when n is not a packed list."""
    if n <= 0:
        return None
    s = bin(n)[3:]
    out = []
    i = 0
    while i < len(s):
        j = s.find("1", i)
        if j < 0:
            return None
        end = j + (j - i) + 1
        if end > len(s):
            return None
        out.append(int(s[j:end], 2) - 1)
        i = end
    return out


def bytes_to_nat(data: bytes) -> int:
    return int.from_bytes(b"\x01" + data, "big")


def nat_to_bytes(n: int) -> bytes | None:
    if n <= 0:
        return None
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if raw[0] != 1:
        return None
    return raw[1:]


# --- integers <-> naturals ------------------------------------------------

def zigzag(n: int) -> int:
    """The standard bijection N -> Z: 0, 1, -1, 2, -2, ..."""
    return (n + 1) // 2 if n % 2 else -(n // 2) if n else 0


def unzigzag(z: int) -> int:
    return 2 * z - 1 if z > 0 else -2 * z
