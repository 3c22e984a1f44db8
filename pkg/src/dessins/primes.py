"""Primality testing and prime sieves."""
from __future__ import annotations

from math import isqrt
from typing import Iterator

import numpy as np

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# Witness sets: the 7-base set is exact below 2^64, the first 13 primes below 3.3e24.
_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_BASES_81 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_LIMIT_81 = 3317044064679887385961981


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    r = isqrt(n)
    if r * r == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # binary Lucas chain for U_d, V_d
    U, V, Qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(m: int) -> bool:
    """Deterministic below 3.3e24; above that Miller-Rabin on 13 bases plus a strong Lucas test."""
    if m < 2:
        return False
    for p in _SMALL_PRIMES:
        if m % p == 0:
            return m == p
    if m < 10000:
        return True
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if m < 1 << 64:
        return all(_strong_probable_prime(m, a, d, s) for a in _BASES_64)
    if not all(_strong_probable_prime(m, a, d, s) for a in _BASES_81):
        return False
    return m < _LIMIT_81 or _strong_lucas(m)


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def segmented_primes(lo: int, hi: int, segment: int = 1 << 22) -> Iterator[np.ndarray]:
    """Yield arrays of the primes in [lo, hi], one array per segment, in increasing order."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = primes_upto(isqrt(hi))[1:]  # odd base primes
    if lo <= 2:
        yield np.array([2], dtype=np.int64)
        lo = 3
    if lo % 2 == 0:
        lo += 1
    # odd numbers only: index k represents a + 2k
    step = 2 * max(segment // 2, 1)
    for a in range(lo, hi + 1, step):
        b = min(a + step - 1, hi)
        size = (b - a) // 2 + 1
        mark = np.ones(size, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > b:
                break
            start = max(p * p, ((a + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start > b:
                continue
            mark[(start - a) // 2 :: p] = False
        if a == 1:
            mark[0] = False
        out = np.flatnonzero(mark).astype(np.int64) * 2 + a
        if out.size:
            yield out


def prime_power(q: int) -> tuple[int, int] | None:
    """(r, e) with q = r^e for a prime r, or None."""
    if q < 2:
        return None
    for r in _SMALL_PRIMES:
        if q % r == 0:
            e = 0
            while q % r == 0:
                q //= r
                e += 1
            return (r, e) if q == 1 else None
    # no small factor: q = r^e with r > 97
    for e in range(1, q.bit_length() + 1):
        r = _iroot(q, e)
        if r < 2:
            break
        if r ** e == q and is_prime(r):
            return (r, e)
    return None


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n."""
    if k == 1:
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo
