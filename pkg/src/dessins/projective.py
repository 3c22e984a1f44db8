"""Projective primes p = (q^n - 1)/(q - 1) and related counts."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .primes import _iroot, is_prime, prime_power, primes_upto, segmented_primes


class BudgetExceeded(RuntimeError):
    pass


class NotProjectivePrime(ValueError):
    pass


def f_irreducible(n: int, e: int) -> bool:
    """Whether 1 + t^e + ... + t^((n-1)e) is irreducible over Z.

    Its irreducible factors are the cyclotomic polynomials Phi_d with d | ne
    and d not dividing e, so it is irreducible iff there is exactly one such d.
    """
    if n < 2 or e < 1:
        raise ValueError("need n >= 2 and e >= 1")
    ne = n * e
    count = sum(1 for d in range(1, ne + 1) if ne % d == 0 and e % d != 0)
    return count == 1


def geometric_sum(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


@dataclass(frozen=True)
class ProjectiveDecomposition:
    p: int
    pairs: tuple[tuple[tuple[int, int], int], ...]  # ((r, e), n) with q = r^e

    def __post_init__(self):
        for (r, e), n in self.pairs:
            assert geometric_sum(r**e, n) == self.p

    @property
    def is_projective(self) -> bool:
        return bool(self.pairs)


def _check_necessary(r: int, e: int, n: int) -> None:
    assert is_prime(n), f"n = {n} not prime"
    k = e
    while k % n == 0:
        k //= n
    assert k == 1, f"e = {e} not a power of n = {n}"
    assert (r**e) % n != 1, f"q = {r**e} is 1 mod n = {n}"


def projective_decompositions(p: int) -> ProjectiveDecomposition:
    """All (q, n) with q a prime power, n >= 2 and 1 + q + ... + q^(n-1) = p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pairs = []
    for n in range(2, p.bit_length() + 1):
        # q^(n-1) < p <= 2 q^(n-1) brackets q
        q0 = _iroot(p - 1, n - 1)
        for q in (q0 - 1, q0, q0 + 1):
            if q >= 2 and geometric_sum(q, n) == p:
                pp = prime_power(q)
                if pp is not None:
                    _check_necessary(pp[0], pp[1], n)
                    pairs.append((pp, n))
    pairs.sort(key=lambda t: (t[1], t[0]))
    return ProjectiveDecomposition(p, tuple(pairs))


def projective_primes(x: int, budget: int = 10**10) -> dict[int, list[tuple[tuple[int, int], int]]]:
    """Map each projective prime p <= x to its decompositions ((r, e), n)."""
    if x > budget:
        raise BudgetExceeded(f"x = {x} exceeds budget {budget}")
    found: dict[int, list] = {}
    # n = 2: 1 + q is odd only for q = 2^e
    e = 1
    while 2**e + 1 <= x:
        if is_prime(2**e + 1):
            found.setdefault(2**e + 1, []).append(((2, e), 2))
        e += 1
    qmax = isqrt(x)
    for r in primes_upto(qmax).tolist():
        q, e = r, 1
        while 1 + q + q * q <= x:
            n = 3
            while True:
                v = geometric_sum(q, n)
                if v > x:
                    break
                if is_prime(v):
                    found.setdefault(v, []).append(((r, e), n))
                n += 1
            q *= r
            e += 1
    for p, pairs in found.items():
        for (r, e), n in pairs:
            _check_necessary(r, e, n)
        pairs.sort(key=lambda t: (t[1], t[0]))
    return dict(sorted(found.items()))


def count_projective_primes(x: int, budget: int = 10**10) -> tuple[int, Counter]:
    """Number of projective primes <= x and a histogram keyed by (n, e)."""
    found = projective_primes(x, budget)
    hist: Counter = Counter()
    for pairs in found.values():
        for (r, e), n in pairs:
            hist[(n, e)] += 1
    return len(found), hist


def goormaghtigh_scan(x: int, budget: int = 10**10) -> list[int]:
    """Projective primes <= x with at least two decompositions."""
    return [p for p, pairs in projective_primes(x, budget).items() if len(pairs) >= 2]


# -- Q(x) ----------------------------------------------------------------

_FILTER_PRIMES = primes_upto(2000)


def _count_Q_range(args) -> int:
    n, e, lo, hi, segment = args
    smax = int(_FILTER_PRIMES[-1])
    count = 0
    for ts in segmented_primes(lo, hi, segment):
        small = ts[ts <= smax]
        for t in small.tolist():
            count += is_prime(geometric_sum(t**e, n))
        ts = ts[ts > smax]
        if not ts.size:
            continue
        keep = np.ones(ts.size, dtype=bool)
        for s in _FILTER_PRIMES.tolist():
            q = np.ones(ts.size, dtype=np.int64)
            tm = ts % s
            for _ in range(e):
                q = q * tm % s
            v = np.zeros(ts.size, dtype=np.int64)
            for _ in range(n):
                v = (v * q + 1) % s
            keep &= v != 0
        for t in ts[keep].tolist():
            count += is_prime(geometric_sum(t**e, n))
    return count


def count_Q(n: int, e: int, x: int, budget: int = 10**8, workers: int = 1,
            segment: int = 1 << 20) -> int:
    """Number of primes t <= x for which 1 + q + ... + q^(n-1) is prime, q = t^e."""
    if x > budget:
        raise BudgetExceeded(f"x = {x} exceeds budget {budget}")
    if x < 2:
        return 0
    if workers <= 1:
        return _count_Q_range((n, e, 2, x, segment))
    step = max(x // (4 * workers), segment)
    chunks = [(n, e, a, min(a + step - 1, x), segment) for a in range(2, x + 1, step)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(_count_Q_range, chunks))
