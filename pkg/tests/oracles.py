"""Slow, obviously-correct reference computations used to check the package.

Nothing here imports from ``dessins``: permutations are plain 0-based tuples.
"""
from __future__ import annotations

import math
from collections import Counter
from itertools import permutations


def mul(p, q):
    """Left-to-right product: apply p, then q."""
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, a in enumerate(p):
        out[a] = i
    return tuple(out)


def cycle_lengths(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out.append(k)
    return tuple(sorted(out, reverse=True))


def element_order(p):
    return math.lcm(*cycle_lengths(p))


def closure(gens):
    """Every element of <gens> by breadth-first multiplication."""
    n = len(gens[0])
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def from_cycles(cycles, n):
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def is_prime_trial(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def sieve(n: int) -> bytearray:
    """Eratosthenes; flags[i] == 1 iff i is prime."""
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return flags


def prime_power_trial(q: int):
    """(r, e) with q = r^e, r prime, by trial division; None otherwise."""
    if q < 2:
        return None
    r = next(f for f in range(2, q + 1) if q % f == 0)
    e = 0
    while q % r == 0:
        q //= r
        e += 1
    return (r, e) if q == 1 else None


def projective_primes_double_loop(x: int) -> dict[int, list[tuple[int, int]]]:
    """p <= x with p = 1 + q + ... + q^(n-1), q a prime power, n >= 2; values are (q, n)."""
    found: dict[int, list] = {}
    for q in range(2, x):
        if prime_power_trial(q) is None:
            continue
        n, v = 2, 1 + q
        while v <= x:
            if is_prime_trial(v):
                found.setdefault(v, []).append((q, n))
            v = v * q + 1
            n += 1
    return dict(sorted(found.items()))


def perms_of_type(n: int, lengths):
    """Every permutation of {0..n-1} with the given multiset of cycle lengths."""
    want = Counter(lengths)

    def rec(img, free, left):
        if not free:
            yield tuple(img)
            return
        a = min(free)
        rest = free - {a}
        for L in list(left):
            if left[L] == 0:
                continue
            left[L] -= 1
            for others in permutations(sorted(rest), L - 1):
                cyc = (a,) + others
                for u, v in zip(cyc, cyc[1:] + cyc[:1]):
                    img[u] = v
                yield from rec(img, rest - set(others), left)
            left[L] += 1

    yield from rec([0] * n, frozenset(range(n)), want)


def naive_dessin_count(n: int, black, white, z) -> int:
    """Isomorphism classes of transitive (x, y) with (xy)^-1 = z, x of type ``black``, y of type ``white``.

    z must have cyclic centralizer generated by z itself (one long cycle plus at most
    one fixed point).  Runs over y, solves for x, and dedupes by conjugation with powers of z.
    """
    powers = [tuple(range(n))]
    for _ in range(element_order(z) - 1):
        powers.append(mul(powers[-1], z))
    black = tuple(sorted(black, reverse=True))
    seen = set()
    count = 0
    for y in perms_of_type(n, white):
        x = inv(mul(y, z))  # xyz = 1  =>  x = (yz)^-1
        if cycle_lengths(x) != black:
            continue
        if not _transitive([x, y], n):
            continue
        key = min((mul(mul(inv(t), x), t), mul(mul(inv(t), y), t)) for t in powers)
        if key not in seen:
            seen.add(key)
            count += 1
    return count


def _transitive(gens, n):
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for g in gens:
            b = g[a]
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == n


def moebius_perm(p: int, a: int, b: int, c: int, d: int):
    """t -> (at + b)/(ct + d) on 0..p-1 plus infinity at index p."""
    out = []
    for t in range(p + 1):
        num, den = ((a, c) if t == p else ((a * t + b) % p, (c * t + d) % p))
        out.append(p if den % p == 0 else num * pow(den, -1, p) % p)
    return tuple(out)


def triple_counts_by_order(elements):
    """Counter over (ord x, ord y, ord z) for all x, y in the group with z = (xy)^-1."""
    orders = {g: element_order(g) for g in elements}
    out: Counter = Counter()
    for x in elements:
        ox = orders[x]
        for y in elements:
            out[(ox, orders[y], orders[inv(mul(x, y))])] += 1
    return out
