"""Permutations, cycle types and permutation groups.

Permutations act on the right and compose left to right: ``compose(p, q)``
is the map ``i -> q(p(i))``.  Points are 1..n in every textual form and
0..n-1 inside ``Permutation.images``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from math import gcd
from operator import itemgetter
from typing import Iterable, Sequence


class DegreeMismatch(ValueError):
    pass


class NotTransitive(ValueError):
    pass


class Permutation:
    """Immutable bijection of {0..n-1}, stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a bijection")
        object.__setattr__(self, "images", images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def __setattr__(self, key, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 1-based cycles."""
        img = list(range(n))
        seen = set()
        for c in cycles:
            for a in c:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                if a in seen:
                    raise ValueError(f"point {a} repeated")
                seen.add(a)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, least point first, sorted by least point."""
        return [tuple(a + 1 for a in c) for c in _cycles0(self.images) if len(c) > 1]

    def moved_points(self) -> list[int]:
        return [i + 1 for i, a in enumerate(self.images) if i != a]

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in _cycles0(self.images)), 1)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in _cycles0(self.images)) % 2 == 0


def _cycles0(images: Sequence[int]) -> list[list[int]]:
    n = len(images)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = 1
            c.append(j)
            j = images[j]
        out.append(c)
    return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The map i -> q(p(i))."""
    if len(p.images) != len(q.images):
        raise DegreeMismatch(f"degrees {len(p.images)} and {len(q.images)}")
    if not p.images:
        return p
    if len(p.images) == 1:
        return q
    return Permutation._raw(itemgetter(*p.images)(q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.images)
    for i, a in enumerate(p.images):
        inv[a] = i
    return Permutation._raw(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(p), -k)
    result = Permutation.identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def conjugate(p: Permutation, t: Permutation) -> Permutation:
    """p^t = t^-1 p t, so that p^t maps t(i) to t(p(i))."""
    return compose(compose(inverse(t), p), t)


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """[x, y] = x^-1 y^-1 x y."""
    return compose(compose(inverse(x), inverse(y)), compose(x, y))


# -- cycle types -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of cycle lengths as sorted (length, multiplicity) pairs, longest first."""

    parts: tuple[tuple[int, int], ...]

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "CycleType":
        c = Counter(lengths)
        if any(k <= 0 for k in c):
            raise ValueError("cycle lengths must be positive")
        return cls(tuple(sorted(c.items(), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        """Parse exponent notation such as ``3^3 1^2`` (separators may be spaces or commas)."""
        tokens = re.findall(r"(\d+)(?:\^(\d+))?", text)
        if not tokens:
            raise ValueError(f"bad cycle type {text!r}")
        lengths = []
        for length, mult in tokens:
            lengths += [int(length)] * (int(mult) if mult else 1)
        return cls.from_lengths(lengths)

    @property
    def degree(self) -> int:
        return sum(l * m for l, m in self.parts)

    @property
    def num_cycles(self) -> int:
        return sum(m for _, m in self.parts)

    def lengths(self) -> list[int]:
        return [l for l, m in self.parts for _ in range(m)]

    def multiplicity(self, length: int) -> int:
        return dict(self.parts).get(length, 0)

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (l for l, _ in self.parts), 1)

    def __str__(self):
        return " ".join(f"{l}^{m}" for l, m in self.parts)


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.from_lengths(len(c) for c in _cycles0(p.images))


# -- text form -------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation like ``(1,4,3)(5,11,9)``; ``()`` or empty is the identity."""
    s = re.sub(r"\s+", "", text)
    if _CYCLE_RE.sub("", s):
        raise ValueError(f"malformed cycle string {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        if not body:
            continue
        try:
            cycles.append([int(tok) for tok in body.split(",")])
        except ValueError:
            raise ValueError(f"malformed cycle {body!r}") from None
    return Permutation.from_cycles(cycles, n)


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


# -- orbits and blocks -----------------------------------------------------

def orbit(gens: Sequence[Permutation], point: int, n: int | None = None) -> set[int]:
    """1-based orbit of ``point`` under the group generated by ``gens``."""
    if n is None:
        n = gens[0].degree
    if not 1 <= point <= n:
        raise ValueError(f"point {point} outside 1..{n}")
    imgs = [g.images for g in gens]
    seen = {point - 1}
    stack = [point - 1]
    while stack:
        a = stack.pop()
        for g in imgs:
            b = g[a]
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return {a + 1 for a in seen}


def is_transitive(gens: Sequence[Permutation], n: int | None = None) -> bool:
    if n is None:
        n = gens[0].degree
    return n <= 1 or len(orbit(gens, 1, n)) == n


def minimal_block(gens: Sequence[Permutation], beta: int) -> list[int]:
    """Block system generated by joining points 1 and beta (1-based); returns a root label per point."""
    n = gens[0].degree
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    imgs = [g.images for g in gens]
    queue = [(0, beta - 1)]
    parent[find(beta - 1)] = find(0)
    while queue:
        a, b = queue.pop()
        for g in imgs:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((g[a], g[b]))
    return [find(a) for a in range(n)]


def is_primitive(gens: Sequence[Permutation]) -> bool:
    n = gens[0].degree
    if not is_transitive(gens, n):
        raise NotTransitive("primitivity is defined for transitive groups")
    if n <= 2:
        return True
    for beta in range(2, n + 1):
        roots = minimal_block(gens, beta)
        if len(set(roots)) > 1:
            return False
    return True


# -- stabilizer chains -----------------------------------------------------

class _Level:
    __slots__ = ("point", "gens", "trans", "next")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[tuple] = []
        # trans[b] = coset representative u with u[point] == b
        self.trans: dict[int, tuple] = {point: tuple(range(n))}
        self.next: _Level | None = None


def _mul(p: tuple, q: tuple) -> tuple:
    return itemgetter(*p)(q)


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, a in enumerate(p):
        inv[a] = i
    return tuple(inv)


class PermGroup:
    """Group generated by permutations, with a deterministic Schreier-Sims chain.

    Base points are the first moved points of the sifted residues, so
    the chain is a function of the generator list alone.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("need generators or a degree")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generators of unequal degree")
        self.degree = degree
        self.generators = gens
        self._chain: _Level | None = None
        self._built = False

    # chain construction
    def _build(self):
        if self._built:
            return
        self._built = True
        if self.degree < 2:
            return
        for g in self.generators:
            self._add(None, g.images)

    def _sift(self, level: _Level | None, g: tuple) -> tuple[_Level | None, tuple]:
        """Sift g down the chain; returns the level where it dropped out and the residue."""
        while level is not None:
            b = g[level.point]
            u = level.trans.get(b)
            if u is None:
                return level, g
            g = _mul(g, _inv(u))
            level = level.next
        return None, g

    def _add(self, parent: _Level | None, g: tuple):
        """Make g a member of the group at the level below ``parent`` (the root when None).

        g fixes every base point above that level.
        """
        level = self._chain if parent is None else parent.next
        _, res = self._sift(level, g)
        if all(i == a for i, a in enumerate(res)):
            return
        n = self.degree
        if level is None:
            moved = next(i for i, a in enumerate(g) if i != a)
            level = _Level(moved, n)
            if parent is None:
                self._chain = level
            else:
                parent.next = level
        level.gens.append(g)
        trans = level.trans
        pending = [(u, g) for u in trans.values()]
        queue = list(trans)
        qi = 0
        while qi < len(queue):
            b = queue[qi]
            qi += 1
            u = trans[b]
            for s in level.gens:
                c = s[b]
                if c not in trans:
                    uc = _mul(u, s)
                    trans[c] = uc
                    queue.append(c)
                    pending.extend((uc, s2) for s2 in level.gens)
        p = level.point
        for u, s in pending:
            us = _mul(u, s)
            h = _mul(us, _inv(trans[us[p]]))
            if any(i != a for i, a in enumerate(h)):
                self._add(level, h)

    # queries
    def order(self) -> int:
        self._build()
        total = 1
        level = self._chain
        while level is not None:
            total *= len(level.trans)
            level = level.next
        return total

    def base(self) -> list[int]:
        self._build()
        out = []
        level = self._chain
        while level is not None:
            out.append(level.point + 1)
            level = level.next
        return out

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch("degree mismatch")
        self._build()
        _, res = self._sift(self._chain, p.images)
        return all(i == a for i, a in enumerate(res))

    __contains__ = contains

    def is_transitive(self) -> bool:
        return not self.generators or is_transitive(self.generators, self.degree)

    def elements(self):
        """Iterate all elements (intended for small groups)."""
        self._build()
        n = self.degree
        levels = []
        level = self._chain
        while level is not None:
            levels.append(list(level.trans.values()))
            level = level.next

        # sifting writes g = v_k ... v_2 u_1 with u_1 from the top level
        def rec(i, acc):
            if i < 0:
                yield Permutation._raw(acc)
                return
            for u in levels[i]:
                yield from rec(i - 1, _mul(acc, u))

        yield from rec(len(levels) - 1, tuple(range(n)))


def group_order(gens: Sequence[Permutation] | PermGroup) -> int:
    g = gens if isinstance(gens, PermGroup) else PermGroup(gens)
    return g.order()


def membership(group: PermGroup, p: Permutation) -> bool:
    return group.contains(p)


def closure(gens: Sequence[Permutation], limit: int = 10**6) -> set[Permutation]:
    """All elements reachable from the generators by right multiplication (brute force)."""
    n = gens[0].degree
    e = Permutation.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise RuntimeError("closure limit exceeded")
        frontier = nxt
    return seen
