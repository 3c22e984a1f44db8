"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored by its conductor n and its coordinates in the power
basis 1, zeta, ..., zeta^(phi(n)-1), i.e. reduced modulo the n-th
cyclotomic polynomial.  Binary operations lift both operands to the lcm
of their conductors.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class NotRational(ValueError):
    pass


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of Phi_n, by dividing t^n - 1 by Phi_d for proper divisors d."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return q


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        a = c[k]
        if a:
            # zeta^k = zeta^(k-d) * zeta^d and zeta^d = -(phi_0 + ... + phi_{d-1} zeta^{d-1})
            for j in range(d):
                if phi[j]:
                    c[k - d + j] -= a * phi[j]
            c[k] = Fraction(0)
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return tuple(c)


class Cyclotomic:
    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        """``coeffs`` maps exponents (or is a sequence indexed by exponent) to rationals."""
        if n < 1:
            raise ValueError("conductor must be positive")
        full = [Fraction(0)] * n
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        for k, v in items:
            full[k % n] += Fraction(v)
        self.n = n
        self.c = _reduce(full, n)

    @classmethod
    def _make(cls, n: int, reduced: tuple) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.n = n
        obj.c = reduced
        return obj

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls._make(1, (Fraction(q),))

    @classmethod
    def E(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        return cls(n, {k % n: 1})

    def lift(self, m: int) -> "Cyclotomic":
        """The same number written over conductor m (a multiple of self.n)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("target conductor must be a multiple")
        s = m // self.n
        return Cyclotomic(m, {k * s: v for k, v in enumerate(self.c) if v})

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        a, b, m = self._pair(other)
        return Cyclotomic._make(m, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, m = self._pair(other)
        prod = [Fraction(0)] * max(1, len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._make(m, _reduce(prod, m))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            q = other.to_rational()
        else:
            q = Fraction(other)
        return Cyclotomic._make(self.n, tuple(x / q for x in self.c))

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b, _ = self._pair(other)
        return a.c == b.c

    def __hash__(self):
        try:
            return hash(self.to_rational())
        except NotRational:
            return hash(complex(self))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not rational")
        return self.c[0]

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k (gcd(k, n) = 1)."""
        if gcd(k, self.n) != 1:
            raise ValueError("k must be a unit mod n")
        return Cyclotomic(self.n, {i * k: v for i, v in enumerate(self.c) if v})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def galois_trace(self) -> "Cyclotomic":
        out = Cyclotomic.rational(0)
        for k in range(1, self.n + 1):
            if gcd(k, self.n) == 1:
                out = out + self.galois(k)
        return out

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(float(v)) * z**k for k, v in enumerate(self.c))

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        return format_cyclotomic(self)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cyclotomic(v: Cyclotomic) -> str:
    terms = []
    for k, a in enumerate(v.c):
        if not a:
            continue
        if k == 0:
            terms.append((a < 0, _fmt_rational(abs(a))))
            continue
        e = f"E({v.n})" + (f"^{k}" if k > 1 else "")
        mag = abs(a)
        terms.append((a < 0, e if mag == 1 else f"{_fmt_rational(mag)}*{e}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += ("-" if neg else "+") + body
    return out


_RAT = r"\d+(?:/\d+)?"
_TOKEN = re.compile(rf"([+-]?)(?:({_RAT})\*)?E\((\d+)\)(?:\^(\d+))?|([+-]?)({_RAT})")


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse sums of ``[q*]E(n)[^k]`` terms and rationals, e.g. ``-E(8)-E(8)^3`` or ``-1/2``."""
    s = text.replace(" ", "")
    if s in (".", ""):
        if s == ".":
            return Cyclotomic.rational(0)
        raise ValueError("empty value")
    total = Cyclotomic.rational(0)
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse cyclotomic {text!r} at {s[pos:]!r}")
        if pos > 0 and not (m.group(1) or m.group(5)):
            raise ValueError(f"missing operator in {text!r}")
        if m.group(3) is not None:
            sign = -1 if m.group(1) == "-" else 1
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            k = int(m.group(4)) if m.group(4) else 1
            total = total + Cyclotomic(int(m.group(3)), {k: sign * coef})
        else:
            sign = -1 if m.group(5) == "-" else 1
            total = total + sign * Fraction(m.group(6))
        pos = m.end()
    return total
