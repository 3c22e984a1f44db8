"""Exact checks of two Belyi maps: the degree-11 Shabat polynomial for the
PSL2(11) trees over Q(sqrt(-11)), and the rational Belyi map of D0(13).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class QuadraticElem:
    """a + b*sqrt(d), d square-free."""
    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def of(cls, a, b=0, d: int = -11) -> "QuadraticElem":
        return cls(Fraction(a), Fraction(b), d)

    def _check(self, o: "QuadraticElem"):
        if self.d != o.d:
            raise ValueError("elements of different quadratic fields")

    def __add__(self, o):
        o = self._coerce(o)
        return QuadraticElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElem(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        return QuadraticElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def _coerce(self, o) -> "QuadraticElem":
        if isinstance(o, QuadraticElem):
            self._check(o)
            return o
        return QuadraticElem(Fraction(o), Fraction(0), self.d)

    def conjugate(self) -> "QuadraticElem":
        return QuadraticElem(self.a, -self.b, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d})"


class QuadPoly:
    """Polynomial with QuadraticElem coefficients, ascending degree, trailing zeros trimmed."""

    def __init__(self, coeffs: Sequence[QuadraticElem]):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.c = c

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple], d: int = -11) -> "QuadPoly":
        """From ascending (a, b) pairs meaning a + b*sqrt(d)."""
        return cls([QuadraticElem.of(a, b, d) for a, b in pairs])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __add__(self, o: "QuadPoly") -> "QuadPoly":
        n = max(len(self.c), len(o.c))
        zero = self.c[0] * 0 if self.c else o.c[0] * 0
        a = self.c + [zero] * (n - len(self.c))
        b = o.c + [zero] * (n - len(o.c))
        return QuadPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, o) -> "QuadPoly":
        if not isinstance(o, QuadPoly):
            return QuadPoly([x * o for x in self.c])
        if not self.c or not o.c:
            return QuadPoly([])
        out = [self.c[0] * 0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] = out[i + j] + x * y
        return QuadPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QuadPoly":
        out = QuadPoly([self.c[0] * 0 + 1])
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "QuadPoly":
        return QuadPoly([x.conjugate() for x in self.c])

    def __eq__(self, o):
        return isinstance(o, QuadPoly) and self.c == o.c


def _first_difference(lhs: Sequence, rhs: Sequence, zero) -> Optional[tuple[int, str, str]]:
    n = max(len(lhs), len(rhs))
    for i in range(n):
        a = lhs[i] if i < len(lhs) else zero
        b = rhs[i] if i < len(rhs) else zero
        if a != b:
            return i, str(a), str(b)
    return None


# -- the Shabat polynomial for the PSL2(11) trees --------------------------

# ascending (a, b) pairs for a + b*sqrt(-11)
KLEIN_FACTORS = {
    "p1": [(11, -3), (2, 0)],
    "p2": [(-22, -6), (-11, 3), (2, 0)],
    "p3": [(55, 9), (11, 0), (1, 0)],
    "q1": [(5, 3), (2, 0)],
    "q2": [(56, 96), (-12, 12), (15, -3), (2, 0)],
}
# the printed constant term of q3 admits two readings
Q3_READINGS = {
    "175+279*sqrt(-11)": [(-175, -279), (21, 45), (-18, 0), (2, 0)],
    "454*sqrt(-11)": [(0, -454), (21, 45), (-18, 0), (2, 0)],
}
KLEIN_P_NORMALIZER = 2**12 * 3**14
KLEIN_Q_NORMALIZER = 2**11 * 3**14


@dataclass
class KleinReport:
    ok: bool
    resolved_reading: Optional[str]
    p_minus_1_sign: int
    readings: dict = field(default_factory=dict)  # reading -> first failing coefficient or None
    p_degree: int = 0
    holds_with_flipped_sign: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "resolved_reading": self.resolved_reading,
            "p_minus_1_sign": self.p_minus_1_sign,
            "failing_coefficient": {
                r: (None if f is None else {"degree": f[0], "lhs": f[1], "rhs": f[2]})
                for r, f in self.readings.items()
            },
            "p_degree": self.p_degree,
            "holds_with_flipped_sign": self.holds_with_flipped_sign,
        }


def _klein_check(factors: dict, q3: Sequence[tuple], sign_of_sqrt: int, p_minus_1_sign: int):
    def poly(pairs):
        return QuadPoly.from_pairs([(a, sign_of_sqrt * b) for a, b in pairs])

    p1, p2, p3 = poly(factors["p1"]), poly(factors["p2"]), poly(factors["p3"])
    q1, q2, q3p = poly(factors["q1"]), poly(factors["q2"]), poly(q3)
    P = p1**3 * p2**3 * p3
    # P/N_p - 1 = s * Q/N_q  <=>  P - N_p = s * (N_p/N_q) * Q
    lhs = P + QuadPoly([QuadraticElem.of(-KLEIN_P_NORMALIZER)])
    rhs = q1**2 * q2**2 * q3p * (p_minus_1_sign * Fraction(KLEIN_P_NORMALIZER, KLEIN_Q_NORMALIZER))
    return P.degree, _first_difference(lhs.c, rhs.c, QuadraticElem.of(0))


def verify_klein_shabat(sign_of_sqrt: int = 1, p_minus_1_sign: int = -1,
                        overrides: Optional[dict] = None) -> KleinReport:
    """Check p1^3 p2^3 p3 / (2^12 3^14) - 1 = sign * q1^2 q2^2 q3 / (2^11 3^14) exactly.

    ``p_minus_1_sign = -1`` is the sign as printed.  Both readings of q3 are
    tried; ``resolved_reading`` names the one that holds, if any.  When none
    holds, the opposite sign is tried as a diagnostic only and reported in
    ``holds_with_flipped_sign``; ``ok`` stays False.  ``overrides`` replaces
    named factors (or ``q3:<reading>``) for fault injection.
    """
    if sign_of_sqrt not in (1, -1) or p_minus_1_sign not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    factors = dict(KLEIN_FACTORS)
    readings = dict(Q3_READINGS)
    for k, v in (overrides or {}).items():
        if k.startswith("q3:"):
            readings[k[3:]] = v
        else:
            factors[k] = v
    report = KleinReport(False, None, p_minus_1_sign)
    for name, q3 in readings.items():
        deg, diff = _klein_check(factors, q3, sign_of_sqrt, p_minus_1_sign)
        report.p_degree = deg
        report.readings[name] = diff
        if diff is None and report.resolved_reading is None:
            report.resolved_reading = name
    report.ok = report.resolved_reading is not None
    if not report.ok:
        for name, q3 in readings.items():
            if _klein_check(factors, q3, sign_of_sqrt, -p_minus_1_sign)[1] is None:
                report.holds_with_flipped_sign = name
                break
    return report


# -- the Belyi map of D0(13) ---------------------------------------------------

D013_A_FACTORS = ([1, -19, 20, -7, 1], 3, [13, -5, 1], 1)
D013_B_FACTORS = ([-1, -38, 122, -108, 46, -10, 1], 2, [13, -6, 1], 1)


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _expand(f: Sequence[int], e: int, g: Sequence[int], h: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _int_mul(out, f)
    for _ in range(h):
        out = _int_mul(out, g)
    return out


@dataclass
class D013Report:
    ok: bool
    failing_coefficient: Optional[tuple[int, str, str]]
    degrees: tuple[int, int]
    monic: bool

    def as_dict(self) -> dict:
        f = self.failing_coefficient
        return {
            "ok": self.ok,
            "failing_coefficient": None if f is None else {"degree": f[0], "lhs": f[1], "rhs": f[2]},
            "degrees": list(self.degrees),
            "monic": self.monic,
        }


def verify_d013_belyi(a_factors=D013_A_FACTORS, b_factors=D013_B_FACTORS) -> D013Report:
    """Check A + 1728 t = B for the numerators A of f and B of f - 1, where
    f = -A/(1728 t) and f - 1 = -B/(1728 t).
    """
    A = _expand(*a_factors)
    B = _expand(*b_factors)
    lhs = list(A)
    lhs[1] += 1728
    diff = _first_difference(lhs, B, 0)
    return D013Report(diff is None, diff, (len(A) - 1, len(B) - 1), A[-1] == 1 and B[-1] == 1)
