"""Bateman-Horn constants and estimates for families of integer polynomials.

For f_1, ..., f_k the conjectured count of t <= x with every f_i(t) prime is

    E(x) = C / (deg f_1 ... deg f_k) * integral_2^x dt / (ln t)^k,
    C    = prod_r (1 - 1/r)^-k (1 - omega(r)/r),

where omega(r) counts the roots of f_1 ... f_k in F_r.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy import integrate

from .primes import is_prime, segmented_primes
from .projective import f_irreducible


class ConditionsViolated(ValueError):
    pass


class QuadratureFailure(RuntimeError):
    pass


Poly = tuple[int, ...]  # ascending coefficients


# -- integer polynomials ---------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(t(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Parse ``c*t^k`` terms joined by + or -, e.g. ``1+t+t^2`` or ``2*t^3 - 1``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        k = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    deg = max((k for k, c in coeffs.items() if c), default=0)
    return tuple(coeffs.get(k, 0) for k in range(deg + 1))


def format_poly(f: Poly) -> str:
    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f"{s}{b}" for s, b in parts[1:])


def poly_eval(f: Poly, t):
    v = 0
    for c in reversed(f):
        v = v * t + c
    return v


def poly_mul(f: Poly, g: Poly) -> Poly:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def resultant(f: Poly, g: Poly) -> int:
    """Resultant via the Sylvester determinant."""
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    fd, gd = list(reversed(f)), list(reversed(g))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in fd] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in gd] + [Fraction(0)] * (size - n - 1 - i))
    d = _det(rows)
    assert d.denominator == 1
    return int(d)


def discriminant(f: Poly) -> int:
    n = len(f) - 1
    if n == 2:
        c, b, a = f
        return b * b - 4 * a * c
    df = tuple(k * f[k] for k in range(1, n + 1))
    r = Fraction(resultant(f, df), f[-1])
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert r.denominator == 1
    return sign * int(r)


def content(f: Poly) -> int:
    return math.gcd(*f)


def _prime_factors(m: int) -> set[int]:
    m = abs(m)
    out = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.add(m)
    return out


def _lemma_form(f: Poly) -> tuple[int, int] | None:
    """(n, e) when f = 1 + t^e + ... + t^((n-1)e), else None."""
    if len(f) < 3 or f[0] != 1:
        return None
    nz = [k for k, c in enumerate(f) if c]
    if any(f[k] != 1 for k in nz):
        return None
    e = nz[1]
    if nz != list(range(0, len(f), e)):
        return None
    return len(nz), e


def is_irreducible(f: Poly) -> bool | None:
    """Irreducibility over Z for degree <= 3 or the cyclotomic-sum form; None when undecided."""
    if content(f) != 1:
        return False
    d = len(f) - 1
    if d == 1:
        return True
    form = _lemma_form(f)
    if form is not None:
        return f_irreducible(*form)
    if d == 2:
        disc = discriminant(f)
        return not (disc >= 0 and math.isqrt(disc) ** 2 == disc)
    if d == 3:
        a0, a3 = f[0], f[3]
        if a0 == 0:
            return False
        for p in _divisors(abs(a0)):
            for q in _divisors(abs(a3)):
                for s in (1, -1):
                    if poly_eval(f, Fraction(s * p, q)) == 0:
                        return False
        return True
    return None


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


# -- families and root counts ----------------------------------------------

@dataclass(frozen=True)
class PolyFamily:
    polys: tuple[Poly, ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("empty family")
        for f in self.polys:
            if len(f) < 2 or f[-1] == 0:
                raise ValueError(f"nonconstant polynomial required, got {f}")

    @classmethod
    def parse(cls, texts: Sequence[str]) -> "PolyFamily":
        return cls(tuple(parse_poly(t) for t in texts))

    @property
    def k(self) -> int:
        return len(self.polys)

    def degree_product(self) -> int:
        return math.prod(len(f) - 1 for f in self.polys)

    def product(self) -> Poly:
        out: Poly = (1,)
        for f in self.polys:
            out = poly_mul(out, f)
        return out

    def __str__(self):
        return "{" + ", ".join(format_poly(f) for f in self.polys) + "}"


def omega_f(family: PolyFamily, r: int) -> int:
    """Number of t in F_r at which some f_i vanishes (direct evaluation)."""
    F = [c % r for c in family.product()]
    count = 0
    for t in range(r):
        v = 0
        for c in reversed(F):
            v = (v * t + c) % r
        count += v == 0
    return count


def check_conditions(family: PolyFamily, assume_irreducible: bool = False) -> None:
    """Raise ConditionsViolated unless the family meets the Bateman-Horn hypotheses."""
    for f in family.polys:
        if f[-1] <= 0:
            raise ConditionsViolated(f"leading coefficient of {format_poly(f)} is not positive")
        irr = is_irreducible(f)
        if irr is False:
            raise ConditionsViolated(f"{format_poly(f)} is reducible")
        if irr is None and not assume_irreducible:
            raise ConditionsViolated(f"cannot decide irreducibility of {format_poly(f)}; assume it explicitly")
    if len(set(family.polys)) != len(family.polys):
        raise ConditionsViolated("repeated polynomial")
    F = family.product()
    if content(F) != 1:
        raise ConditionsViolated("product has a nontrivial content")
    # a prime r > deg F cannot annihilate every t unless it divides the content
    for r in range(2, len(F)):
        if is_prime(r) and omega_f(family, r) == r:
            raise ConditionsViolated(f"product vanishes identically mod {r}")


def _kronecker_table(D: int) -> tuple[int, np.ndarray]:
    """Period M and table T with (D/r) = T[r mod M] for odd primes r not dividing D."""
    M = 4 * abs(D)
    T = np.zeros(M, dtype=np.int8)
    for m in range(1, M, 2):
        if math.gcd(m, D) == 1:
            T[m] = _jacobi_signed(D, m)
    return M, T


def _jacobi_signed(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0 and any integer a."""
    from .primes import _jacobi

    return _jacobi(a, n)


def _exceptional_primes(family: PolyFamily) -> set[int]:
    bad = {2}
    F = family.product()
    bad.update(r for r in range(2, len(F) + 1) if is_prime(r))
    for f in family.polys:
        bad |= _prime_factors(f[-1])
        if len(f) - 1 >= 2:
            bad |= _prime_factors(discriminant(f))
    for f, g in combinations(family.polys, 2):
        res = resultant(f, g)
        if res == 0:
            raise ConditionsViolated("two polynomials share a factor")
        bad |= _prime_factors(res)
    return bad


def _roots_mod(f: Poly, r: int) -> int:
    """Number of distinct roots of f in F_r via gcd with t^r - t (for degree >= 3)."""
    fm = _trim([c % r for c in f])
    if len(fm) <= 1:
        return r if not any(fm) else 0
    inv = pow(fm[-1], r - 2, r)
    fm = [c * inv % r for c in fm]

    def mulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % r
        return _reduce(prod, fm, r)

    result, base, e = [1], [0, 1], r
    base = _reduce(base, fm, r)
    while e:
        if e & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        e >>= 1
    # t^r - t mod f
    g = list(result) + [0] * max(0, 2 - len(result))
    g[1] = (g[1] - 1) % r
    g = _trim(g)
    a, b = fm, g
    while any(b):
        a, b = b, _reduce(a, b, r)
        b = _trim(b)
    return len(_trim(a)) - 1


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _reduce(a, m, r):
    a = _trim(list(a))
    m = _trim(m)
    if len(m) == 1:
        return [0]
    inv = pow(m[-1], r - 2, r)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        c = a[-1] * inv % r
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % r
        a = _trim(a)
        if len(a) - 1 < dm:
            break
    return a


def _omega_segment(family: PolyFamily, primes: np.ndarray, tables) -> np.ndarray:
    """omega(r) for primes outside the exceptional set."""
    w = np.zeros(primes.shape, dtype=np.int64)
    for f, tab in zip(family.polys, tables):
        d = len(f) - 1
        if d == 1:
            w += 1
        elif d == 2:
            M, T = tab
            w += 1 + T[primes % M].astype(np.int64)
        else:
            w += np.array([_roots_mod(f, int(r)) for r in primes], dtype=np.int64)
    return w


def bh_constant(family: PolyFamily, prime_bound: int, assume_irreducible: bool = False,
                segment: int = 1 << 22) -> float:
    """Partial Euler product for C over primes r <= prime_bound."""
    check_conditions(family, assume_irreducible)
    k = family.k
    bad = _exceptional_primes(family)
    tables = []
    for f in family.polys:
        tables.append(_kronecker_table(discriminant(f)) if len(f) - 1 == 2 else None)
    partial: list[float] = []
    for r in sorted(bad):
        if r > prime_bound:
            continue
        w = omega_f(family, r) if r < 10**6 else sum(_roots_mod(f, r) for f in family.polys)
        partial.append(-k * math.log1p(-1.0 / r) + math.log1p(-w / r))
    bad_arr = np.array(sorted(bad), dtype=np.int64)
    for ps in segmented_primes(2, prime_bound, segment):
        ps = ps[~np.isin(ps, bad_arr)]
        if not ps.size:
            continue
        w = _omega_segment(family, ps, tables)
        rf = ps.astype(np.float64)
        terms = -k * np.log1p(-1.0 / rf) + np.log1p(-w / rf)
        partial.append(math.fsum(terms.tolist()))
    return math.exp(math.fsum(partial))


# -- estimates -------------------------------------------------------------

@dataclass
class BHJob:
    family: PolyFamily
    x_bound: float
    prime_product_bound: int = 10**7
    li_variant: bool = False
    constant: float | None = None
    rel_tol: float = 1e-9
    assume_irreducible: bool = False

    def __post_init__(self):
        if self.x_bound < 2 or self.prime_product_bound < 2:
            raise ValueError("bounds must be at least 2")


def _panels(a: float, b: float, ratio: float = 4.0) -> list[float]:
    pts = [a]
    while pts[-1] * ratio < b:
        pts.append(pts[-1] * ratio)
    pts.append(b)
    return pts


def bh_integral(family: PolyFamily, x: float, li_variant: bool = False, rel_tol: float = 1e-9) -> float:
    """The Bateman-Horn integral, over log-spaced panels with adaptive Gauss-Kronrod."""
    k = family.k
    if li_variant:
        lo = 2
        while any(poly_eval(f, lo) < 2 for f in family.polys):
            lo += 1
        polys = family.polys

        def g(t):
            return 1.0 / math.prod(math.log(poly_eval(f, t)) for f in polys)
    else:
        lo = 2

        def g(t):
            return math.log(t) ** -k
    if x <= lo:
        return 0.0
    pieces = []
    for a, b in zip(_panels(lo, x)[:-1], _panels(lo, x)[1:]):
        val, err = integrate.quad(g, a, b, epsabs=0.0, epsrel=rel_tol * 1e-2, limit=200)
        if not math.isfinite(val) or err > rel_tol * abs(val):
            raise QuadratureFailure(f"quadrature on [{a}, {b}] did not converge (err {err})")
        pieces.append(val)
    return math.fsum(pieces)


def bh_estimate(job: BHJob) -> float:
    C = job.constant
    if C is None:
        C = bh_constant(job.family, job.prime_product_bound, job.assume_irreducible)
    I = bh_integral(job.family, job.x_bound, job.li_variant, job.rel_tol)
    if job.li_variant:
        return C * I
    return C / job.family.degree_product() * I
