"""Explicit dessins: modular dessins D0(p), coset actions of PSL2(11),
plane-tree families of degree p and p + 1, and affine lifts in AGL_n(2).

Matrices act on row vectors from the right, so a product MN means
"first M, then N", the same left-to-right convention as permutations.
A 2x2 matrix [[a, c], [b, d]] is the Moebius map t -> (at + b)/(ct + d).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .dessin import Dessin, Passport, make_dessin
from .perm import CycleType, Permutation, PermGroup
from .primes import is_prime


class ClosureOrderWrong(AssertionError):
    pass


class CongruenceMismatch(ValueError):
    pass


class KernelViolation(ValueError):
    pass


class ComplementDegenerate(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


# -- relabelling -----------------------------------------------------------

def _standardize(x: Sequence[int], y: Sequence[int], start: int, label: str | None = None) -> Dessin:
    """Relabel 0-based (x, y) so the z-cycle through ``start`` reads 1, 2, 3, ...

    Points off that cycle get the following labels in increasing order of
    their old names.
    """
    n = len(x)
    # z = (xy)^-1, so z^-1(i) = y(x(i)) and z(y(x(i))) = i
    z = [0] * n
    for i in range(n):
        z[y[x[i]]] = i
    lab = [-1] * n
    k, p = 0, start
    while lab[p] < 0:
        lab[p] = k
        k += 1
        p = z[p]
    for i in range(n):
        if lab[i] < 0:
            lab[i] = k
            k += 1
    nx = [0] * n
    ny = [0] * n
    for i in range(n):
        nx[lab[i]] = lab[x[i]]
        ny[lab[i]] = lab[y[i]]
    return make_dessin(Permutation(nx), Permutation(ny), label)


# -- modular dessins D0(p) -------------------------------------------------

def _moebius_perm(p: int, a: int, b: int, c: int, d: int) -> list[int]:
    """t -> (at + b)/(ct + d) on P^1(F_p); point t is index t, infinity is index p."""
    out = []
    for t in range(p + 1):
        if t == p:
            num, den = a % p, c % p
        else:
            num, den = (a * t + b) % p, (c * t + d) % p
        out.append(p if den == 0 else num * pow(den, -1, p) % p)
    return out


def modular_dessin(p: int) -> Dessin:
    """D0(p): PSL2(p) acting on P^1(F_p), labels 0..p-1 -> 1..p and infinity -> p+1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = _moebius_perm(p, 0, -1, 1, -1)  # t -> -1/(t - 1)
    y = _moebius_perm(p, 0, -1, 1, 0)   # t -> -1/t
    d = make_dessin(Permutation(x), Permutation(y), f"D0({p})")
    assert d.z == Permutation(_moebius_perm(p, 1, 1, 0, 1))  # t -> t + 1
    return d


def d0_passport(p: int) -> Passport:
    """The passport of D0(p) from p mod 12 (p >= 5), or directly for p = 2, 3."""
    if p in (2, 3):
        return modular_dessin(p).passport
    x = [3] * ((p - 1) // 3) + [1, 1] if p % 3 == 1 else [3] * ((p + 1) // 3)
    y = [2] * ((p - 1) // 2) + [1, 1] if p % 4 == 1 else [2] * ((p + 1) // 2)
    return Passport(CycleType.from_lengths(x), CycleType.from_lengths(y), CycleType.from_lengths([p, 1]))


def d0_genus(p: int) -> int:
    """(p - c)/12 with c in {13, 5, 7, -1} for p = 1, 5, 7, 11 mod 12; 0 for p = 2, 3."""
    if p in (2, 3):
        return 0
    c = {1: 13, 5: 5, 7: 7, 11: -1}[p % 12]
    return (p - c) // 12


def modular_cover_stats(p: int) -> tuple[int, int]:
    """(degree, genus) of the regular cover D(p) of D0(p)."""
    if p == 2:
        return 6, 0
    return p * (p * p - 1) // 2, (p + 2) * (p - 3) * (p - 5) // 24


# -- PSL2(p) matrices ------------------------------------------------------

@dataclass(frozen=True)
class ProjMat2:
    """+-[[a, b], [c, d]] in PSL2(p), with the sign fixed so the first nonzero entry is <= (p-1)/2."""
    a: int
    b: int
    c: int
    d: int
    p: int

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int, p: int) -> "ProjMat2":
        e = [a % p, b % p, c % p, d % p]
        if (e[0] * e[3] - e[1] * e[2]) % p != 1:
            raise ValueError(f"determinant of {e} is not 1 mod {p}")
        first = next(v for v in e if v)
        if first > (p - 1) // 2:
            e = [(-v) % p for v in e]
        return cls(*e, p)

    def __mul__(self, o: "ProjMat2") -> "ProjMat2":
        p = self.p
        return ProjMat2.make(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d, p,
        )

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def moebius(self) -> list[int]:
        # transpose convention: rows (a, b), (c, d) give t -> (at + c)/(bt + d)
        return _moebius_perm(self.p, self.a, self.c, self.b, self.d)


def _closure(gens: Sequence[ProjMat2]) -> set[ProjMat2]:
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = g * h
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def psl2_11_generators() -> dict[str, ProjMat2]:
    m = lambda a, b, c, d: ProjMat2.make(a, b, c, d, 11)  # noqa: E731
    return {
        "x": m(0, 1, -1, -1), "y": m(0, 1, -1, 0), "z": m(1, 0, 1, 1),
        "u": m(4, -1, 2, -3), "v": m(0, 1, -1, 0), "w": m(2, -4, -3, 1),
        "ubar": m(4, 1, -2, -3), "vbar": m(0, -1, 1, 0), "wbar": m(2, 4, 3, 1),
    }


def psl2_coset_dessin(p: int = 11, variant: str = "H") -> Dessin:
    """The action of x, y on the 11 right cosets of H = <u, v, w> (or H-bar) in PSL2(11)."""
    if p != 11:
        raise ValueError("coset generators are only known for p = 11")
    g = psl2_11_generators()
    if variant == "H":
        sub = [g["u"], g["v"], g["w"]]
    elif variant in ("Hbar", "H̄"):
        sub = [g["ubar"], g["vbar"], g["wbar"]]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    u, v, w = sub
    assert (u * u * u).is_identity() and (v * v).is_identity() and (u * v * w).is_identity()
    H = _closure(sub)
    if len(H) != 60:
        raise ClosureOrderWrong(f"subgroup has order {len(H)}, expected 60")
    x, y = g["x"], g["y"]
    start = frozenset(H)
    cosets = {start: 0}
    order = [start]
    for c in order:
        for s in (x, y):
            nc = frozenset(h * s for h in c)
            if nc not in cosets:
                cosets[nc] = len(order)
                order.append(nc)
    if len(order) != 11:
        raise ClosureOrderWrong(f"{len(order)} cosets, expected 11")
    act = lambda s: [cosets[frozenset(h * s for h in c)] for c in order]  # noqa: E731
    return _standardize(act(x), act(y), 0, f"PSL2(11)/{'H' if variant == 'H' else 'Hbar'}")


# -- plane maps from drawings ----------------------------------------------

class _MapBuilder:
    """Black vertices with darts placed at angles; x is the ccw rotation, y pairs darts."""

    def __init__(self):
        self.vertex: list[int] = []
        self.angle: list[float] = []
        self.mate: list[Optional[int]] = []
        self.nv = 0

    def vertex_with(self, angles: Iterable[float]) -> list[int]:
        v = self.nv
        self.nv += 1
        ids = []
        for a in angles:
            ids.append(len(self.vertex))
            self.vertex.append(v)
            self.angle.append(a % 360)
            self.mate.append(None)
        return ids

    def edge(self, d1: int, d2: int):
        assert self.mate[d1] is None and self.mate[d2] is None
        self.mate[d1], self.mate[d2] = d2, d1

    def perms(self) -> tuple[list[int], list[int]]:
        n = len(self.vertex)
        x = list(range(n))
        for v in range(self.nv):
            ds = sorted((i for i in range(n) if self.vertex[i] == v), key=lambda i: self.angle[i])
            for a, b in zip(ds, ds[1:] + ds[:1]):
                x[a] = b
        y = [i if m is None else m for i, m in enumerate(self.mate)]
        return x, y


def _path_tree(k: int, left: str, right: str, n_pendant: int = 0, loop: bool = False) -> tuple[_MapBuilder, int]:
    """A path of k trivalent black vertices with one side branch each (pointing down
    for loop layouts, up otherwise).

    left: "two-stubs" | "loop"; right: "two-leaves" | "stub-leaf" | "two-stubs";
    the first ``n_pendant`` interior side branches end in a black leaf.
    Returns the builder and the dart labelled 1.
    """
    mb = _MapBuilder()
    side = 270 if loop else 90
    prev_right = None
    first = None
    for i in range(k):
        if i == 0:
            if left == "two-stubs":
                ds = mb.vertex_with([0, 135, 225])
                first = ds[1]
            else:  # loop on the left
                ds = mb.vertex_with([0, 150, 210])
                mb.edge(ds[1], ds[2])
                first = ds[1]
            right_dart = ds[0]
        elif i == k - 1:
            if right == "two-leaves":
                ds = mb.vertex_with([180, 45, 315])
                for d in ds[1:]:
                    (leaf,) = mb.vertex_with([0])
                    mb.edge(d, leaf)
            elif right == "stub-leaf":
                ds = mb.vertex_with([180, 45, 315])
                (leaf,) = mb.vertex_with([135])
                mb.edge(ds[2], leaf)
            else:
                ds = mb.vertex_with([180, 45, 315])
            mb.edge(prev_right, ds[0])
            right_dart = None
        else:
            ds = mb.vertex_with([180, 0, side])
            mb.edge(prev_right, ds[0])
            if i <= n_pendant:
                (leaf,) = mb.vertex_with([side + 180])
                mb.edge(ds[2], leaf)
            right_dart = ds[1]
        prev_right = right_dart
    return mb, first


def family_dessin_degree_p(p: int, variant: str) -> Dessin:
    """Path-with-pendants plane trees: D for p = 3k + 2, D' for p = 3k + 1.

    D has passport (3^k 1^2, 2^(k+1) 1^k, p); D' has (3^k 1^1, 2^k 1^(k+1), p).
    """
    if not is_prime(p) or p < 5:
        raise ValueError("need a prime p >= 5")
    if variant == "D":
        if p % 3 != 2:
            raise CongruenceMismatch(f"D needs p = 2 mod 3, got {p}")
        k = (p - 2) // 3
        if k == 1:
            mb = _MapBuilder()
            ds = mb.vertex_with([90, 45, 315])
            for d in ds[1:]:
                (leaf,) = mb.vertex_with([180])
                mb.edge(d, leaf)
            first = ds[0]
        else:
            mb, first = _path_tree(k, "two-stubs", "two-leaves")
    elif variant in ("D'", "Dprime"):
        if p % 3 != 1:
            raise CongruenceMismatch(f"D' needs p = 1 mod 3, got {p}")
        k = (p - 1) // 3
        mb, first = _path_tree(k, "two-stubs", "stub-leaf")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    x, y = mb.perms()
    d = _standardize(x, y, first, f"{'D' if variant == 'D' else 'Dprime'}({p})")
    assert d.degree == p and d.genus == 0
    return d


def family_dessin_degree_p_plus_1(p: int) -> Dessin:
    """A loop at the left end of a path of k trivalent vertices, three black pendants,
    then free edges; for p = 3k + 4 the last two free edges get black leaves.
    """
    if not is_prime(p) or p < 17:
        raise ValueError("need a prime p >= 17")
    if p % 3 == 2:
        k, right = (p - 2) // 3, "two-stubs"
    else:
        k, right = (p - 4) // 3, "two-leaves"
    mb, first = _path_tree(k, "loop", right, n_pendant=3, loop=True)
    x, y = mb.perms()
    d = _standardize(x, y, first, f"A{p + 1}-family({p})")
    assert d.degree == p + 1
    return d


# -- GF(2) matrices ----------------------------------------------------------

@dataclass(frozen=True)
class BinMat:
    """n x n matrix over F_2; row i is an int whose bit j is entry (i, j)."""
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "BinMat":
        return cls(tuple(1 << i for i in range(n)))

    def apply(self, v: int) -> int:
        """Row vector v times this matrix."""
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.rows[i]
            v >>= 1
            i += 1
        return out

    def __mul__(self, o: "BinMat") -> "BinMat":
        return BinMat(tuple(o.apply(r) for r in self.rows))

    def __add__(self, o: "BinMat") -> "BinMat":
        return BinMat(tuple(a ^ b for a, b in zip(self.rows, o.rows)))

    def __pow__(self, k: int) -> "BinMat":
        out, base = BinMat.identity(self.n), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def rank(self) -> int:
        rows = list(self.rows)
        r = 0
        for bit in range(self.n):
            piv = next((i for i in range(r, len(rows)) if rows[i] >> bit & 1), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] >> bit & 1:
                    rows[i] ^= rows[r]
            r += 1
        return r

    def inverse(self) -> "BinMat":
        n = self.n
        aug = [(self.rows[i], 1 << i) for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if aug[i][0] >> col & 1), None)
            if piv is None:
                raise ValueError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            for i in range(n):
                if i != col and aug[i][0] >> col & 1:
                    aug[i] = (aug[i][0] ^ aug[col][0], aug[i][1] ^ aug[col][1])
        return BinMat(tuple(r for _, r in aug))

    def kernel(self) -> list[int]:
        """All v with vM = 0, sorted."""
        return [v for v in range(1 << self.n) if self.apply(v) == 0]

    def image(self) -> list[int]:
        return sorted({self.apply(v) for v in range(1 << self.n)})

    def order(self, bound: int = 1 << 20) -> int:
        ident = BinMat.identity(self.n)
        m, k = self, 1
        while m != ident:
            m = m * self
            k += 1
            if k > bound:
                raise ValueError("order exceeds bound")
        return k


def _polymulmod(a: int, b: int, f: int, n: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= f
    return out


def _is_primitive_poly(f: int, n: int) -> bool:
    """Whether t has multiplicative order 2^n - 1 modulo f (f of degree n with f(0) = 1)."""
    m = (1 << n) - 1

    def tpow(e):
        r, b = 1, 2
        while e:
            if e & 1:
                r = _polymulmod(r, b, f, n)
            b = _polymulmod(b, b, f, n)
            e >>= 1
        return r

    if tpow(m) != 1:
        return False
    q, r = m, 2
    primes = set()
    while r * r <= q:
        while q % r == 0:
            primes.add(r)
            q //= r
        r += 1
    if q > 1:
        primes.add(q)
    return all(tpow(m // l) != 1 for l in primes)


def least_primitive_polynomial(n: int) -> int:
    """Bitmask of the least primitive polynomial of degree n over F_2."""
    for f in range((1 << n) | 1, 1 << (n + 1), 2):
        if _is_primitive_poly(f, n):
            return f
    raise ValueError(f"no primitive polynomial of degree {n}")


def companion(f: int, n: int) -> BinMat:
    """Multiplication by t on F_2[t]/(f) in the basis 1, t, ..., t^(n-1)."""
    return BinMat(tuple(_polymulmod(1 << i, 2, f, n) for i in range(n)))


def _canonical_involution(n: int) -> BinMat:
    """One 1x1 block and (n-1)/2 Jordan blocks [[1, 1], [0, 1]]."""
    rows = [1]
    for i in range(1, n, 2):
        rows += [(1 << i) | (1 << (i + 1)), 1 << (i + 1)]
    return BinMat(tuple(rows[:n]))


def _random_invertible(n: int, rng: random.Random) -> BinMat:
    while True:
        m = BinMat(tuple(rng.getrandbits(n) for _ in range(n)))
        if m.rank() == n:
            return m


def find_glnq_triple(n: int, seed: int = 0, attempts: int = 10**6) -> tuple[BinMat, BinMat, BinMat]:
    """(x, y, z) in GL_n(2) with x^3 = y^2 = xyz = 1, z a Singer cycle, and r = s = 1.

    y runs over random conjugates of the involution with a single 1-block;
    x = (yz)^-1 is accepted when it has order 3 and a 1-dimensional fixed space.
    """
    p = (1 << n) - 1
    if not is_prime(p):
        raise ValueError(f"2^{n} - 1 = {p} is not prime")
    if n > 7:
        raise ValueError("search is only supported for n <= 7")
    z = companion(least_primitive_polynomial(n), n)
    zinv = z.inverse()
    y0 = _canonical_involution(n)
    ident = BinMat.identity(n)
    rng = random.Random(seed)
    for _ in range(attempts):
        g = _random_invertible(n, rng)
        y = g.inverse() * y0 * g
        x = zinv * y  # (yz)^-1 = z^-1 y^-1 and y = y^-1
        if x == ident or x * x * x != ident:
            continue
        if len((x + ident).kernel()) == 2:
            return x, y, z
    raise SearchExhausted(f"no triple after {attempts} attempts")


def projective_action(mats: Sequence[BinMat]) -> list[list[int]]:
    """0-based permutations of the nonzero vectors 1..2^n - 1 (vector v is point v - 1)."""
    return [[m.apply(v) - 1 for v in range(1, 1 << m.n)] for m in mats]


def glnq_dessin(x: BinMat, y: BinMat, label: str | None = None) -> Dessin:
    """The dessin on the projective points, with the fixed point of x labelled 1."""
    px, py = projective_action([x, y])
    fixed = [i for i, j in enumerate(px) if i == j]
    return _standardize(px, py, fixed[0] if fixed else 0, label)


# -- affine lifts --------------------------------------------------------------

def agl_lift(n: int, x: BinMat, y: BinMat, z: BinMat, a: int, b: int) -> Dessin:
    """The triple (xa, yb, zc) in AGL_n(2) with c = a^(yz) + b^z, acting on F_2^n.

    The face cycle is relabelled 1..p and the fixed point of w gets p + 1.
    """
    ident = BinMat.identity(n)
    if (x * x + x + ident).apply(a) != 0:
        raise KernelViolation("a is not in ker(x^2 + x + 1)")
    if (y + ident).apply(b) != 0:
        raise KernelViolation("b is not in ker(y + 1)")
    c = (y * z).apply(a) ^ z.apply(b)
    N = 1 << n
    u = [x.apply(t) ^ a for t in range(N)]
    v = [y.apply(t) ^ b for t in range(N)]
    w = [z.apply(t) ^ c for t in range(N)]
    assert all(w[v[u[t]]] == t for t in range(N))
    order = PermGroup([Permutation(u), Permutation(v)]).order()
    full = N * math.prod(N - (1 << i) for i in range(n))
    if order != full:
        raise ComplementDegenerate(f"<u, v> has order {order}, not |AGL_{n}(2)| = {full}")
    f = next(t for t in range(N) if w[t] == t)
    start = v[f] if v[f] != f else u[f]
    return _standardize(u, v, start, f"AGL{n}(2) lift a={a} b={b}")


def agl_choices(x: BinMat, y: BinMat) -> tuple[list[int], list[int], list[int]]:
    """(T_x, T_y, T(1 - y)): admissible a, admissible b, and the image of 1 - y."""
    ident = BinMat.identity(x.n)
    return (x * x + x + ident).kernel(), (y + ident).kernel(), (y + ident).image()
