"""Identification of monodromy groups of prime degree p and degree p + 1."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd, prod

from .dessin import Dessin
from .perm import Permutation, compose, commutator, cycle_type, is_primitive, power
from .primes import is_prime
from .projective import projective_decompositions

M11_ORDER = 7920
M12_ORDER = 95040
M23_ORDER = 10200960
M24_ORDER = 244823040


class UnrecognizedOrder(ValueError):
    pass


class NotPrimitive(ValueError):
    pass


class GcdNotOne(ValueError):
    pass


@dataclass(frozen=True)
class GroupLabel:
    family: str  # Alt, Sym, PSL2, PSL, AGL, AGL1-sub, M11, M12, M23, M24, Unknown
    params: dict = field(default_factory=dict, compare=False, hash=False)
    order: int = 0

    def __str__(self):
        p = self.params
        if self.family in ("Alt", "Sym"):
            return f"{self.family[0]}{p['n']}"
        if self.family == "PSL2":
            return f"PSL2({p['q']})"
        if self.family == "PSL":
            return f"PSL{p['n']}({p['q']})"
        if self.family == "AGL":
            return f"AGL{p['n']}(2)"
        if self.family == "AGL1-sub":
            return f"C{p['p']}:C{p['k']}"
        return self.family

    def as_dict(self) -> dict:
        return {"family": self.family, "parameters": dict(self.params), "order": self.order, "name": str(self)}


def projective_order(n: int, q: int) -> int:
    """|PSL_n(q)| when gcd(n, q - 1) = 1, where it equals |SL_n(q)|."""
    if gcd(n, q - 1) != 1:
        raise GcdNotOne(f"gcd({n}, {q - 1}) != 1")
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1))


def gl2_order(n: int) -> int:
    return prod(2**n - 2**i for i in range(n))


def psl2_order(p: int) -> int:
    return 6 if p == 2 else p * (p * p - 1) // 2


# -- Jordan's criterion ----------------------------------------------------

def _prime_cycle_power(p: Permutation) -> int | None:
    """A prime l such that some power of p is a single l-cycle with >= 3 fixed points."""
    lengths = cycle_type(p).lengths()
    n = p.degree
    order = p.order()
    for k in range(1, order):
        parts = []
        for L in lengths:
            g = gcd(L, k)
            parts += [L // g] * g
        moved = [m for m in parts if m > 1]
        if len(moved) == 1 and is_prime(moved[0]) and n - moved[0] >= 3:
            return moved[0]
    return None


def jordan_words(d: Dessin):
    """The fixed word set: z, [x, y] and x z^a x z^b for a, b < order(z)."""
    x, y, z = d.x, d.y, d.z
    yield "z", z
    yield "[x,y]", commutator(x, y)
    oz = z.order()
    zp = [power(z, a) for a in range(oz)]
    for a in range(oz):
        xa = compose(x, zp[a])
        for b in range(oz):
            yield f"x z^{a} x z^{b}", compose(xa, compose(x, zp[b]))


def jordan_witness(d: Dessin) -> tuple[str, int] | None:
    """(word, prime) for the first word having a power that is a prime cycle with >= 3 fixed points."""
    if not is_primitive([d.x, d.y]):
        raise NotPrimitive("Jordan's criterion needs a primitive group")
    for name, w in jordan_words(d):
        l = _prime_cycle_power(w)
        if l is not None:
            return name, l
    return None


def jordan_criterion(d: Dessin) -> bool:
    return jordan_witness(d) is not None


# -- order matching --------------------------------------------------------

def _all_even(d: Dessin) -> bool:
    return d.x.is_even() and d.y.is_even()


def prime_degree_candidates(p: int) -> list[GroupLabel]:
    cands = [
        GroupLabel("Alt", {"n": p}, factorial(p) // 2),
        GroupLabel("Sym", {"n": p}, factorial(p)),
    ]
    for k in range(1, p):
        if (p - 1) % k == 0:
            cands.append(GroupLabel("AGL1-sub", {"p": p, "k": k}, k * p))
    if p == 11:
        cands.append(GroupLabel("PSL2", {"q": 11}, 660))
        cands.append(GroupLabel("M11", {}, M11_ORDER))
    if p == 23:
        cands.append(GroupLabel("M23", {}, M23_ORDER))
    for (r, e), n in projective_decompositions(p).pairs:
        q = r**e
        fam = "PSL2" if n == 2 else "PSL"
        cands.append(GroupLabel(fam, {"n": n, "q": q}, projective_order(n, q)))
    return cands


def _match(order: int, cands: list[GroupLabel], even: bool, degree: int) -> GroupLabel:
    hits = [c for c in cands if c.order == order]
    if even:
        hits = [c for c in hits if c.family != "Sym"] or hits
    if not hits:
        raise UnrecognizedOrder(f"order {order} matches no group of degree {degree}")
    # coincident orders at tiny degrees are the same permutation group under two names
    # (for instance A5 = PSL2(4) on 5 points); report the alternating/symmetric name first
    rank = {"Alt": 0, "Sym": 1}
    hits.sort(key=lambda c: rank.get(c.family, 2))
    return hits[0]


def identify_prime_degree(d: Dessin) -> GroupLabel:
    p = d.degree
    if not is_prime(p):
        raise ValueError(f"degree {p} is not prime")
    cands = prime_degree_candidates(p)
    if p > 5:
        orders = [c.order for c in cands]
        assert len(orders) == len(set(orders)), f"candidate orders collide at degree {p}"
    return _match(d.group_order(), cands, _all_even(d), p)


def degree_p_plus_1_candidates(p: int) -> list[GroupLabel]:
    n = p + 1
    cands = [GroupLabel("Alt", {"n": n}, factorial(n) // 2), GroupLabel("PSL2", {"q": p}, psl2_order(p))]
    m = (p + 1).bit_length() - 1
    if 2**m - 1 == p:
        cands.append(GroupLabel("AGL", {"n": m}, 2**m * gl2_order(m)))
    if p == 11:
        cands.append(GroupLabel("M11", {}, M11_ORDER))
        cands.append(GroupLabel("M12", {}, M12_ORDER))
    if p == 23:
        cands.append(GroupLabel("M24", {}, M24_ORDER))
    return cands


def identify_degree_p_plus_1(d: Dessin) -> GroupLabel:
    n = d.degree
    p = n - 1
    if not is_prime(p):
        raise ValueError(f"degree {n} is not a prime plus one")
    if p not in cycle_type(d.z).lengths():
        raise ValueError(f"z has no {p}-cycle")
    cands = degree_p_plus_1_candidates(p)
    if p > 3:
        orders = [c.order for c in cands]
        assert len(orders) == len(set(orders)), f"candidate orders collide at degree {n}"
    return _match(d.group_order(), cands, _all_even(d), n)


def identify(d: Dessin) -> GroupLabel:
    """Dispatch on the degree: prime, or a prime plus one."""
    if is_prime(d.degree):
        return identify_prime_degree(d)
    if is_prime(d.degree - 1):
        return identify_degree_p_plus_1(d)
    raise UnrecognizedOrder(f"degree {d.degree} is neither p nor p + 1")
