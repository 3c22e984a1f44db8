"""Character tables and counts of class triples with product 1.

The number of (x, y, z) in classes X, Y, Z with xyz = 1 is

    |G|^2 / (|C(x)| |C(y)| |C(z)|) * sum_chi chi(x) chi(y) chi(z) / chi(1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional, Sequence

from .cyclotomic import Cyclotomic, parse_cyclotomic
from .perm import Permutation, PermGroup, compose, conjugate, inverse
from .primes import is_prime


class NonIntegerCount(ValueError):
    pass


class PartialNotApplicable(ValueError):
    pass


class NonIntegerOrbits(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotProjectivePrime(ValueError):
    pass


@dataclass(frozen=True)
class ClassInfo:
    name: str
    element_order: int
    centralizer_order: int


@dataclass
class CharacterTable:
    group_name: str
    group_order: int
    classes: list[ClassInfo]
    characters: list[tuple[str, list[Cyclotomic]]]
    partial: bool = False
    covers: list[frozenset] = field(default_factory=list)
    raw: list[list[str]] = field(default_factory=list, repr=False)

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(f"no class {name!r} in {self.group_name}")

    def validate(self) -> None:
        if self.characters and any(v != 1 for v in self.characters[0][1]):
            raise ValueError("first row must be the principal character")
        for name, row in self.characters:
            if len(row) != len(self.classes):
                raise ValueError(f"row {name} has {len(row)} values for {len(self.classes)} classes")
        if self.partial:
            return
        size = sum(Fraction(self.group_order, c.centralizer_order) for c in self.classes)
        if size != self.group_order:
            raise ValueError(f"class sizes sum to {size}, not {self.group_order}")
        ident = [i for i, c in enumerate(self.classes) if c.element_order == 1]
        if len(ident) != 1:
            raise ValueError("need exactly one identity class")
        deg2 = sum(row[ident[0]].to_rational() ** 2 for _, row in self.characters)
        if deg2 != self.group_order:
            raise ValueError(f"sum of squared degrees is {deg2}, not {self.group_order}")

    def check_orthogonality(self) -> None:
        """Row orthogonality weighted by class sizes (full tables)."""
        sizes = [Fraction(self.group_order, c.centralizer_order) for c in self.classes]
        for i, (_, a) in enumerate(self.characters):
            for j, (_, b) in enumerate(self.characters):
                s = Cyclotomic.rational(0)
                for k in range(len(sizes)):
                    s = s + a[k] * b[k].conjugate() * sizes[k]
                expect = self.group_order if i == j else 0
                if s != expect:
                    raise ValueError(f"rows {i} and {j} are not orthogonal")


def parse_table(text: str) -> CharacterTable:
    lines = [ln for ln in text.splitlines()]
    it = iter(lines)
    name = order = None
    classes: list[ClassInfo] = []
    chars: list[tuple[str, list[Cyclotomic]]] = []
    raws: list[list[str]] = []
    partial = None
    covers: list[frozenset] = []
    mode = None
    for raw in it:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("group "):
            parts = line.split()
            if len(parts) != 4 or parts[2] != "order":
                raise ValueError(f"bad group line {raw!r}")
            name, order = parts[1], int(parts[3])
            mode = None
        elif line.startswith("classes:"):
            mode = "classes"
            rest = line[len("classes:"):].strip()
            if rest:
                classes.append(_class_line(rest))
        elif line.startswith("partial:"):
            v = line.split(":", 1)[1].strip()
            if v not in ("true", "false"):
                raise ValueError(f"bad partial flag {v!r}")
            partial = v == "true"
            mode = None
        elif line.startswith("covers:"):
            covers.append(frozenset(line.split(":", 1)[1].split()))
            mode = None
        elif line.startswith("char "):
            head, sep, body = line[5:].partition(":")
            if not sep:
                raise ValueError(f"bad char line {raw!r}")
            toks = [t.strip() for t in body.split("|")]
            raws.append(toks)
            chars.append((head.strip(), [parse_cyclotomic(t) for t in toks]))
            mode = None
        elif mode == "classes":
            classes.append(_class_line(line))
        else:
            raise ValueError(f"unrecognized line {raw!r}")
    if name is None or partial is None:
        raise ValueError("table needs a group line and a partial flag")
    t = CharacterTable(name, order, classes, chars, partial, covers, raws)
    t.validate()
    return t


def _class_line(s: str) -> ClassInfo:
    parts = s.split()
    if len(parts) != 3:
        raise ValueError(f"bad class line {s!r}")
    return ClassInfo(parts[0], int(parts[1]), int(parts[2]))


def format_table(t: CharacterTable) -> str:
    out = [f"group {t.group_name} order {t.group_order}", "classes:"]
    for c in t.classes:
        out.append(f"  {c.name} {c.element_order} {c.centralizer_order}")
    out.append(f"partial: {'true' if t.partial else 'false'}")
    for cov in t.covers:
        out.append("covers: " + " ".join(sorted(cov, key=lambda s: [c.name for c in t.classes].index(s))))
    for i, (name, row) in enumerate(t.characters):
        vals = t.raw[i] if i < len(t.raw) else [str(v) for v in row]
        out.append(f"char {name}: " + " | ".join(vals))
    return "\n".join(out) + "\n"


def load_table(name: str) -> CharacterTable:
    """Load a shipped table by file stem, e.g. ``psl2_11``."""
    text = resources.files("dessins.data").joinpath(f"{name}.tbl").read_text()
    return parse_table(text)


SHIPPED_TABLES = ("psl2_7", "psl2_11", "psl2_13", "m11", "a11_partial")


def character_sum(t: CharacterTable, cx: str, cy: str, cz: str) -> Fraction:
    i, j, k = t.class_index(cx), t.class_index(cy), t.class_index(cz)
    ident = next((n for n, c in enumerate(t.classes) if c.element_order == 1), None)
    if ident is None:
        raise ValueError("table lacks the identity class")
    s = Cyclotomic.rational(0)
    for _, row in t.characters:
        s = s + row[i] * row[j] * row[k] / row[ident]
    return s.to_rational()


def frobenius_count(t: CharacterTable, cx: str, cy: str, cz: str) -> Fraction:
    if t.partial and frozenset((cx, cy, cz)) not in t.covers:
        raise PartialNotApplicable(f"partial table of {t.group_name} does not cover {(cx, cy, cz)}")
    sigma = character_sum(t, cx, cy, cz)
    c = [t.classes[t.class_index(n)].centralizer_order for n in (cx, cy, cz)]
    value = Fraction(t.group_order**2, c[0] * c[1] * c[2]) * sigma
    if not t.partial and (value.denominator != 1 or value < 0):
        raise NonIntegerCount(f"count {value} for {(cx, cy, cz)} in {t.group_name}")
    return value


# -- brute force -----------------------------------------------------------

@dataclass
class TripleCount:
    total: int
    per_class_Z: dict[str, int]
    generating: Optional[int] = None
    aut_orbits: Optional[Fraction] = None

    def __post_init__(self):
        assert self.total == sum(self.per_class_Z.values())


def conjugacy_class(gens: Sequence[Permutation], rep: Permutation) -> set[Permutation]:
    seen = {rep}
    stack = [rep]
    invs = [inverse(g) for g in gens]
    while stack:
        a = stack.pop()
        for g, gi in zip(gens, invs):
            b = compose(compose(gi, a), g)
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def brute_force_triples(
    gens: Sequence[Permutation],
    x_rep: Permutation,
    y_rep: Permutation,
    z_class: Callable[[Permutation], Optional[str]],
    count_generating: bool = True,
    budget: int = 2 * 10**7,
) -> TripleCount:
    """Count pairs (x, y) in the classes of x_rep, y_rep whose z = (xy)^-1 is accepted by z_class.

    ``z_class`` returns a class name for wanted z and None otherwise.
    """
    G = PermGroup(gens)
    order = G.order()
    X = sorted(conjugacy_class(gens, x_rep))
    Y = sorted(conjugacy_class(gens, y_rep))
    if len(X) * len(Y) > budget:
        raise BudgetExceeded(f"{len(X) * len(Y)} products exceed budget {budget}")
    per: dict[str, int] = {}
    generating = 0 if count_generating else None
    for x in X:
        for y in Y:
            z = inverse(compose(x, y))
            name = z_class(z)
            if name is None:
                continue
            per[name] = per.get(name, 0) + 1
            if count_generating and PermGroup([x, y]).order() == order:
                generating += 1
    return TripleCount(sum(per.values()), per, generating)


def class_membership(gens: Sequence[Permutation], reps: dict[str, Permutation]) -> Callable[[Permutation], Optional[str]]:
    """A z_class function recognising the conjugacy classes of the given representatives."""
    table = {}
    for name, r in reps.items():
        for g in conjugacy_class(gens, r):
            table[g] = name
    return table.get


def aut_orbit_count(total_generating: int, aut_order: int) -> Fraction:
    if aut_order <= 0:
        raise ValueError("automorphism group order must be positive")
    q = Fraction(total_generating, aut_order)
    if q.denominator != 1:
        raise NonIntegerOrbits(f"{total_generating} generating triples not divisible by {aut_order}")
    return q


def expected_dessin_count(family: str, param: int) -> tuple[int, bool]:
    """Closed-form dessin counts: (value, is_lower_bound).

    ``fermat`` k: p = 2^(2^k) + 1 gives 2^(2^k - k - 1) dessins.
    ``psl3`` q = r^e: p = 1 + q + q^2 gives (p - 1)/(3e) dessins.
    ``mersenne`` n: p = 2^n - 1 gives at least (p - 1)/(2n) chiral pairs.
    """
    from .primes import prime_power

    if family == "fermat":
        k = param
        p = 2 ** (2**k) + 1
        if not is_prime(p):
            raise NotProjectivePrime(f"2^(2^{k}) + 1 = {p} is not prime")
        return 2 ** (2**k - k - 1), False
    if family == "psl3":
        q = param
        pp = prime_power(q)
        p = 1 + q + q * q
        if pp is None or not is_prime(p):
            raise NotProjectivePrime(f"1 + {q} + {q}^2 = {p} is not a projective prime")
        return (p - 1) // (3 * pp[1]), False
    if family == "mersenne":
        n = param
        p = 2**n - 1
        if not is_prime(p):
            raise NotProjectivePrime(f"2^{n} - 1 = {p} is not prime")
        return (p - 1) // (2 * n), True
    raise ValueError(f"unknown family {family!r}")
