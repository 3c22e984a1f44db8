"""Dessins as permutation triples (x, y, z) with xyz = 1."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .perm import (
    CycleType,
    NotTransitive,
    Permutation,
    PermGroup,
    commutator,
    compose,
    conjugate,
    cycle_type,
    format_cycles,
    inverse,
    is_transitive,
    parse_cycles,
)


class NonIntegralGenus(ValueError):
    pass


@dataclass(frozen=True)
class Passport:
    black: CycleType
    white: CycleType
    faces: CycleType

    def __post_init__(self):
        if not self.black.degree == self.white.degree == self.faces.degree:
            raise ValueError("cycle types of unequal degree")

    @property
    def degree(self) -> int:
        return self.black.degree

    @classmethod
    def parse(cls, text: str) -> "Passport":
        """Parse ``"3^3 1^2; 2^4 1^3; 11^1"`` (separator ``;`` or ``|``)."""
        parts = [p.strip() for p in re.split(r"[;|]", text)]
        if len(parts) != 3:
            raise ValueError(f"passport needs three parts: {text!r}")
        return cls(*(CycleType.parse(p) for p in parts))

    def __str__(self):
        return f"{self.black}; {self.white}; {self.faces}"


@dataclass(frozen=True)
class DessinType:
    l: int
    m: int
    r: int


@dataclass(frozen=True, eq=False)
class Dessin:
    x: Permutation
    y: Permutation
    label: Optional[str] = field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return self.x.degree

    @cached_property
    def z(self) -> Permutation:
        return inverse(compose(self.x, self.y))

    @cached_property
    def passport(self) -> Passport:
        return Passport(cycle_type(self.x), cycle_type(self.y), cycle_type(self.z))

    @property
    def type(self) -> DessinType:
        return DessinType(self.x.order(), self.y.order(), self.z.order())

    def euler_characteristic(self) -> int:
        p = self.passport
        return p.black.num_cycles + p.white.num_cycles + p.faces.num_cycles - self.degree

    @property
    def genus(self) -> int:
        return genus(self)

    def group(self) -> PermGroup:
        return PermGroup([self.x, self.y], self.degree)

    def group_order(self) -> int:
        return self.group().order()

    def relabel(self, t: Permutation) -> "Dessin":
        """The conjugate dessin (x^t, y^t)."""
        return Dessin(conjugate(self.x, t), conjugate(self.y, t), self.label)

    def __eq__(self, other):
        return isinstance(other, Dessin) and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        lab = f", label={self.label!r}" if self.label else ""
        return f"Dessin(x={format_cycles(self.x)!r}, y={format_cycles(self.y)!r}, n={self.degree}{lab})"


def make_dessin(x: Permutation, y: Permutation, label: str | None = None) -> Dessin:
    if x.degree != y.degree:
        raise ValueError("x and y have unequal degrees")
    if not is_transitive([x, y], x.degree):
        raise NotTransitive("<x, y> is not transitive")
    return Dessin(x, y, label)


def genus(d: Dessin) -> int:
    chi = d.euler_characteristic()
    assert chi % 2 == 0, f"odd Euler characteristic {chi}"
    g = 1 - chi // 2
    assert g >= 0, f"negative genus {g}"
    return g


def regular_cover_genus(t: DessinType | tuple, group_order: int) -> int:
    """Genus of the regular cover 1 + |G|/2 * (1 - 1/l - 1/m - 1/r)."""
    l, m, r = (t.l, t.m, t.r) if isinstance(t, DessinType) else t
    g = 1 + Fraction(group_order, 2) * (1 - Fraction(1, l) - Fraction(1, m) - Fraction(1, r))
    if g.denominator != 1:
        raise NonIntegralGenus(f"type {(l, m, r)} with |G| = {group_order} gives genus {g}")
    return int(g)


def regular_cover_genus_general(r: int, group_order: int = 39916800) -> int:
    """Regular-cover genus for type (3, 2, r); defaults to |G| = 11!."""
    if r <= 6:
        raise NonIntegralGenus("r must exceed 6 for a hyperbolic type")
    return regular_cover_genus((3, 2, r), group_order)


def mirror(d: Dessin) -> Dessin:
    """(x^-1, y^-1), whose face permutation is yx."""
    return Dessin(inverse(d.x), inverse(d.y), d.label)


def commutator_signature(d: Dessin) -> CycleType:
    return cycle_type(commutator(d.x, d.y))


# -- canonical form --------------------------------------------------------

def _bfs_relabel(xi: tuple, yi: tuple, seed: int, first: int) -> list[int]:
    """Labels assigned in breadth-first order from ``seed``; ``first`` picks x (0) or y (1) first."""
    n = len(xi)
    order = (xi, yi) if first == 0 else (yi, xi)
    lab = [-1] * n
    lab[seed] = 0
    queue = [seed]
    k = 1
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        for g in order:
            b = g[a]
            if lab[b] < 0:
                lab[b] = k
                k += 1
                queue.append(b)
    return lab


def _apply_labels(p: tuple, lab: list[int]) -> tuple:
    out = [0] * len(p)
    for i, a in enumerate(p):
        out[lab[i]] = lab[a]
    return tuple(out)


def _canonical(d: Dessin) -> tuple[tuple, tuple, list[int]]:
    xi, yi = d.x.images, d.y.images
    best = None
    for seed in range(len(xi)):
        for first in (0, 1):
            lab = _bfs_relabel(xi, yi, seed, first)
            key = (_apply_labels(xi, lab), _apply_labels(yi, lab))
            if best is None or key < best[:2]:
                best = (key[0], key[1], lab)
    return best


def canonical_form(d: Dessin) -> Dessin:
    cx, cy, _ = _canonical(d)
    return Dessin(Permutation._raw(cx), Permutation._raw(cy), d.label)


def canonical_key(d: Dessin) -> tuple[tuple, tuple]:
    cx, cy, _ = _canonical(d)
    return cx, cy


def are_isomorphic(d1: Dessin, d2: Dessin) -> Optional[Permutation]:
    """A permutation t with x1^t = x2 and y1^t = y2, or None."""
    if d1.degree != d2.degree or d1.passport != d2.passport:
        return None
    if not (is_transitive([d1.x, d1.y]) and is_transitive([d2.x, d2.y])):
        raise NotTransitive("isomorphism test needs transitive dessins")
    cx1, cy1, lab1 = _canonical(d1)
    cx2, cy2, lab2 = _canonical(d2)
    if (cx1, cy1) != (cx2, cy2):
        return None
    inv2 = [0] * len(lab2)
    for i, a in enumerate(lab2):
        inv2[a] = i
    t = Permutation._raw(tuple(inv2[lab1[i]] for i in range(len(lab1))))
    assert conjugate(d1.x, t) == d2.x and conjugate(d1.y, t) == d2.y
    return t


def is_mirror_symmetric(d: Dessin) -> bool:
    return are_isomorphic(d, mirror(d)) is not None


# -- text format -----------------------------------------------------------

def format_dessin(d: Dessin) -> str:
    lines = [f"degree: {d.degree}", f"x: {format_cycles(d.x)}", f"y: {format_cycles(d.y)}"]
    if d.label:
        lines.append(f"label: {d.label}")
    return "\n".join(lines) + "\n"


def parse_dessins(text: str, validate: bool = True) -> list[Dessin]:
    """Parse records of ``degree:``/``x:``/``y:``/``label:`` lines separated by blank lines."""
    out = []
    rec: dict[str, str] = {}

    def flush():
        if not rec:
            return
        missing = {"degree", "x", "y"} - rec.keys()
        if missing:
            raise ValueError(f"record missing {sorted(missing)}")
        n = int(rec["degree"])
        x = parse_cycles(rec["x"], n)
        y = parse_cycles(rec["y"], n)
        d = make_dessin(x, y, rec.get("label")) if validate else Dessin(x, y, rec.get("label"))
        out.append(d)
        rec.clear()

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            if not line:
                flush()
            continue
        key, sep, val = line.partition(":")
        key = key.strip()
        if not sep or key not in ("degree", "x", "y", "label"):
            raise ValueError(f"unrecognized line {raw!r}")
        if key == "degree" and rec:
            flush()
        rec[key] = val.strip()
    flush()
    return out
