"""Shipped reference triples and the regression checks run over them.

Each dataset in ``dessins/data/*.dsn`` is guarded by a SHA-256 manifest.
Expected passports, genera, monodromy orders and chiral pairings live here.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .dessin import Dessin, Passport, are_isomorphic, format_dessin, is_mirror_symmetric, mirror, parse_dessins
from .perm import Permutation, is_transitive

A11_ORDER = 19958400


@dataclass(frozen=True)
class GoldenSet:
    name: str
    group: str
    passport: str
    genus: int
    orders: dict  # label -> order, "*" for the rest
    pairs: tuple = ()  # chiral pairs within the set
    symmetric: tuple = ()  # mirror-symmetric members
    mirror_partners: tuple = ()  # members whose partner is not listed

    def order_of(self, label: str) -> int:
        return self.orders.get(label, self.orders.get("*"))


GOLDEN_SETS = (
    GoldenSet("klein11", "PSL2(11) / A11", "3^3 1^2; 2^4 1^3; 11^1", 0,
              {"M1": 660, "*": A11_ORDER}, (), ("M5", "M6"), ("M1", "M2", "M3", "M4")),
    GoldenSet("psl3_3_13", "PSL3(3)", "3^4 1^1; 2^4 1^5; 13^1", 0, {"*": 5616},
              (("M1", "M3"), ("M2", "M4"))),
    GoldenSet("psl2_16_17", "PSL2(16)", "3^5 1^2; 2^8 1^1; 17^1", 1, {"*": 4080},
              (), ("M1", "M2")),
    GoldenSet("psl3_5_31", "PSL3(5)", "3^10 1^1; 2^12 1^7; 31^1", 1, {"*": 372000},
              tuple((f"M{i}", f"M{i + 5}") for i in range(1, 6))),
    GoldenSet("psl5_2_31", "PSL5(2)", "3^10 1^1; 2^12 1^7; 31^1", 1, {"*": 9999360},
              (("M1", "M4"), ("M2", "M5"), ("M3", "M6"))),
    GoldenSet("agl5_2_32", "AGL5(2)", "3^10 1^2; 2^12 1^8; 31^1 1^1", 0, {"*": 319979520},
              (("M1", "M4"), ("M2", "M5"), ("M3", "M6"))),
    GoldenSet("psl3_8_73", "PSL3(8)", "3^24 1^1; 2^32 1^9; 73^1", 4, {"*": 16482816},
              (("M1", "M5"), ("M2", "M6"), ("M3", "M7"), ("M4", "M8"))),
)


class ChecksumMismatch(RuntimeError):
    pass


def _data(name: str):
    return resources.files("dessins.data").joinpath(name)


def manifest() -> dict[str, str]:
    out = {}
    for line in _data("MANIFEST.sha256").read_text().splitlines():
        if line.strip():
            digest, fname = line.split()
            out[fname] = digest
    return out


def load_set(name: str, verify_checksum: bool = True) -> list[Dessin]:
    fname = f"{name}.dsn"
    raw = _data(fname).read_bytes()
    if verify_checksum:
        want = manifest().get(fname)
        got = hashlib.sha256(raw).hexdigest()
        if want != got:
            raise ChecksumMismatch(f"{fname}: sha256 {got} does not match manifest {want}")
    return parse_dessins(raw.decode())


def roundtrip_text(name: str) -> tuple[str, str]:
    """(file text without comments/leading blank, re-printed text) for a shipped set."""
    text = _data(f"{name}.dsn").read_text()
    body = "\n".join(ln for ln in text.splitlines() if not ln.startswith("#")).strip("\n") + "\n"
    again = "\n".join(format_dessin(d) for d in parse_dessins(text))
    return body, again


@dataclass
class RecordResult:
    id: str
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class AppendixReport:
    records: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def failures(self) -> list[RecordResult]:
        return [r for r in self.records if not r.ok]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "records": [{"id": r.id, "ok": r.ok, "checks": r.checks, "notes": r.notes} for r in self.records],
        }


def _standard_z(d: Dessin) -> bool:
    """z = (1, 2, ..., m) with every other point fixed."""
    z = d.z
    moved = z.moved_points()
    m = len(moved)
    return moved == list(range(1, m + 1)) and all(z(i) == i % m + 1 for i in moved)


def verify_set(gs: GoldenSet) -> list[RecordResult]:
    ds = load_set(gs.name)
    by_label = {d.label: d for d in ds}
    want = Passport.parse(gs.passport)
    results = []
    for d in ds:
        r = RecordResult(f"{gs.name}/{d.label}")
        r.checks["xyz=1"] = (d.x * d.y * d.z).is_identity()
        r.checks["z standard"] = _standard_z(d)
        r.checks["transitive"] = is_transitive([d.x, d.y], d.degree)
        r.checks["passport"] = d.passport == want
        r.checks["genus"] = d.genus == gs.genus
        order = d.group_order()
        r.checks["group order"] = order == gs.order_of(d.label)
        if order != gs.order_of(d.label):
            r.notes.append(f"order {order}, expected {gs.order_of(d.label)}")
        results.append(r)
    res = {r.id: r for r in results}
    paired = set()
    for a, b in gs.pairs:
        ra = res[f"{gs.name}/{a}"]
        ok = are_isomorphic(mirror(by_label[a]), by_label[b]) is not None
        ok = ok and are_isomorphic(by_label[a], by_label[b]) is None
        ra.checks[f"mirror partner {b}"] = ok
        paired.update((a, b))
    for a in gs.symmetric:
        res[f"{gs.name}/{a}"].checks["mirror symmetric"] = is_mirror_symmetric(by_label[a])
        paired.add(a)
    for a in gs.mirror_partners:
        d = by_label[a]
        m = mirror(d)
        chiral = all(are_isomorphic(m, e) is None for e in ds)
        res[f"{gs.name}/{a}"].checks["chiral, partner unlisted"] = chiral
        paired.add(a)
    for r in results:
        lab = r.id.split("/", 1)[1]
        if lab not in paired:
            r.checks["chirality specified"] = False
    distinct = all(are_isomorphic(a, b) is None for i, a in enumerate(ds) for b in ds[i + 1:])
    for r in results:
        r.checks["pairwise non-isomorphic"] = distinct
    return results


def verify_appendix(names: Optional[list[str]] = None) -> AppendixReport:
    sets = [gs for gs in GOLDEN_SETS if names is None or gs.name in names]
    out = []
    for gs in sets:
        out.extend(verify_set(gs))
    return AppendixReport(out)


# -- tables ------------------------------------------------------------------

REGULAR_COVERS = {  # face split -> (r, cover genus, number of dessins)
    (10, 1): (10, 1330561, 6),
    (9, 2): (18, 2217601, 3),
    (8, 3): (24, 2494801, 2),
    (7, 4): (28, 2613601, 3),
    (6, 5): (30, 2661121, 2),
}

D0_GENUS_TABLE = {2: 0, 3: 0, 5: 0, 7: 0, 11: 1, 13: 0, 17: 1, 19: 1, 23: 2, 29: 2, 31: 2,
                  37: 2, 41: 3, 43: 3, 47: 4, 53: 4}

E_COLUMN = {  # x -> printed E(x)
    1 * 10**10: 1.579642126e7,
    2 * 10**10: 2.968054227e7,
    3 * 10**10: 4.296235691e7,
    4 * 10**10: 5.587447496e7,
    5 * 10**10: 6.852175590e7,
    6 * 10**10: 8.096382889e7,
    7 * 10**10: 9.323905289e7,
    8 * 10**10: 1.053741048e8,
    9 * 10**10: 1.173885689e8,
    10**11: 1.292974079e8,
}
E_LI_1E11 = 129297407.4


@dataclass
class TableRow:
    table: str
    key: object
    expected: object
    computed: object
    ok: bool


def _one_unit(printed: float, digits: int = 10) -> float:
    """One unit in the last of ``digits`` significant digits of ``printed``."""
    from math import floor, log10

    return 10 ** (floor(log10(abs(printed))) - digits + 1)


def report_tables(prime_product_bound: int = 10**9, workers: int = 1, skip: tuple = ()) -> list[TableRow]:
    """Regenerate the regular-cover table, the D0(p) genus table and the E(x) column."""
    from .bateman_horn import BHJob, PolyFamily, bh_constant, bh_estimate
    from .constructions import modular_dessin
    from .dessin import regular_cover_genus_general
    from .enumerate import enumerate_type_degree11

    rows: list[TableRow] = []
    if "covers" not in skip:
        groups = enumerate_type_degree11(workers)
        for split, (r, g, count) in REGULAR_COVERS.items():
            ds = groups[split]
            orders = {d.group_order() for d in ds}
            rr = {d.z.order() for d in ds}
            gen = regular_cover_genus_general(r)
            ok = len(ds) == count and rr == {r} and gen == g and orders == {2 * A11_ORDER}
            rows.append(TableRow("regular covers", split, (r, g, count), (sorted(rr), gen, len(ds)), ok))
    if "d0" not in skip:
        for p, g in D0_GENUS_TABLE.items():
            got = modular_dessin(p).genus
            rows.append(TableRow("D0 genus", p, g, got, got == g))
    if "estimates" not in skip:
        fam = PolyFamily.parse(["t", "1+t+t^2"])
        C = bh_constant(fam, prime_product_bound)
        for x, e in E_COLUMN.items():
            got = bh_estimate(BHJob(fam, x, constant=C))
            rows.append(TableRow("E(x)", x, e, got, abs(got - e) <= _one_unit(e)))
        li = bh_estimate(BHJob(fam, 10**11, li_variant=True, constant=C))
        rows.append(TableRow("E(x) Li", 10**11, E_LI_1E11, li, abs(li - E_LI_1E11) <= 1.0))
    return rows
