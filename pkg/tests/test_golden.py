import hashlib
from importlib import resources

import pytest

import oracles
from dessins import golden
from dessins.golden import (
    GOLDEN_SETS,
    ChecksumMismatch,
    load_set,
    manifest,
    report_tables,
    roundtrip_text,
    verify_appendix,
)

NAMES = [gs.name for gs in GOLDEN_SETS]


def test_manifest_covers_every_dataset():
    files = {f.name for f in resources.files("dessins.data").iterdir() if f.name.endswith(".dsn")}
    assert set(manifest()) == files == {f"{n}.dsn" for n in NAMES}


@pytest.mark.parametrize("name", NAMES)
def test_checksums(name):
    raw = resources.files("dessins.data").joinpath(f"{name}.dsn").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == manifest()[f"{name}.dsn"]


def test_tampering_detected(monkeypatch):
    real = manifest()
    monkeypatch.setattr(golden, "manifest", lambda: {**real, "klein11.dsn": "0" * 64})
    with pytest.raises(ChecksumMismatch):
        load_set("klein11")
    assert len(load_set("klein11", verify_checksum=False)) == 6


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip(name):
    body, again = roundtrip_text(name)
    assert body == again


@pytest.mark.parametrize("name,count,degree", [
    ("klein11", 6, 11), ("psl3_3_13", 4, 13), ("psl2_16_17", 2, 17), ("psl3_5_31", 10, 31),
    ("psl5_2_31", 6, 31), ("agl5_2_32", 6, 32), ("psl3_8_73", 8, 73),
])
def test_set_sizes(name, count, degree):
    ds = load_set(name)
    assert len(ds) == count
    assert {d.degree for d in ds} == {degree}


@pytest.mark.parametrize("name", NAMES)
def test_genus_from_counts(name):
    gs = next(g for g in GOLDEN_SETS if g.name == name)
    for d in load_set(name):
        x, y, z = (list(p.images) for p in (d.x, d.y, d.z))
        chi = sum(len(oracles.cycle_lengths(p)) for p in (x, y, z)) - d.degree
        assert 2 - 2 * gs.genus == chi
        assert tuple(oracles.mul(oracles.mul(x, y), z)) == tuple(range(d.degree))


@pytest.mark.parametrize("name,order", [("psl3_3_13", 5616), ("psl2_16_17", 4080)])
def test_orders_by_closure(name, order):
    for d in load_set(name):
        assert len(oracles.closure([list(d.x.images), list(d.y.images)])) == order


def test_verify_appendix():
    rep = verify_appendix()
    assert rep.ok, [(r.id, r.checks, r.notes) for r in rep.failures()]
    assert len(rep.records) == 42
    d = rep.as_dict()
    assert d["ok"] and len(d["records"]) == 42


def test_verify_appendix_subset():
    rep = verify_appendix(["klein11"])
    assert len(rep.records) == 6
    orders = [r for r in rep.records if r.checks["group order"]]
    assert len(orders) == 6


def test_report_tables_without_sieve():
    rows = report_tables(skip=("estimates",))
    assert rows and all(r.ok for r in rows)
    assert {r.table for r in rows} == {"regular covers", "D0 genus"}
    assert sum(1 for r in rows if r.table == "D0 genus") == 16
