import pytest

import permseq


def test_apply_round_trip_and_big_ints():
    p = permseq.Perm("pabcd:2,4,3,3")
    assert p(3) == 4 and p(4) == 3
    x = 10**40 + 7
    assert p.apply_inv(p.apply(x)) == x
    assert p.label == "P(2,4,3,3)"
    assert p.default_m_floor == 20


def test_collatz_cycle_and_escape():
    collatz = permseq.Perm("pabcd:1,3,2,2", inverse=True)
    assert collatz(27) == 20
    out = collatz.run(44)
    assert out["outcome"] == "cycle"
    assert out["cycle"]["length"] == 12
    assert out["cycle"]["elements"][:3] == [44, 66, 99]
    assert collatz.run(8)["outcome"] == "escaped"


def test_census_2433():
    rep = permseq.Perm("pabcd:2,4,3,3").census(10**5)
    keys = [(c["min"], c["max"], c["length"]) for c in rep["cycles"]]
    assert (645, 1612, 31) in keys
    assert len(keys) == 13  # twelve plus the fixed point 0


def test_primecomp():
    pc = permseq.Perm("primecomp")
    assert pc(14) == 17
    assert pc.run(18, escape=10**6, m_floor=None)["cycle"]["length"] == 22


def test_ccsets():
    assert permseq.ccset_validate([(2, 0), (4, 1), (8, 3), (16, 7), (16, 15)])["valid"]
    bad = permseq.ccset_validate([(2, 0), (4, 1)])
    assert not bad["valid"] and bad["density_sum"] == "3/4" and bad["witness"] == 3
    assert permseq.verify("fafc:10,8,5,9,9,3")["valid"]


def test_bounds():
    assert permseq.l_floor((1, 3, 2, 2), 10**6) == 127
    pairs = [(p, q) for p, q, _ in permseq.convergents((2, 4, 3, 3), 14000)]
    assert (32927, 13481) in pairs
    row = permseq.crossovers((1, 3, 2, 2), 10**6, 1)
    assert row["l_max"] == 126 and row["l1"] == 10 and row["l2"] == 16
    assert permseq.candidates((1, 3, 2, 2), 10**6, 1, 900) == [(389, 276), (778, 552), (957, 679), (1167, 828)]


def test_tables():
    assert "floor" in permseq.table_ids()
    t = permseq.table("floor", check=True, format="csv")
    assert t["mismatches"] == 0 and t["discrepancies"] == 1
    assert t["text"].startswith("log10 X0")


def test_errors():
    with pytest.raises(permseq.ParseError):
        permseq.Perm("pabcd:1,3,2")
    with pytest.raises(permseq.ParameterError):
        permseq.Perm("pabcd:2,3,2,2")
    with pytest.raises(permseq.Error):
        permseq.table("nope")
