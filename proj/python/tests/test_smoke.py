import pytest

import qbfunc


def test_a3_explicit_bfunction():
    s = qbfunc.Session("A", 3)
    assert s.tag == "A3_i2"
    assert s.r == 2
    res = s.bfunction(gauge="explicit")
    assert res["theorem_ok"] and res["classical_ok"] and res["constant_ok"]
    assert res["classical"] == "(s+1)(s+2)"
    assert res["holdouts"] == 1
    assert sorted(res["samples"]) == [0, 1, 2, 3]


def test_samples_match_closed_form_with_unit_constant():
    s = qbfunc.Session("D", 4, i0=1)
    res = s.bfunction(gauge="explicit")
    assert res["constant"] in ("1", "-1")
    for k, b in res["samples"].items():
        want = qbfunc.theorem_product("D", 4, i0=1, s=k)
        assert b.lstrip("-") == want.lstrip("-")


def test_b3_constant():
    res = qbfunc.Session("B", 3).bfunction(gauge="explicit")
    assert res["theorem_ok"]
    assert res["classical"] == "(s+1)(s+5/2)"


def test_verify_subset():
    out = qbfunc.Session("C", 3).verify(checks=["gram", "confluence"])
    assert set(out) == {"gram", "confluence"}
    assert all(v["pass"] for v in out.values())


def test_unknown_check_and_family():
    with pytest.raises(ValueError):
        qbfunc.Session("A", 3).verify(checks=["nonsense"])
    with pytest.raises(ValueError):
        qbfunc.Session("F", 4)


def test_e7_implied_rank():
    assert qbfunc.theorem_product("E7", s=0) == qbfunc.theorem_product("E", 7, s=0)


def test_seeded_derivation_is_deterministic():
    a = qbfunc.Session("C", 3, seed=5)
    b = qbfunc.Session("C", 3, seed=5)
    assert a.serialize() == b.serialize()
    assert a.table_hash == b.table_hash
    assert a.level == "rank_complete"
    assert "gram" in qbfunc.check_names()
