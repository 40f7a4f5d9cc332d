"""Smoke test for the symext_py extension.

Build and install first:  pip install --no-build-isolation -e crates/py
Then run:                  python3 python/smoke_test.py   (or pytest python/)
"""

import json

import symext_py as sx


def test_partition_type():
    lam = sx.Partition("4,2^3,1")
    assert lam.parts == [4, 2, 2, 2, 1]
    assert lam.size == 11 and lam.height == 5 and len(lam) == 5
    assert lam == sx.Partition([4, 2, 2, 2, 1]) == sx.Partition.parse("(4,2,2,2,1)")
    assert sx.Partition(lam.to_text()) == lam
    assert lam.transpose().transpose() == lam
    assert str(sx.Partition("-")) == "()"
    assert len({lam, sx.Partition([4, 2, 2, 2, 1])}) == 1
    try:
        sx.Partition([1, 2])
    except ValueError:
        pass
    else:
        raise AssertionError("non-decreasing parts accepted")


def test_block_data():
    core, w = sx.core_and_weight("4,2,1", 3)
    assert core.parts == [1] and w == 2
    a = sx.analyze([4, 2, 1], 3)
    assert (a["signatures"][0]["eps"], a["signatures"][0]["phi"]) == (2, 1)
    assert a["weight"] == 2 and a["regularization"] == [4, 2, 1]
    assert len(sx.quotient("4,2,1", 3)) == 3
    block = sx.enumerate_block("1", 1, 3)
    assert sorted(b.parts for b in block) == [[1, 1, 1, 1], [2, 2], [4]]


def test_crystal_and_bijections():
    lam = "5,3,1"
    for i in range(3):
        up = sx.f_tilde(lam, 3, i)
        if up is not None:
            assert sx.e_tilde(up, 3, i) == sx.Partition(lam)
    assert sx.e_tilde("1", 3, 1) is None
    m = sx.mullineux(lam, 3)
    assert sx.mullineux(m, 3) == sx.Partition(lam)
    assert sx.regularize("6,1^5", 5).parts == [6, 2, 1, 1, 1]
    assert sx.specht_irreducible("9,4,2,2,1^5", 3)
    assert not sx.specht_irreducible("2,1", 3)


def test_certificates():
    c = sx.certify("2,1", 3)
    assert c.certified and c.terminal == "T-WEIGHT" and c.validate()
    c = sx.certify("10,5,4,3,1,1", 3, rules=["t-specht", "t-small", "r-trick1"])
    assert c.terminal == "T-SPECHT"
    d = c.to_dict()
    assert d["terminal"]["params"]["nu"] == [9, 4, 2, 2, 1, 1, 1, 1, 1]
    assert sx.validate(c.to_json())
    d["terminal"]["params"]["eps"] = 1
    assert not sx.validate(json.dumps(d))
    assert sx.Certificate.from_json(json.dumps(d)).issues()
    assert not sx.certify("4,2,1", 3, rules=["r-reflect"]).certified
    try:
        sx.certify("2,1", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("p = 2 accepted")


def test_tables_survey_zigzag():
    rep = sx.verify_tables(7)
    assert (rep["table1"]["matched"], rep["table1"]["expected"]) == (66, 66)
    assert (rep["table2"]["matched"], rep["table2"]["expected"]) == (4, 4)
    s = sx.survey(3, 12)
    assert s["total"] == s["certified"] == len(sx.regular_partitions_of(12, 3))
    assert sx.zigzag_dim(3, 1, 1)["total"] == 6
    assert "T-SPECHT" in sx.RULES


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok  {t.__name__}")
    print(f"{len(tests)} smoke tests passed")
