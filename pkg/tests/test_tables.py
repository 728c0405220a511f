import pytest

from graphcx import homology as ho
from graphcx import tables as tb


@pytest.mark.parametrize("text", ["0", "Z", "Z^20", "Z_3", "Z^42 + (Z_3)^8", "Z^25 + (Z_3)^10"])
def test_parse_group_round_trip(text):
    assert str(tb.parse_group(text)) == text


def test_parse_group_rejects_garbage():
    with pytest.raises(ValueError):
        tb.parse_group("Q^2")


def test_embedded_reference_parses():
    exp = tb.load_expected()
    for name in "2345":
        for row in exp[name]["rows"].values():
            for cell in row.values():
                assert isinstance(tb.parse_group(cell), ho.HomologyGroup)


def assert_all_match(res):
    assert res.ok
    assert all(r.status == "match" for r in res.rows), [(r.key, r.status) for r in res.rows]


def test_table1():
    assert_all_match(tb.compute_table("1"))


def test_table2_small():
    assert_all_match(tb.compute_table("2", [4, 5, 6]))


def test_table3():
    res = tb.compute_table("3")
    assert_all_match(res)
    assert tb.vanishing_violations(res) == []
    row7 = next(r for r in res.rows if r.key == "7")
    assert row7.computed[1] == "Z_3"
    assert any("no p-torsion" in n for n in row7.notes)


def test_table4():
    res = tb.compute_table("4")
    assert_all_match(res)
    assert any("= 36" in n for n in res.rows[-1].notes)


def test_table5():
    res = tb.compute_table("5")
    assert_all_match(res)
    assert next(r for r in res.rows if r.key == "5").computed[2] == "Z_3"


def test_table6():
    res = tb.compute_table("6")
    assert_all_match(res)
    g3 = next(r for r in res.rows if r.key == "G_3")
    assert any("not integral" in n for n in g3.notes)


@pytest.mark.parametrize("name,n", [("3", 10), ("4", 7), ("5", 7), ("2", 8)])
def test_stretch_rows_refused(name, n):
    with pytest.raises(tb.Infeasible):
        tb.compute_table(name, [n])


@pytest.mark.parametrize("name,n", [("4", 3), ("2", 2), ("1", 2)])
def test_rows_outside_range_refused(name, n):
    with pytest.raises(tb.Infeasible):
        tb.compute_table(name, [n])


def test_unknown_table():
    with pytest.raises(tb.Infeasible):
        tb.compute_table("9")


def test_connectivity_bounds():
    assert tb.connectivity_bound("2", 7) == 1
    assert tb.connectivity_bound("3", 8) == 1
    assert tb.connectivity_bound("4", 6) is None
    res = tb.compute_table("2", [4, 5, 6])
    assert tb.vanishing_violations(res) == []


def test_vanishing_violation_detected():
    fake = tb.TableResult("3", "", [0], [tb.Row("8", {0: "Z"}, {}, "no-reference")])
    assert tb.vanishing_violations(fake) == [("8", 0, "Z")]


def test_provenance_in_dict():
    d = tb.compute_table("3", [7]).as_dict()
    cell = d["rows"][0]["cells"]["1"]
    assert cell == {"computed": "Z_3", "expected": "Z_3",
                    "provenance": {"computed": "computed", "expected": "embedded"}}


def test_parallel_matches_serial():
    a = tb.compute_table("3", [5, 6, 7, 8], jobs=1).as_dict()
    b = tb.compute_table("3", [5, 6, 7, 8], jobs=2).as_dict()
    assert a == b


@pytest.mark.slow
def test_table5_n6_stretch():
    row = tb.compute_table("5", [6]).rows[0]
    assert row.status == "match"
    assert row.computed == {3: "Z^25 + (Z_3)^10", 4: "Z^210"}
