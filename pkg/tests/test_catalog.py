import pytest

from lcsnovikov import catalog
from lcsnovikov.errors import BadParams, ParseError, UnknownEntry


def test_names():
    assert catalog.names() == ["abelian", "heisenberg", "inoue_solv", "kodaira_thurston"]


@pytest.mark.parametrize("i", range(6))
def test_expected_rows_hold(i):
    entry = catalog.standard_entries()[i]
    rep = catalog.run_expected(entry)
    assert rep.ok, [c.name + ": " + c.detail for c in rep.failures()]
    assert all(row["provenance"] in catalog.PROVENANCE for row in rep.data["rows"])


def test_other_parameters():
    rep = catalog.run_expected(catalog.inoue_solv(2, 3))
    assert rep.ok, [c.detail for c in rep.failures()]
    rep = catalog.run_expected(catalog.load("inoue_solv", ["1/2", 5]))
    assert rep.ok


def test_two_inoue_structures():
    e = catalog.inoue_solv(1, 1)
    plus, minus = e.structures["omega+"], e.structures["omega-"]
    assert plus.theta == minus.theta.scale(-1)
    assert plus.omega != minus.omega


@pytest.mark.parametrize("name,params,exc", [
    ("nope", (), UnknownEntry),
    ("inoue_solv", (0, 1), BadParams),
    ("inoue_solv", (1, 0), BadParams),
    ("inoue_solv", (1, 1, 1), BadParams),
    ("heisenberg", ("1/2",), BadParams),
    ("abelian", (0,), BadParams),
    ("kodaira_thurston", (1,), BadParams),
])
def test_load_errors(name, params, exc):
    with pytest.raises(exc):
        catalog.load(name, params)


def test_parse_entry():
    assert catalog.parse_entry("inoue_solv(1, 2)") == ("inoue_solv", ("1", "2"))
    assert catalog.parse_entry("abelian") == ("abelian", ())
    with pytest.raises(ParseError):
        catalog.parse_entry("abelian(2")


def test_labels():
    assert catalog.heisenberg(2).label == "heisenberg(2)"
    assert catalog.kodaira_thurston().label == "kodaira_thurston"
