import pytest

from gtoric.bounds import BoundsParseError, BoundsTable, load_bounds


def test_builtin_records():
    b = BoundsTable.builtin()
    assert b.get(8, 49, 12) == 28
    assert b.get(8, 49, 26) == 15
    assert b.get(7, 36, 19) == 12
    assert b.get(4, 9, 3) is None
    assert not b.ingested()
    # the uncatalogued [36,19,12] code is never a champion
    assert b.is_champion(7, 36, 19, 12) is False
    assert b.is_champion(8, 49, 13, 28) is True
    assert b.is_champion(5, 16, 4, 9) is None


def test_prior_edition():
    b = BoundsTable.builtin("prior")
    assert b.get(8, 49, 12) == 28
    assert b.get(8, 49, 13) == 26
    assert b.get(8, 49, 25) == 15
    with pytest.raises(ValueError):
        BoundsTable.builtin("latest")


def test_load_and_override(tmp_path):
    p = tmp_path / "b.csv"
    p.write_text("# q,n,k,d\n8,49,12,28\n\n4,9,3,6\n8,49,13,26\n")
    b = load_bounds(p)
    assert b.get(8, 49, 12) == 28
    assert b.get(4, 9, 3) == 6
    assert b.get(8, 49, 13) == 26
    assert b.provenance[(8, 49, 13)] == "ingested"
    assert b.ingested()


def test_empty_file_keeps_builtin(tmp_path):
    p = tmp_path / "b.csv"
    p.write_text("")
    assert load_bounds(p).entries == BoundsTable.builtin().entries


@pytest.mark.parametrize("line", ["8,49,0,5", "8,49,12", "8,49,x,5", "8,49,50,3", "1,4,2,2"])
def test_malformed_lines(tmp_path, line):
    p = tmp_path / "b.csv"
    p.write_text("# header\n" + line + "\n")
    with pytest.raises(BoundsParseError, match=":2:"):
        load_bounds(p)
