from lmesflow.selection import LARGE, MEDIUM, NONE, SelectionStructures


def test_large_preferred_at_lowest_label():
    sel = SelectionStructures(10, 8)
    sel.update(1, LARGE, 5)
    sel.update(2, LARGE, 2)
    sel.update(3, MEDIUM, 7)
    assert sel.select() == 2
    assert sel.MinL == 2


def test_medium_at_highest_label_when_no_large():
    sel = SelectionStructures(10, 8)
    sel.update(4, MEDIUM, 3)
    sel.update(5, MEDIUM, 1)
    assert sel.select() == 4


def test_empty_structure_selects_nothing():
    sel = SelectionStructures(4, 4)
    assert sel.select() is None


def test_new_large_level_spliced_below_min():
    sel = SelectionStructures(10, 8)
    sel.update(1, LARGE, 6)
    sel.update(2, LARGE, 4)
    assert sel.MinL == 4 and sel.NextL[4] == 6
    sel.update(2, NONE, 4)
    assert sel.MinL == 6 and sel.select() == 1


def test_maxml_moves_down_when_top_level_empties():
    sel = SelectionStructures(10, 8)
    sel.update(1, MEDIUM, 6)
    sel.update(2, MEDIUM, 2)
    assert sel.MaxML == 6
    sel.update(1, NONE, 6)
    assert sel.MaxML == 2 and sel.select() == 2


def test_rebuild_and_audit():
    sel = SelectionStructures(10, 4)
    entries = [(1, LARGE, 3), (2, MEDIUM, 9), (3, NONE, 0), (4, LARGE, 1)]
    sel.rebuild(entries)
    expected = {v: (kind, d) for v, kind, d in entries if kind != NONE}
    assert sel.audit(expected) == []
    assert sel.select() == 4
    assert sel.audit({1: (LARGE, 3)})      # a mismatch is reported


def test_oldest_node_of_a_level_first():
    sel = SelectionStructures(10, 4)
    sel.update(7, LARGE, 1)
    sel.update(3, LARGE, 1)
    assert sel.select() == 7
    assert sel.members(LARGE, 1) == [7, 3]
