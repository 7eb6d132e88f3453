import pytest

from lmesflow import build_network, gpr_solve, oracle_max_flow, pathological, verify_flow
from lmesflow.corpus import random_corpus
from lmesflow.generic import find_admissible, gpr_initialize, gpr_relabel, validity_violations


def test_initialize_saturates_source_arcs():
    net = build_network(4, [(0, 1, 3), (0, 2, 2)], 0, 3)
    st = gpr_initialize(net)
    assert st.e[1] == 3 and st.e[2] == 2
    assert st.d[0] == 4 and st.d[1:] == [0, 0, 0]


def test_initialize_without_source_arcs():
    net = build_network(3, [(1, 2, 4)], 0, 2)
    st = gpr_initialize(net)
    assert st.e == [0, 0, 0]
    assert gpr_solve(net).value == 0


def test_initialize_path_has_unit_excess():
    net = build_network(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
    assert gpr_initialize(net).e[1] == 1


def test_find_admissible_uses_cursor_without_wraparound():
    net = build_network(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
    st = gpr_initialize(net)
    st.d[1] = 1
    a = find_admissible(st, 1)
    assert net.head[a] == 2
    assert st.adj[1][st.current[1]] == a
    # asking again leaves the cursor where it is
    assert find_admissible(st, 1) == a
    st.current[1] = len(st.adj[1])
    assert find_admissible(st, 1) is None


def test_find_admissible_skips_saturated_arcs():
    net = build_network(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
    st = gpr_initialize(net)
    st.d[1] = 1
    a = net.arcs_between(1, 2)[0]
    st.push(a, 1)
    assert find_admissible(st, 1) is None


def test_relabel_increments_label():
    net = build_network(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
    st = gpr_initialize(net)
    st.d[1] = 3
    gpr_relabel(st, 1)
    assert st.d[1] == 4 and st.current[1] == 0


def test_relabel_with_admissible_arc_is_refused():
    net = build_network(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
    st = gpr_initialize(net)
    st.d[1] = 1
    with pytest.raises(AssertionError):
        gpr_relabel(st, 1)


def test_node_above_n_returns_excess_to_source():
    # 1 cannot reach t, so its excess goes back to s through the helper arc
    net = build_network(3, [(0, 1, 5), (2, 1, 1)], 0, 2)
    res = gpr_solve(net, audit=True)
    assert res.value == 0
    assert res.state.e[1] == 0
    assert not res.counters.violations


def test_single_arc_and_pathological(single_arc):
    assert gpr_solve(single_arc).value == 7
    assert gpr_solve(pathological(4, 5)).value == 4 ** 5 + 1


def test_generic_matches_oracle_on_random_instances():
    for name, net in random_corpus(200, seed=77):
        res = gpr_solve(net, audit=name.endswith("0"))
        assert res.value == oracle_max_flow(net)[1], name
        assert verify_flow(net, res.flow).ok
        assert not validity_violations(res.state)
        assert not res.counters.violations
