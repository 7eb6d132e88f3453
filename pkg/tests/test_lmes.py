import pytest

from lmesflow import build_network, lmes_solve, oracle_max_flow, pathological, verify_flow
from lmesflow.corpus import random_corpus
from lmesflow.generic import gpr_initialize
from lmesflow.lmes import default_k, excess_class, initial_delta, lmes_push, phase_bound, push_class
from lmesflow.selection import LARGE, MEDIUM, NONE


def two_hop(r, e_i, e_j):
    """s -> i -> j -> t with e(i), e(j) and r(i, j) set directly; d(i) = 1, d(j) = 0."""
    net = build_network(4, [(0, 1, 100), (1, 2, r), (2, 3, 100)], 0, 3)
    st = gpr_initialize(net)
    st.e[1], st.e[2] = e_i, e_j
    st.d[1] = 1
    return net, st, net.arcs_between(1, 2)[0]


@pytest.mark.parametrize("r, e_i, e_j, delta, expected, cls", [
    (10, 7, 4, 8, 4, "large"),       # bounded by delta - e(j)
    (10, 3, 6, 8, 2, "medium"),      # delta - e(j) = 2 = delta/4
    (3, 8, 0, 8, 3, "saturating"),   # bounded by r
    (8, 8, 0, 8, 8, "saturating"),   # delta units, i emptied
    (20, 8, 0, 8, 8, "large"),
])
def test_push_amount(r, e_i, e_j, delta, expected, cls):
    net, st, a = two_hop(r, e_i, e_j)
    assert lmes_push(st, a, delta, 4) == expected
    assert st.e[1] == e_i - expected
    assert push_class(expected, r, delta, 4) == cls


def test_push_on_inadmissible_arc_raises():
    net, st, a = two_hop(5, 4, 0)
    st.d[1] = 0
    with pytest.raises(AssertionError):
        lmes_push(st, a, 8, 2)


def test_excess_classes():
    assert excess_class(4, 8, 4) == LARGE
    assert excess_class(2, 8, 4) == MEDIUM
    assert excess_class(1, 8, 4) == NONE


def test_scaling_helpers():
    assert initial_delta(9) == 16
    assert initial_delta(16) == 32
    assert phase_bound(9, 2) == 6           # ceil(log2 18) + 1
    assert default_k(1) == 2
    assert default_k(1024) == 8             # 2 + 10 / log2(10) = 5.01 -> 8


def test_single_arc(single_arc):
    net = build_network(2, [(0, 1, 9)], 0, 1)
    res = lmes_solve(net, 2, audit=True)
    assert res.value == 9
    assert res.counters.phases <= 4 + 2
    assert lmes_solve(single_arc).value == 7


def test_pathological_value_and_linear_phases():
    phases = []
    for alpha in (5, 10):
        res = lmes_solve(pathological(4, alpha), 4)
        assert res.value == 4 ** alpha + 1
        phases.append(res.counters.phases)
    assert phases[1] >= phases[0] + 5


@pytest.mark.parametrize("k", [2, 4, 8])
def test_matches_oracle_with_audits(k):
    for name, net in random_corpus(70, seed=100 + k):
        res = lmes_solve(net, k, audit=True)
        assert res.value == oracle_max_flow(net)[1], name
        assert verify_flow(net, res.flow).ok
        assert not res.counters.violations, (name, res.counters.violations[:3])


@pytest.mark.parametrize("k", [0, 3, 1])
def test_bad_k_rejected(k, single_arc):
    with pytest.raises(ValueError):
        lmes_solve(single_arc, k)
