import pytest

from lmesflow import build_network, enhanced_solve, oracle_max_flow, pathological, verify_flow
from lmesflow.corpus import random_corpus, wide_instance
from lmesflow.enhanced import EnhancedSolver, classify_arc, ladder_class, push_amount
from lmesflow.oracle import cut_capacity
from lmesflow.params import Scale, derive_params

# k = 4, delta = 16, ehat = 9 gives D = 8


@pytest.mark.parametrize("r, r_rev, amount, line", [
    (3, 40, 3, 4),
    (30, 2, 8, 5),
    (12, 30, 8, 6),
    (20, 10, 5, 7),
    (14, 14, 6, 8),
    (16, 16, 8, 8),
])
def test_push_ladder(r, r_rev, amount, line):
    assert push_amount(r, r_rev, 9, 16, 4) == (amount, line)


def test_ladder_keeps_smaller_residual_a_multiple_of_step():
    # k = 4, delta = 16, ehat = 9: every pair that satisfies the rounding
    # invariant before the push still satisfies it afterwards
    step = 4
    for r in range(1, 60):
        for r_rev in range(60):
            if r != r_rev and min(r, r_rev) % step:
                continue
            if r > r_rev and (r - r_rev) % 2:
                continue
            amount, _ = push_amount(r, r_rev, 9, 16, 4)
            a, b = r - amount, r_rev + amount
            assert 0 < amount <= r
            assert a == b or min(a, b) % step == 0, (r, r_rev, amount)


def test_ladder_medium_when_ehat_small():
    # ehat = 6 < delta/2: D is the multiple of delta/k below ehat
    assert push_amount(40, 0, 6, 16, 4) == (4, 5)


def test_ladder_classes():
    assert ladder_class(3, 4, 16, 3) == "saturating"
    assert ladder_class(8, 5, 16, 30) == "large"
    assert ladder_class(4, 5, 16, 30) == "medium"
    assert ladder_class(5, 7, 16, 20) == "other"


def test_arc_classes_at_boundaries():
    sc = Scale(derive_params(4, 4), 20)
    assert classify_arc(sc.two_m, sc) == "large"
    assert classify_arc(sc.two_m - 1, sc) == "medium"
    assert classify_arc(sc.eps5, sc) == "medium"
    assert classify_arc(sc.eps5 - 1, sc) == "small"


def test_initialization_rounds_residuals_and_tops_up():
    net = build_network(4, [(0, 1, 6), (1, 2, 10), (2, 1, 6), (2, 3, 30)], 0, 3)
    solver = EnhancedSolver(net, 4)
    assert solver.initialize()
    st, sc = solver.state, solver.scale
    for p in range(0, net.m, 2):
        r, rr = st.residual(p), st.residual(p ^ 1)
        if r != rr:
            assert min(r, rr) % sc.step == 0
    for v in (1, 2):
        assert st.e[v] >= sc.eps
        assert st.e[v] <= sc.delta


def test_single_arc(single_arc):
    res = enhanced_solve(single_arc, 4, audit=True)
    assert res.value == 7
    assert not res.counters.violations


def test_no_flow_possible():
    net = build_network(3, [(1, 2, 5)], 0, 2)
    assert enhanced_solve(net).value == 0


@pytest.mark.parametrize("alpha", [10, 40])
def test_pathological_value(alpha):
    res = enhanced_solve(pathological(4, alpha), 4, audit=True)
    assert res.value == 4 ** alpha + 1
    assert not res.counters.violations


def test_contraction_and_expansion_preserve_value():
    # a long chain of parallel two-way arcs makes bi-abundant pairs early
    arcs = []
    for i in range(1, 6):
        arcs += [(i, i + 1, 1000), (i + 1, i, 1000)]
    arcs += [(0, 1, 3), (6, 7, 5)]
    net = build_network(8, arcs, 0, 7)
    res = enhanced_solve(net, 4, audit=True)
    assert res.counters.contractions >= 1
    assert res.value == oracle_max_flow(net)[1] == 3
    assert verify_flow(net, res.flow).ok
    assert cut_capacity(net, res.source_side) == res.value
    assert not res.counters.violations


@pytest.mark.parametrize("k", [4, 8, 16])
def test_matches_oracle_with_audits(k):
    for name, net in random_corpus(40, seed=200 + k):
        res = enhanced_solve(net, k, audit=True)
        assert res.value == oracle_max_flow(net)[1], name
        assert verify_flow(net, res.flow).ok
        assert cut_capacity(net, res.source_side) == res.value
        assert not res.counters.violations, (name, res.counters.violations[:3])


def test_gamma2_rule_validated(single_arc):
    with pytest.raises(ValueError):
        enhanced_solve(single_arc, 4, gamma2_rule="other")


def test_printed_gamma2_rule_still_solves():
    for name, net in random_corpus(30, seed=9):
        res = enhanced_solve(net, 4, gamma2_rule="printed")
        assert res.value == oracle_max_flow(net)[1], name


@pytest.mark.parametrize("seed, counter", [(12, "frf_stranded"), (14, "jumps"), (26, "rescues")])
def test_wide_capacity_range(seed, counter):
    # capacities from 1 to 4**30 reach the stranded-node, rescue and jump paths
    net = wide_instance(seed)
    value = oracle_max_flow(net)[1]
    res = enhanced_solve(net, 4)
    assert getattr(res.counters, counter) > 0
    for r in (res, enhanced_solve(net, 4, jumps=False)):
        assert r.value == value
        assert verify_flow(net, r.flow).ok
        assert cut_capacity(net, r.source_side) == value
