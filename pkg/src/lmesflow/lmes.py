"""Large-Medium Excess Scaling push-relabel.

Each phase keeps ``0 <= e(i) <= delta`` at every internal node and pushes only
from nodes with medium (``delta/k <= e < delta/2``) or large (``e >= delta/2``)
excess: the large node of lowest label first, otherwise the medium node of
highest label.  A phase ends when every internal excess is below ``delta/k``;
``delta`` is then divided by k.  Everything runs on plain integers.
"""

import math

from .generic import audit_validity, find_admissible, gpr_initialize, gpr_relabel
from .instrumentation import Counters, Event, record
from .network import finish
from .quantity import is_power_of_two
from .selection import LARGE, MEDIUM, NONE, SelectionStructures

AUDIT_EVERY = 1000


def default_k(U):
    """Least power of two >= 2 + log U / log log U (logs base 2)."""
    if U < 4:
        return 2
    lg = math.log2(U)
    target = 2 + lg / math.log2(lg) if lg > 1 else 2
    k = 2
    while k < target:
        k *= 2
    return k


def initial_delta(U):
    """Least power of two strictly greater than U."""
    delta = 1
    while delta <= U:
        delta *= 2
    return delta


def phase_bound(U, k):
    """ceil(log_k(2U)) + 1, computed on integers."""
    c, p = 0, 1
    while p < 2 * U:
        p *= k
        c += 1
    return c + 1


def excess_class(e, delta, k):
    if 2 * e >= delta:
        return LARGE
    if k * e >= delta:
        return MEDIUM
    return NONE


def push_class(delta_pushed, r, delta, k):
    if delta_pushed == r:
        return "saturating"
    if 2 * delta_pushed >= delta:
        return "large"
    if k * delta_pushed >= delta:
        return "medium"
    return "other"


def lmes_push(state, a, delta, k, counters=None):
    """Send min{e(i), r_ij, delta - e(j)} along admissible arc ``a``.

    ``delta - e(j)`` counts as unbounded when j is a terminal.
    """
    net = state.net
    i, j = net.tail[a], net.head[a]
    if state.d[i] != state.d[j] + 1 or state.residual(a) <= 0:
        raise AssertionError(f"push on inadmissible arc {i}->{j}")
    r = state.residual(a)
    amount = min(state.e[i], r)
    if j not in (net.source, net.sink):
        amount = min(amount, delta - state.e[j])
    state.push(a, amount)
    if counters is not None:
        record(counters, Event("push", (push_class(amount, r, delta, k), amount)))
    return amount


def lmes_select_node(sel):
    return sel.select()


def sel_update(sel, state, v, delta, k):
    """Refresh the list position of v after its excess or label changed."""
    net = state.net
    if v in (net.source, net.sink):
        return
    sel.update(v, excess_class(state.e[v], delta, k), state.d[v])


def _expected_selection(state, delta, k):
    net = state.net
    out = {}
    for v in range(net.n):
        if v not in (net.source, net.sink):
            kind = excess_class(state.e[v], delta, k)
            if kind != NONE:
                out[v] = (kind, state.d[v])
    return out


def lmes_solve(net, k=None, audit=False, counters=None):
    """Run LMES to completion; returns a SolveResult."""
    if k is None:
        k = default_k(net.U)
    if not is_power_of_two(k) or k < 2:
        raise ValueError(f"k must be a power of two >= 2, got {k}")
    counters = counters or Counters(n=net.n, m=net.m, audit=audit)
    counters.audit = audit
    state = gpr_initialize(net)
    s, t, n = net.source, net.sink, net.n
    internal = [v for v in range(n) if v not in (s, t)]
    e, d = state.e, state.d
    sel = SelectionStructures(n, 2 * n + 2)
    delta = initial_delta(net.U)
    if audit:
        audit_validity(state, counters, where="init")
    events = 0
    while delta >= 1 and any(e[v] for v in internal):
        record(counters, Event("phase_start", delta))
        sel.rebuild((v, excess_class(e[v], delta, k), d[v]) for v in internal)
        while True:
            i = sel.select()
            if i is None:
                break
            a = find_admissible(state, i)
            if a is None:
                gpr_relabel(state, i, counters)
                sel_update(sel, state, i, delta, k)
                if audit:
                    audit_validity(state, counters, net.adjacency[i], "after relabel")
                    if d[i] > n + 1:
                        counters.violation("label_bound", f"d({i}) = {d[i]} > n+1")
            else:
                j = net.head[a]
                lmes_push(state, a, delta, k, counters)
                sel_update(sel, state, i, delta, k)
                sel_update(sel, state, j, delta, k)
                if audit:
                    audit_validity(state, counters, (a ^ 1,), "after push")
                    for v in (i, j):
                        if v not in (s, t) and not 0 <= e[v] <= delta:
                            counters.violation("excess_bound", f"e({v}) = {e[v]} outside [0, {delta}]")
            events += 1
            if audit and events % AUDIT_EVERY == 0:
                for p in sel.audit(_expected_selection(state, delta, k)):
                    counters.violation("selection", p)
        if audit:
            for p in sel.audit(_expected_selection(state, delta, k)):
                counters.violation("selection", p)
            for v in internal:
                if k * e[v] >= delta:
                    counters.violation("phase_end", f"e({v}) = {e[v]} >= delta/k")
        record(counters, Event("phase_end", None))
        if audit:
            if counters.phase_flows[-1] >= 2 * n * n * delta:
                counters.violation("phase_flow", f"{counters.phase_flows[-1]} >= 2n^2 delta")
            if counters.phase_large[-1] > 4 * n * n:
                counters.violation("large_pushes", f"{counters.phase_large[-1]} > 4n^2")
        if delta < k:
            break
        delta //= k
    if audit:
        audit_validity(state, counters, where="final")
        if counters.phases > phase_bound(net.U, k):
            counters.violation("phase_count", f"{counters.phases} > {phase_bound(net.U, k)}")
    return finish(net, state, counters)
