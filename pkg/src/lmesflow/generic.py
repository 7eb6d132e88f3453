"""Generic push-relabel with FIFO selection and the current-arc rule.

This is the baseline the scaling solvers are measured against, and it holds
the pieces they share: initialization, current-arc scanning, the +1 relabel
and the validity audit.
"""

from collections import deque

from .instrumentation import Counters, Event, record
from .network import SolverState, finish


def gpr_initialize(net, shift=0):
    """Saturate every arc out of s and set d(s) = n."""
    state = SolverState(net, shift)
    s = net.source
    for a in net.adjacency[s]:
        r = state.residual(a)
        if r > 0:
            state.push(a, r)
    state.d[s] = net.n
    return state


def find_admissible(state, i):
    """First arc from the cursor on with r > 0 and d(i) = d(j) + 1.

    Leaves the cursor on the returned arc.  Returns None at the end of the list
    without wrapping around; only a relabel resets the cursor.
    """
    net = state.net
    adj = state.adj[i]
    d = state.d
    target = d[i] - 1
    rep = state.rep
    idx = state.current[i]
    while idx < len(adj):
        a = adj[idx]
        j = rep[net.head[a]]
        if d[j] == target and j != i and state.residual(a) > 0:
            state.current[i] = idx
            return a
        idx += 1
    state.current[i] = idx
    return None


def has_admissible(state, i):
    net = state.net
    rep = state.rep
    d = state.d
    for a in state.adj[i]:
        j = rep[net.head[a]]
        if j != i and d[i] == d[j] + 1 and state.residual(a) > 0:
            return True
    return False


def gpr_relabel(state, i, counters=None):
    """d(i) += 1 and reset the current arc."""
    if has_admissible(state, i):
        raise AssertionError(f"relabel of node {i} while it has an admissible arc")
    state.d[i] += 1
    state.current[i] = 0
    if counters is not None:
        record(counters, Event("relabel", i))
    return state


def validity_violations(state, arcs=None):
    """Arcs with r > 0 and d(tail) > d(head) + 1 (Invariant 1), d(t) != 0 aside."""
    net = state.net
    rep = state.rep
    d = state.d
    bad = []
    for a in range(net.m) if arcs is None else arcs:
        i, j = rep[net.tail[a]], rep[net.head[a]]
        if i != j and state.residual(a) > 0 and d[i] > d[j] + 1:
            bad.append(a)
    return bad


def audit_validity(state, counters, arcs=None, where=""):
    if state.d[state.rep[state.net.sink]] != 0:
        counters.violation("invariant1", f"d(t) = {state.d[state.net.sink]} {where}")
    for a in validity_violations(state, arcs):
        net = state.net
        counters.violation(
            "invariant1",
            f"arc {net.tail[a]}->{net.head[a]} d={state.d[state.rep[net.tail[a]]]},"
            f"{state.d[state.rep[net.head[a]]]} {where}",
        )


def local_arcs(state, node):
    """Arcs whose validity can change when ``node`` is relabeled."""
    return state.adj[node]


def gpr_solve(net, audit=False, counters=None):
    """Run generic push-relabel to completion; returns a SolveResult."""
    counters = counters or Counters(n=net.n, m=net.m, audit=audit)
    counters.audit = audit
    state = gpr_initialize(net)
    s, t, n = net.source, net.sink, net.n
    e, d = state.e, state.d
    queue = deque(v for v in range(n) if v not in (s, t) and e[v] > 0)
    queued = [False] * n
    for v in queue:
        queued[v] = True
    if audit:
        audit_validity(state, counters, where="init")
    while queue:
        i = queue.popleft()
        queued[i] = False
        while e[i] > 0:
            a = find_admissible(state, i)
            if a is None:
                gpr_relabel(state, i, counters)
                if audit:
                    audit_validity(state, counters, local_arcs(state, i), "after relabel")
                    if d[i] > n + 1:
                        counters.violation("label_bound", f"d({i}) = {d[i]} > n+1")
                queue.append(i)
                queued[i] = True
                break
            r = state.residual(a)
            delta = min(e[i], r)
            j = net.head[a]
            state.push(a, delta)
            record(counters, Event("push", ("saturating" if delta == r else "other", delta)))
            if audit:
                audit_validity(state, counters, (a ^ 1,), "after push")
            if j not in (s, t) and not queued[j] and e[j] > 0:
                queue.append(j)
                queued[j] = True
    if audit:
        audit_validity(state, counters, where="final")
    return finish(net, state, counters)
