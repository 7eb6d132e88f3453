"""Reference max-flow by shortest augmenting paths, plus flow and cut checks.

Nothing here touches solver state or distance labels: the oracle rebuilds its
own residual graph from the input arcs of a Network, so it can be used as
ground truth for every solver in the package.
"""

from collections import deque
from dataclasses import dataclass, field


@dataclass
class FlowReport:
    value: object
    capacity_violations: list = field(default_factory=list)
    conservation_violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.capacity_violations and not self.conservation_violations

    def lines(self):
        out = [f"value {self.value}"]
        for a, amount, cap in self.capacity_violations:
            out.append(f"capacity arc {a} flow {amount} cap {cap}")
        for v, imbalance in self.conservation_violations:
            out.append(f"conservation node {v} imbalance {imbalance}")
        return out


class FlowNotMaximal(ValueError):
    pass


def oracle_max_flow(net):
    """Edmonds-Karp on the input arcs; returns (flow per arc id, value)."""
    n, s, t = net.n, net.source, net.sink
    # own residual graph: to, cap, index of the reverse edge
    to, res = [], []
    graph = [[] for _ in range(n)]
    arc_edge = {}
    for a in net.input_arcs:
        i, j, u = net.tail[a], net.head[a], net.orig_cap[a]
        arc_edge[a] = len(to)
        graph[i].append(len(to))
        to.append(j)
        res.append(u)
        graph[j].append(len(to))
        to.append(i)
        res.append(0)

    value = 0
    while True:
        pred = [-1] * n
        pred[s] = -2
        queue = deque([s])
        while queue and pred[t] == -1:
            v = queue.popleft()
            for eid in graph[v]:
                w = to[eid]
                if res[eid] > 0 and pred[w] == -1:
                    pred[w] = eid
                    queue.append(w)
        if pred[t] == -1:
            break
        bottleneck = None
        v = t
        while v != s:
            eid = pred[v]
            bottleneck = res[eid] if bottleneck is None else min(bottleneck, res[eid])
            v = to[eid ^ 1]
        v = t
        while v != s:
            eid = pred[v]
            res[eid] -= bottleneck
            res[eid ^ 1] += bottleneck
            v = to[eid ^ 1]
        value += bottleneck

    flow = [0] * net.m
    for a, eid in arc_edge.items():
        sent = res[eid ^ 1]
        # sent on a's edge; opposite input arc may cancel, keep net per pair
        flow[a] += sent
    for p in range(0, net.m, 2):
        net_f = flow[p] - flow[p + 1]
        flow[p], flow[p + 1] = max(net_f, 0), max(-net_f, 0)
    return flow, value


def verify_flow(net, flow):
    """Check capacities on the input arcs and conservation at internal nodes."""
    report = FlowReport(value=0)
    balance = [0] * net.n
    for a in range(net.m):
        f = flow[a]
        cap = net.orig_cap[a] if net.is_input[a] else 0
        if f < 0 or f > cap:
            report.capacity_violations.append((a, f, cap))
        if f:
            balance[net.tail[a]] -= f
            balance[net.head[a]] += f
    for v in range(net.n):
        if v not in (net.source, net.sink) and balance[v] != 0:
            report.conservation_violations.append((v, balance[v]))
    report.value = balance[net.sink]
    return report


def cut_capacity(net, source_side):
    """Capacity of the input arcs leaving ``source_side``."""
    side = set(source_side)
    total = 0
    for a in net.input_arcs:
        if net.tail[a] in side and net.head[a] not in side:
            total += net.orig_cap[a]
    return total


def min_cut(net, flow):
    """Residual reachability from s; raises FlowNotMaximal if the cut is not tight."""
    s = net.source
    cap = {}
    for a in range(net.m):
        cap[a] = net.orig_cap[a] if net.is_input[a] else 0
    seen = [False] * net.n
    seen[s] = True
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for a in net.adjacency[v]:
            w = net.head[a]
            if not seen[w] and cap[a] + flow[a ^ 1] - flow[a] > 0:
                seen[w] = True
                queue.append(w)
    S = [v for v in range(net.n) if seen[v]]
    T = [v for v in range(net.n) if not seen[v]]
    capacity = cut_capacity(net, S)
    value = verify_flow(net, flow).value
    if seen[net.sink] or capacity != value:
        raise FlowNotMaximal(f"cut capacity {capacity} differs from flow value {value}")
    return S, T, capacity
