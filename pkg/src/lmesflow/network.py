"""Arc-paired networks, preflow state and residual arithmetic.

Arcs live in a flat array where arcs ``2p`` and ``2p + 1`` are reverses of each
other, so ``a ^ 1`` is the partner of ``a``.  Every node other than the
terminals also gets arcs ``(j, s)`` and ``(t, j)`` of capacity 2nU: with them any
node can return excess to the source, which keeps distance labels bounded, and
the enhanced solver can seed buffer excess out of the sink.
They never change the maximum flow value and are removed from the final flow.

Solver states keep flows and excesses as plain integers held at a fixed binary
scale (``value * 2**shift``).  The integer solvers use shift 0; the enhanced
solver uses a deep shift so that every dyadic threshold it needs is integral.
"""

import math
from fractions import Fraction

from .quantity import Quantity


class NetworkError(ValueError):
    """Invalid network description."""


class Network:
    """Immutable directed network with paired arcs and sorted adjacency."""

    __slots__ = (
        "n", "source", "sink", "U", "tail", "head", "cap", "orig_cap",
        "is_input", "adjacency", "input_arcs",
    )

    def __init__(self, n, source, sink, U, tail, head, cap, orig_cap, is_input, adjacency, input_arcs):
        self.n = n
        self.source = source
        self.sink = sink
        self.U = U
        self.tail = tail
        self.head = head
        self.cap = cap
        self.orig_cap = orig_cap
        self.is_input = is_input
        self.adjacency = adjacency
        self.input_arcs = input_arcs

    @property
    def m(self):
        return len(self.tail)

    def reverse(self, arc):
        return arc ^ 1

    def bi_capacity(self, arc):
        return self.cap[arc] + self.cap[arc ^ 1]

    def is_helper(self, arc):
        """True for arcs that exist only because of the (j,s)/(t,j) completion."""
        return not self.is_input[arc] and self.cap[arc] > 0 and self.orig_cap[arc] == 0

    def arcs_between(self, i, j):
        return [a for a in self.adjacency[i] if self.head[a] == j]

    def __repr__(self):
        return f"Network(n={self.n}, m={self.m}, s={self.source}, t={self.sink}, U={self.U})"


def build_network(n, arc_list, s, t):
    """Build a paired network from ``(tail, head, capacity)`` triples.

    Capacities are non-negative integers; ``None`` or ``math.inf`` stands for an
    infinite capacity, which is replaced by ``n * U``.  Parallel arcs are merged
    by summing their capacities.
    """
    if n < 2:
        raise NetworkError("a network needs at least two nodes")
    for v, name in ((s, "source"), (t, "sink")):
        if not isinstance(v, int) or not 0 <= v < n:
            raise NetworkError(f"{name} {v!r} out of range")
    if s == t:
        raise NetworkError("source and sink must differ")

    merged = {}
    order = []
    infinite = set()
    for idx, triple in enumerate(arc_list):
        i, j, u = triple
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
            raise NetworkError(f"arc {idx}: endpoint out of range in {triple!r}")
        if i == j:
            raise NetworkError(f"arc {idx}: self-loop at node {i}")
        if u is None or (isinstance(u, float) and math.isinf(u) and u > 0):
            infinite.add((i, j))
            u = 0
        elif isinstance(u, bool) or not isinstance(u, int):
            raise NetworkError(f"arc {idx}: capacity {u!r} is not an integer")
        elif u < 0:
            raise NetworkError(f"arc {idx}: negative capacity {u}")
        if (i, j) not in merged:
            merged[(i, j)] = 0
            order.append((i, j))
        merged[(i, j)] += u

    finite = [u for key, u in merged.items() if key not in infinite]
    U = max(finite, default=0)
    for key in infinite:
        merged[key] += n * U
    if infinite:
        U = max(U, max(merged[key] for key in infinite))

    tail, head, cap, orig_cap, is_input = [], [], [], [], []
    pair_of = {}

    def ensure_pair(i, j):
        key = (min(i, j), max(i, j))
        if key in pair_of:
            return
        pair_of[key] = len(tail)
        tail.extend((i, j))
        head.extend((j, i))
        cap.extend((0, 0))
        orig_cap.extend((0, 0))
        is_input.extend((False, False))

    def arc_id(i, j):
        base = pair_of[(min(i, j), max(i, j))]
        return base if tail[base] == i else base + 1

    for i, j in order:
        ensure_pair(i, j)
        a = arc_id(i, j)
        cap[a] = merged[(i, j)]
        orig_cap[a] = merged[(i, j)]
        is_input[a] = True
    helper_cap = 2 * n * max(U, 1)
    for j in range(n):
        if j in (s, t):
            continue
        for i, k in ((j, s), (t, j)):
            ensure_pair(i, k)
            a = arc_id(i, k)
            cap[a] = max(cap[a], helper_cap)

    adjacency = [[] for _ in range(n)]
    for a in range(len(tail)):
        adjacency[tail[a]].append(a)
    adjacency = tuple(
        tuple(sorted(lst, key=lambda a: (-(cap[a] + cap[a ^ 1]), a))) for lst in adjacency
    )
    input_arcs = tuple(arc_id(i, j) for i, j in order)
    return Network(
        n, s, t, U, tuple(tail), tuple(head), tuple(cap), tuple(orig_cap),
        tuple(is_input), adjacency, input_arcs,
    )


class SolverState:
    """Mutable preflow: flows, excesses, labels and current-arc cursors.

    ``rep`` maps every original node to the node that currently stands for it;
    it is the identity unless the enhanced solver has contracted cycles.  ``adj``
    holds each live node's out-arcs, merged lists included.
    """

    def __init__(self, net, shift=0):
        self.net = net
        self.shift = shift
        self.cap = [c << shift for c in net.cap]
        self.x = [0] * net.m
        self.e = [0] * net.n
        self.d = [0] * net.n
        self.current = [0] * net.n
        self.rep = list(range(net.n))
        self.adj = [list(lst) for lst in net.adjacency]
        self.listener = None

    def residual(self, a):
        return self.cap[a] + self.x[a ^ 1] - self.x[a]

    def push(self, a, delta):
        """Send ``delta`` raw units along ``a``, cancelling reverse flow first."""
        if delta == 0:
            return
        rev = a ^ 1
        back = self.x[rev]
        if back >= delta:
            self.x[rev] = back - delta
        else:
            self.x[rev] = 0
            self.x[a] += delta - back
        rep = self.rep
        net = self.net
        self.e[rep[net.tail[a]]] -= delta
        self.e[rep[net.head[a]]] += delta
        if self.listener is not None:
            self.listener(a, delta)

    def quantity(self, raw):
        return Quantity.from_scaled(raw, self.shift)

    def raw(self, value):
        return Quantity.coerce(value).scaled(self.shift)

    def recompute_excess(self):
        """Excess per representative node, recomputed from the flows."""
        net = self.net
        out = [0] * net.n
        rep = self.rep
        for a in range(net.m):
            f = self.x[a]
            if f:
                i, j = rep[net.tail[a]], rep[net.head[a]]
                if i != j:
                    out[i] -= f
                    out[j] += f
        return out


def residual_capacity(net, state, arc):
    """``u_ij + x_ji - x_ij`` as an exact quantity."""
    return state.quantity(state.residual(arc))


def apply_push(state, arc, delta):
    """Push ``delta`` along ``arc``; asserts ``0 <= delta <= r_arc``."""
    raw = state.raw(delta) if not isinstance(delta, int) else delta << state.shift
    if raw < 0:
        raise AssertionError(f"negative push {delta}")
    r = state.residual(arc)
    if raw > r:
        raise AssertionError(f"push of {delta} exceeds residual {state.quantity(r)} on arc {arc}")
    state.push(arc, raw)
    return state


def flow_value(net, state_or_flow):
    """Net flow into the sink, as a Quantity (or exact number for plain flows)."""
    if isinstance(state_or_flow, SolverState):
        x, scale = state_or_flow.x, state_or_flow.shift
    else:
        x, scale = state_or_flow, None
    t = net.sink
    total = 0
    for a in net.adjacency[t]:
        total += x[a ^ 1] - x[a]
    if scale is None:
        return total
    return Quantity.from_scaled(total, scale)


def cancel_flow_cycles(net, x):
    """Remove every directed cycle of positive flow; excesses are unchanged.

    Works on any exact numeric flow vector and returns a new list.  After
    cancellation the flow is acyclic, so in a maximum flow no arc into the source
    or out of the sink carries flow.
    """
    x = list(x)
    n = net.n
    # state: 0 = unvisited, 1 = on stack, 2 = done
    color = [0] * n
    ptr = [0] * n
    adj = net.adjacency
    head = net.head
    for root in range(n):
        if color[root]:
            continue
        stack = [root]
        via = {root: None}
        color[root] = 1
        while stack:
            v = stack[-1]
            lst = adj[v]
            advanced = False
            while ptr[v] < len(lst):
                a = lst[ptr[v]]
                if x[a] <= 0:
                    ptr[v] += 1
                    continue
                w = head[a]
                if color[w] == 0:
                    color[w] = 1
                    via[w] = a
                    stack.append(w)
                    advanced = True
                    break
                if color[w] == 1:
                    # cycle w -> ... -> v -> w
                    cyc = [a]
                    u = v
                    while u != w:
                        b = via[u]
                        cyc.append(b)
                        u = net.tail[b]
                    amt = min(x[b] for b in cyc)
                    for b in cyc:
                        x[b] -= amt
                    # unwind the stack back to the first saturated arc's tail
                    cut = None
                    for b in reversed(cyc):
                        if x[b] == 0:
                            cut = net.tail[b]
                            break
                    while stack[-1] != cut:
                        color[stack.pop()] = 0
                    advanced = True
                    break
                ptr[v] += 1
            if not advanced:
                color[v] = 2
                stack.pop()
    return x


def strip_helper_flow(net, x):
    """Turn a maximum flow of the completed network into one on the input arcs.

    Cycle cancellation removes all flow on arcs into s or out of t; what is left
    uses input arcs only.  Raises if flow would remain on a helper arc, which
    can only happen when ``x`` is not maximum.
    """
    y = cancel_flow_cycles(net, x)
    for a in range(net.m):
        if y[a] and not net.is_input[a]:
            if net.orig_cap[a] == 0:
                raise ValueError(
                    f"helper arc {net.tail[a]}->{net.head[a]} still carries flow {y[a]}"
                )
    return y


def to_exact(raw, shift):
    """Raw scaled integers to ints (when integral) or Fractions."""
    if shift == 0:
        return list(raw)
    den = 1 << shift
    out = []
    for v in raw:
        if v % den == 0:
            out.append(v // den)
        else:
            out.append(Fraction(v, den))
    return out


class SolveResult:
    """Outcome of a solver run on the completed network.

    ``flow`` is indexed by arc id and lives on input arcs only; values are ints,
    or Fractions where the enhanced solver ended with a non-integral split.
    ``source_side`` is the solver's own minimum-cut side when it produces one.
    """

    def __init__(self, net, flow, value, counters, state=None, source_side=None):
        self.net = net
        self.flow = flow
        self.value = value
        self.counters = counters
        self.state = state
        self.source_side = source_side

    def __repr__(self):
        return f"SolveResult(value={self.value})"


def finish(net, state, counters, source_side=None):
    """Strip helper flow from a terminated state and package the result."""
    flow = strip_helper_flow(net, to_exact(state.x, state.shift))
    value = flow_value(net, flow)
    assert value == flow_value(net, state), "cycle cancellation changed the value"
    return SolveResult(net, flow, value, counters, state, source_side)
