"""Flow-return forest: trees of abundant arcs that route flow back to nodes
whose excess dropped below their buffer.

Every tree hangs from a root that is a normal node or a terminal.  A root keeps
``reserve`` equal to the total ``needed`` of the nodes in its tree, so that it
can always afford to pull flow down to them.  Leaves are always violating; a
leaf that stops violating is deleted.

The operations act on a solver object that exposes ``state``, ``tracker``,
``forest``, ``scale``, ``counters`` and a handful of callbacks
(``is_violating``, ``is_normal``, ``ehat``, ``frf_flow``, ``contract``, ...);
see ``enhanced.EnhancedSolver``.
"""

from collections import deque
from fractions import Fraction

from .instrumentation import Event, record


class ForestError(RuntimeError):
    """The forest reached a state its invariants rule out."""


class NoEligiblePath(ForestError):
    """No FRF-eligible path leads from F, a terminal or a normal node to v."""


class FlowReturnForest:
    def __init__(self, n):
        self.in_f = bytearray(n)
        self.parent = [-1] * n      # arc into the node, -1 for roots
        self.children = [[] for _ in range(n)]
        self.needed = [0] * n
        self.reserve = [0] * n

    def __len__(self):
        return sum(self.in_f)

    def nodes(self):
        return [v for v in range(len(self.in_f)) if self.in_f[v]]

    def is_root(self, v):
        return self.in_f[v] and self.parent[v] == -1

    def parent_node(self, state, v):
        a = self.parent[v]
        return -1 if a == -1 else state.rep[state.net.tail[a]]

    def root(self, state, v):
        u = v
        for _ in range(len(self.in_f) + 1):
            p = self.parent_node(state, u)
            if p == -1:
                return u
            u = p
        raise ForestError(f"cycle above node {v}")

    def path_from_root(self, state, v):
        """Arcs of the tree path root -> v, in order."""
        arcs = []
        u = v
        while self.parent[u] != -1:
            a = self.parent[u]
            arcs.append(a)
            u = state.rep[state.net.tail[a]]
        arcs.reverse()
        return arcs

    def subtree(self, v):
        out = [v]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def make_root(self, v):
        self.in_f[v] = 1
        self.parent[v] = -1
        self.reserve[v] = 0

    def attach(self, state, v, arc):
        p = state.rep[state.net.tail[arc]]
        self.in_f[v] = 1
        self.parent[v] = arc
        self.children[p].append(v)

    def detach(self, state, v):
        """Remove v (which must have no children) from the forest."""
        p = self.parent_node(state, v)
        if p != -1:
            self.children[p].remove(v)
        self.in_f[v] = 0
        self.parent[v] = -1
        self.children[v] = []
        self.reserve[v] = 0

    def transfer(self, state, u, w):
        """Merged node w takes over the place of member u."""
        p = self.parent_node(state, u)
        if p != -1:
            kids = self.children[p]
            kids[kids.index(u)] = w
        self.in_f[w] = 1
        self.parent[w] = self.parent[u]
        self.children[w] = self.children[u]
        self.needed[w] = self.needed[u]
        self.reserve[w] = self.reserve[u]
        self.in_f[u] = 0
        self.parent[u] = -1
        self.children[u] = []
        self.needed[u] = 0
        self.reserve[u] = 0


def is_eligible(solver, a):
    """Abundant and d(head) <= d(tail) + 1, between distinct live nodes."""
    state = solver.state
    net = state.net
    i, j = state.rep[net.tail[a]], state.rep[net.head[a]]
    return i != j and solver.tracker.abundant[a] and state.d[j] <= state.d[i] + 1


def reverse_dfs(solver, v):
    """Search backwards from v along FRF-eligible arcs.

    Returns ``("path", arcs)`` with arcs ordered from a node of
    Y = F + terminals + normal nodes down to v, or ``("cycle", arcs)`` with
    the arcs of an eligible cycle outside F in cyclic order.
    """
    state = solver.state
    net = state.net
    rep = state.rep
    d = state.d
    forest = solver.forest
    abundant_in = solver.tracker.abundant_in
    stack = [v]
    arcs = []           # arcs[i] runs from stack[i + 1] to stack[i]
    on_stack = {v: 0}
    dead = set()
    ptr = {v: 0}
    while stack:
        u = stack[-1]
        lst = abundant_in[u]
        advanced = False
        while ptr[u] < len(lst):
            b = lst[ptr[u]]
            ptr[u] += 1
            j = rep[net.tail[b]]
            if j == u or rep[net.head[b]] != u or d[u] > d[j] + 1:
                continue
            if j in on_stack:
                idx = on_stack[j]
                return "cycle", [b] + arcs[idx:][::-1]
            if j in dead:
                continue
            if forest.in_f[j] or j in (net.source, net.sink) or solver.is_normal(j):
                return "path", [b] + arcs[::-1]
            on_stack[j] = len(stack)
            stack.append(j)
            arcs.append(b)
            ptr[j] = 0
            advanced = True
            break
        if not advanced:
            dead.add(u)
            stack.pop()
            del on_stack[u]
            if arcs:
                arcs.pop()
    raise NoEligiblePath(f"no FRF-eligible path reaches violating node {v}")


def rescue_path(solver, v, amount):
    """Shortest residual path into v that can carry ``amount`` and keeps labels valid.

    It starts at a terminal or at a normal node that can spare ``amount``.
    Returns the arcs in order, or None.
    """
    state = solver.state
    net = state.net
    rep = state.rep
    d = state.d
    prev = {v: -1}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for a in state.adj[u]:
            b = a ^ 1           # b runs into u
            j = rep[net.tail[b]]
            if j in prev or state.residual(b) < amount or d[u] > d[j] + 1:
                continue
            prev[j] = b
            if solver.is_terminal(j) or (solver.is_normal(j) and solver.ehat(j) >= amount):
                arcs = []
                while j != v:
                    arcs.append(prev[j])
                    j = rep[net.head[prev[j]]]
                return arcs
            queue.append(j)
    return None


def frf_add(solver, v):
    """Hang violating node v below F along an eligible path, contracting cycles found on the way."""
    state = solver.state
    net = state.net
    forest = solver.forest
    while True:
        v = state.rep[v]
        if forest.in_f[v] or not solver.is_violating(v) or v in solver.stranded:
            return
        try:
            kind, arcs = reverse_dfs(solver, v)
        except NoEligiblePath as exc:
            solver.strand(v, str(exc))
            return
        if kind == "cycle":
            solver.contract(arcs)
            continue
        j0 = state.rep[net.tail[arcs[0]]]
        if not forest.in_f[j0]:
            forest.make_root(j0)
        root = forest.root(state, j0)
        added = []
        for a in arcs:
            w = state.rep[net.head[a]]
            forest.attach(state, w, a)
            added.append(w)
        for w in added:
            if forest.needed[w] == 0 and solver.is_violating(w):
                forest.needed[w] = solver.scale.needed
            forest.reserve[root] += forest.needed[w]
        record(solver.counters, Event("frf_add", v))
        solver.mark_dirty(j0, root, *added)
        solver.after_frf("add")
        return


def _send_along(solver, arcs, kind):
    state = solver.state
    amount = solver.scale.step
    for a in arcs:
        if state.residual(a) < amount:
            raise ForestError(f"forest arc {a} cannot carry {amount} raw units")
    for a in arcs:
        solver.frf_flow(a, amount)
    # intermediate nodes hold the amount only between two arcs; audit the end state
    solver.after_relay(arcs)
    record(solver.counters, Event(kind, Fraction(amount, 1 << state.shift)))


def frf_push(solver, v):
    """Send delta/k from v down to a violating leaf of its subtree."""
    forest = solver.forest
    state = solver.state
    if not forest.children[v]:
        raise ForestError(f"FRF push from leaf {v}")
    u = v
    path = []
    while forest.children[u]:
        u = forest.children[u][0]
        path.append(forest.parent[u])
    if not solver.is_violating(u):
        raise ForestError(f"leaf {u} below {v} is not violating")
    _send_along(solver, path, "frf_push")
    solver.mark_dirty(v, u)
    solver.after_frf("push")
    return u


def frf_pull(solver, v):
    """Send delta/k from the root of v's tree down to v."""
    forest = solver.forest
    state = solver.state
    root = forest.root(state, v)
    _send_along(solver, forest.path_from_root(state, v), "frf_pull")
    solver.mark_dirty(root, v)
    return root


def frf_delete(solver, v):
    """Delete non-violating leaf v, topping it up from a rich root first when scheduled."""
    forest = solver.forest
    state = solver.state
    net = state.net
    if forest.children[v]:
        raise ForestError(f"delete of non-leaf {v}")
    w = forest.root(state, v)
    delta = forest.needed[v]
    forest.needed[v] = 0
    forest.reserve[w] -= delta
    if (
        w != v
        and w not in (net.source, net.sink)
        and solver.in_pull_window(v)
        and solver.ehat(w) >= solver.scale.step
    ):
        frf_pull(solver, v)
    forest.detach(state, v)
    record(solver.counters, Event("frf_delete", v))
    solver.mark_dirty(v, w)
    solver.after_frf("delete")


def is_mergeable(solver, p):
    state = solver.state
    net = state.net
    forest = solver.forest
    i, j = state.rep[net.tail[p]], state.rep[net.head[p]]
    if i == j or not solver.tracker.is_bi(p):
        return False
    if forest.in_f[i] and forest.in_f[j]:
        return False
    terminals = (net.source, net.sink)
    if i in terminals and j in terminals:
        return False
    if (i in terminals and forest.in_f[j]) or (j in terminals and forest.in_f[i]):
        return False
    return True


def recursive_delete_and_merge(solver):
    """Delete non-violating leaves and contract mergeable arcs until neither exists."""
    forest = solver.forest
    while True:
        leaf = next(
            (v for v in forest.nodes() if not forest.children[v] and not solver.is_violating(v)),
            None,
        )
        if leaf is not None:
            frf_delete(solver, leaf)
            continue
        p = solver.tracker.pop_bi_abundant(lambda q: is_mergeable(solver, q))
        if p is not None:
            solver.contract([p, p ^ 1])
            continue
        if solver.settle_pending():
            continue
        return


def structure_problems(solver, check_leaves=True):
    """Full structural audit of F; returns a list of problems."""
    forest = solver.forest
    state = solver.state
    net = state.net
    problems = []
    members = forest.nodes()
    for v in members:
        if state.rep[v] != v:
            problems.append(f"dead node {v} in F")
            continue
        a = forest.parent[v]
        if a != -1:
            p = state.rep[net.tail[a]]
            if state.rep[net.head[a]] != v:
                problems.append(f"parent arc of {v} does not enter it")
            if not forest.in_f[p]:
                problems.append(f"parent {p} of {v} not in F")
            if v not in forest.children[p]:
                problems.append(f"{v} missing from children of {p}")
            if not is_eligible(solver, a):
                problems.append(f"forest arc {p}->{v} not FRF-eligible")
            if forest.reserve[v]:
                problems.append(f"non-root {v} holds reserve")
        for c in forest.children[v]:
            if not forest.in_f[c] or forest.parent_node(state, c) != v:
                problems.append(f"child link {v}->{c} broken")
        try:
            forest.root(state, v)
        except ForestError as exc:
            problems.append(str(exc))
            continue
        if check_leaves and not forest.children[v] and not solver.is_violating(v):
            problems.append(f"leaf {v} is not violating")
    for v in members:
        if forest.parent[v] != -1:
            continue
        if v not in (net.source, net.sink) and not solver.is_normal(v):
            problems.append(f"root {v} is not normal")
        total = sum(forest.needed[u] for u in forest.subtree(v))
        if total != forest.reserve[v]:
            problems.append(f"reserve of root {v} is {forest.reserve[v]}, tree needs {total}")
    return problems
