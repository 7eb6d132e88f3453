"""Enhanced LMES: strongly polynomial excess scaling with abundance,
contraction and a flow-return forest.

The solver runs on raw integers at a deep binary shift (``SolverState.shift``)
so that every threshold (eps*delta, eps^4*delta, delta/(kM), ...) is an exact
integer; delta is always a power of two and is held as its raw exponent.

Per phase: arcs are reclassified and abundance advanced; nodes are split into
special (no medium arc, tiny imbalance), normal and violating (excess below the
eps*delta buffer).  Violating nodes are hung into the flow-return forest,
which routes flow back to them from normal roots.  Selection uses the
modified excess ``ehat``.  Bi-abundant arcs are contracted; contracted cycles
are expanded again once the contracted network holds a maximum flow.
"""

from collections import deque
from fractions import Fraction

from . import forest as frf
from .abundance import AbundanceTracker
from .generic import audit_validity, find_admissible, gpr_relabel
from .instrumentation import Counters, Event, record
from .network import SolverState, finish
from .params import Scale, default_enhanced_k, derive_params
from .quantity import ShiftOverflow
from .selection import LARGE, MEDIUM, NONE, SelectionStructures

DEFAULT_SHIFT = 256
GAMMA2_RULES = ("printed", "inverse")
MAX_PHASES = 200_000
MAX_STEPS = 50_000_000


def classify_arc(bicap, scale):
    """'large', 'medium' or 'small' for a pair with the given bi-capacity (raw)."""
    if bicap >= scale.two_m:
        return "large"
    if bicap >= scale.eps5:
        return "medium"
    return "small"


def push_amount(r, r_rev, ehat, delta, k):
    """Amount and ladder line of an enhanced push.

    Works on any integer unit in which delta/k is integral.  Returns
    ``(amount, line)`` with line one of 4..8.
    """
    step = delta // k
    half = delta // 2
    D = half if ehat >= half else ehat - ehat % step
    if r < D:
        return r, 4
    if r - r_rev >= 2 * D:
        return D, 5
    if r < r_rev:
        return D, 6
    if r > r_rev:
        diff = r - r_rev
        if diff % 2:
            raise ArithmeticError(f"odd residual difference {diff}")
        return diff // 2, 7
    mod = r % step
    return (D - step + mod if mod else D), 8


def ladder_class(amount, line, delta, r):
    if line == 4 and amount == r:
        return "saturating"
    if 2 * amount == delta:
        return "large"
    if line in (5, 6):
        return "medium"
    return "other"


class EnhancedSolver:
    """One run of the enhanced solver on a network."""

    def __init__(self, net, k=None, audit=False, counters=None, jumps=True,
                 gamma2_rule="inverse", shift=DEFAULT_SHIFT):
        if gamma2_rule not in GAMMA2_RULES:
            raise ValueError(f"gamma2_rule must be one of {GAMMA2_RULES}")
        if k is None:
            k = default_enhanced_k(net.n, net.m)
        self.net = net
        self.params = derive_params(max(net.n, 4), k)
        self.k = k
        self.audit = audit
        self.counters = counters or Counters(n=net.n, m=net.m, audit=audit)
        self.counters.audit = audit
        self.jumps = jumps
        self.gamma2_rule = gamma2_rule
        self.shift = shift
        n = net.n
        self.s, self.t = net.source, net.sink
        self.state = SolverState(net, shift)
        self.forest = frf.FlowReturnForest(n)
        self.special = bytearray(n)
        self.was_violating = bytearray(n)
        self.violating_run = [0] * n
        self.tally = [0] * n
        self.group_size = [1] * n
        self.pull_window = set()
        self.deadlines = {}
        self.records = []
        self.pending = []
        self.stranded = set()
        self.dirty = set()
        self.rebuild_sel = True
        self.sel = SelectionStructures(n, 2 * n + 4)
        self.scale = None
        self.tracker = None

    # node classes

    def alive(self):
        rep = self.state.rep
        return [v for v in range(self.net.n) if rep[v] == v]

    def internal(self):
        s, t = self.s, self.t
        return [v for v in self.alive() if v != s and v != t]

    def is_terminal(self, v):
        return v == self.s or v == self.t

    def is_violating(self, v):
        return (
            not self.is_terminal(v)
            and self.state.rep[v] == v
            and not self.special[v]
            and self.state.e[v] < self.scale.eps
        )

    def is_normal(self, v):
        return (
            not self.is_terminal(v)
            and self.state.rep[v] == v
            and not self.special[v]
            and self.state.e[v] >= self.scale.eps
        )

    def ehat(self, v):
        e = self.state.e[v]
        if self.forest.is_root(v):
            return e - self.forest.reserve[v] - self.scale.eps
        if self.special[v]:
            return e + self.scale.eps4_15
        return e - self.scale.eps

    def in_pull_window(self, v):
        return v in self.pull_window

    def sel_kind(self, v):
        if self.is_terminal(v) or self.state.rep[v] != v:
            return NONE
        eh = self.ehat(v)
        if eh >= self.scale.half:
            return LARGE
        if eh >= self.scale.step:
            return MEDIUM
        return NONE

    def mark_dirty(self, *nodes):
        self.dirty.update(nodes)

    def flush_dirty(self):
        d = self.state.d
        if self.rebuild_sel:
            self.sel.rebuild((v, self.sel_kind(v), d[v]) for v in self.internal())
            self.rebuild_sel = False
        else:
            for v in sorted(self.dirty):
                self.sel.update(v, self.sel_kind(v), d[v])
        self.dirty.clear()

    # audits

    def _pair_invariant2(self, a, where):
        state = self.state
        net = self.net
        p = a & ~1
        if self.tracker.internal[p] or state.rep[net.tail[p]] == state.rep[net.head[p]]:
            return
        if self.tracker.is_bi(p):
            return
        step = self.scale.step
        r, rr = state.residual(p), state.residual(p ^ 1)
        if (r < rr and r % step) or (rr < r and rr % step):
            self.counters.violation(
                "invariant2", f"pair {net.tail[p]}-{net.head[p]} r={r},{rr} step={step} {where}"
            )

    def _special_bounds(self, v, where):
        if not self.special[v] or self.state.rep[v] != v:
            return
        sc = self.scale
        e = self.state.e[v]
        if e < -sc.eps4_15:
            self.counters.violation("special_excess", f"e({v}) = {e} < -1.5 eps^4 delta {where}")
        if self.ehat(v) % sc.step > sc.eps4_3:
            self.counters.violation("special_mod", f"Mod(ehat({v})) too large {where}")

    def _ehat_bound(self, v):
        sc = self.scale
        # ehat < (1 + (k-1) eps) delta, per original node for merged nodes
        size = self.group_size[v]
        if self.ehat(v) >= size * (sc.delta + (self.k - 1) * sc.eps):
            self.counters.violation("ehat_bound", f"ehat({v}) = {self.ehat(v)} at delta {sc.delta}")

    def _after_flow(self, a, where):
        if not self.audit:
            return
        net = self.net
        rep = self.state.rep
        self._pair_invariant2(a, where)
        audit_validity(self.state, self.counters, (a ^ 1,), where)
        for v in (rep[net.tail[a]], rep[net.head[a]]):
            self._special_bounds(v, where)
            if not self.is_terminal(v):
                self._ehat_bound(v)

    def after_frf(self, op):
        if self.audit:
            for p in frf.structure_problems(self, check_leaves=False):
                self.counters.violation("frf_structure", f"{p} after {op}")

    def _fixed_point_audit(self, where):
        for p in frf.structure_problems(self, check_leaves=True):
            self.counters.violation("frf_structure", f"{p} {where}")
        for v in self.forest.nodes():
            if self.forest.is_root(v) and not self.is_terminal(v) and self.ehat(v) < 0:
                self.counters.violation("frf_root_ehat", f"root {v} ehat {self.ehat(v)} {where}")

    def _full_invariant2(self, where):
        for p in range(0, self.net.m, 2):
            self._pair_invariant2(p, where)

    # flow primitives

    def frf_flow(self, a, amount):
        state = self.state
        state.push(a, amount)
        net = self.net
        rep = state.rep
        i, j = rep[net.tail[a]], rep[net.head[a]]
        if state.d[j] == state.d[i] + 1:
            # unlike a push, this opens an admissible arc (j, i) that may sit
            # behind j's current-arc cursor
            idx = state.adj[j].index(a ^ 1)
            if idx < state.current[j]:
                state.current[j] = idx
        self.mark_dirty(i, j)

    def after_relay(self, arcs):
        for a in arcs:
            self._after_flow(a, "after FRF flow")

    def enhanced_push(self, a):
        state = self.state
        net = self.net
        sc = self.scale
        i, j = state.rep[net.tail[a]], state.rep[net.head[a]]
        if state.d[i] != state.d[j] + 1 or state.residual(a) <= 0:
            raise AssertionError(f"push on inadmissible arc {i}->{j}")
        r, rr = state.residual(a), state.residual(a ^ 1)
        amount, line = push_amount(r, rr, self.ehat(i), sc.delta, self.k)
        if amount <= 0:
            raise AssertionError(f"non-positive push {amount} from {i}")
        state.push(a, amount)
        cls = ladder_class(amount, line, sc.delta, r)
        record(self.counters, Event("push", (cls, Fraction(amount, 1 << self.shift))))
        self.mark_dirty(i, j)
        self._after_flow(a, f"after push line {line}")
        return amount

    def relabel(self, v):
        gpr_relabel(self.state, v, self.counters)
        self.tally[v] += 1
        self.mark_dirty(v)
        if self.audit:
            audit_validity(self.state, self.counters, self.state.adj[v], "after relabel")
            if self.tally[v] > self.net.n + 1:
                self.counters.violation("relabel_bound", f"node {v} relabeled {self.tally[v]} times")

    # initialization

    def initialize(self):
        state = self.state
        net = self.net
        for a in net.adjacency[self.s]:
            r = state.residual(a)
            if r > 0:
                state.push(a, r)
        state.d[self.s] = net.n
        internal = self.internal()
        top = max((state.e[v] for v in internal), default=0)
        if top <= 0:
            self.scale = Scale(self.params, self.shift)
            return False
        dexp = max((top - 1).bit_length(), 0)
        while True:
            # rounding pushes can lift an excess above delta; grow delta until
            # they do not (they are bounded by the residuals, so this ends)
            step = Scale(self.params, dexp).step
            plan = self._rounding_pushes(step)
            after = list(state.e)
            for a, amount in plan:
                after[state.rep[net.tail[a]]] -= amount
                after[state.rep[net.head[a]]] += amount
            if max(after[v] for v in internal) <= 1 << dexp:
                break
            dexp += 1
        self.scale = Scale(self.params, dexp)
        for a, amount in plan:
            state.push(a, amount)
        # the rounding pushes can leave e(v) far below zero, so one delta/k
        # is not always enough to restore the buffer
        for v in internal:
            short = self.scale.eps - state.e[v]
            if short > 0:
                a = net.arcs_between(self.t, v)[0]
                state.push(a, -(-short // step) * step)
        self.tracker = AbundanceTracker(state, self.params)
        state.listener = self.tracker.on_push
        return True

    def _rounding_pushes(self, step):
        """Pushes that make the smaller residual of every pair a multiple of step."""
        state = self.state
        plan = []
        for p in range(0, self.net.m, 2):
            r, rr = state.residual(p), state.residual(p ^ 1)
            if r < rr and r % step:
                plan.append((p, r % step))
            elif rr < r and rr % step:
                plan.append((p ^ 1, rr % step))
        return plan

    # contraction

    def contract(self, arcs):
        state = self.state
        net = self.net
        rep = state.rep
        members = []
        for a in arcs:
            for v in (rep[net.tail[a]], rep[net.head[a]]):
                if v not in members:
                    members.append(v)
        member_set = set(members)
        terminals = [v for v in members if self.is_terminal(v)]
        if len(terminals) > 1:
            raise AssertionError("contraction would merge source and sink")
        in_f = [u for u in members if self.forest.in_f[u]]
        if len(in_f) > 1:
            raise AssertionError(f"contraction of {len(in_f)} forest nodes")
        for a in arcs:
            if not self.tracker.abundant[a]:
                raise AssertionError(f"contracting non-abundant arc {a}")
        w = terminals[0] if terminals else min(members)
        originals = {u: [v for v in range(net.n) if rep[v] == u] for u in members}
        newly_internal = sorted({
            a & ~1 for u in members for a in state.adj[u] if rep[net.head[a]] in member_set
        })
        self.records.append({
            "w": w, "members": members, "cycle": list(arcs),
            "dexp": self.scale.dexp, "originals": originals,
        })
        for u in members:
            for v in originals[u]:
                rep[v] = w
        total = sum(state.e[u] for u in members)
        merged = [a for u in members for a in state.adj[u] if rep[net.head[a]] != w]
        for u in members:
            state.e[u] = 0
            state.adj[u] = []
        state.e[w] = total
        cap = state.cap
        state.adj[w] = sorted(merged, key=lambda a: (-(cap[a] + cap[a ^ 1]), a))
        if in_f and in_f[0] != w:
            self.forest.transfer(state, in_f[0], w)
        self.tracker.contract(w, members, newly_internal)
        for u in members:
            self.special[u] = 0
            self.was_violating[u] = 0
            self.violating_run[u] = 0
            self.sel.update(u, NONE, 0)
        self.tally[w] = min(self.tally[u] for u in members)
        self.group_size[w] = sum(len(vs) for vs in originals.values())
        self.pull_window.discard(w)
        for u in members:
            self.pull_window.discard(u)
        self.relabel_from_sink()
        record(self.counters, Event("contraction", w))
        self.repair_forest()
        if self.is_violating(w) and not self.forest.in_f[w]:
            self.forest.needed[w] = 0
            self.pending.append(w)
        self.rebuild_sel = True
        if self.audit:
            audit_validity(state, self.counters, where="after contraction")
            if self.tally[w] > net.n + 1:
                self.counters.violation("relabel_bound", f"merged node {w} tally {self.tally[w]}")
        return w

    def relabel_from_sink(self):
        """Exact distance to t in the contracted residual graph; d(s) = live node count."""
        state = self.state
        net = self.net
        rep = state.rep
        alive = self.alive()
        n_live = len(alive)
        d = state.d
        seen = {self.t}
        d[self.t] = 0
        queue = deque([self.t])
        while queue:
            u = queue.popleft()
            for b in state.adj[u]:
                j = rep[net.head[b]]
                if j in seen or j == self.s or state.residual(b ^ 1) <= 0:
                    continue
                seen.add(j)
                d[j] = d[u] + 1
                queue.append(j)
        for v in alive:
            if v not in seen:
                d[v] = n_live + 1
            state.current[v] = 0
        d[self.s] = n_live

    def repair_forest(self):
        """Detach subtrees hanging from arcs that stopped being eligible."""
        state = self.state
        F = self.forest
        for v in F.nodes():
            if not F.in_f[v] or F.parent[v] == -1:
                continue
            if frf.is_eligible(self, F.parent[v]):
                continue
            root = F.root(state, v)
            sub = F.subtree(v)
            p = F.parent_node(state, v)
            F.children[p].remove(v)
            for x in sub:
                F.reserve[root] -= F.needed[x]
                F.in_f[x] = 0
                F.parent[x] = -1
                F.children[x] = []
                if self.is_violating(x):
                    self.pending.append(x)
                else:
                    F.needed[x] = 0
            self.mark_dirty(root, p, *sub)

    def strand(self, v, why):
        """v has no eligible path; it stays out of F until the next phase."""
        self.stranded.add(v)
        record(self.counters, Event("stranded", v))
        if self.audit:
            self.counters.violation("frf_no_path", why)
        state = self.state
        if state.e[v] >= 0:
            return
        # a negative excess would never be repaid; send whole steps to v at once
        step = self.scale.step
        amount = -(-(-state.e[v]) // step) * step
        arcs = frf.rescue_path(self, v, amount)
        relabel = arcs is None
        if relabel:
            # v cannot be reached at valid labels: take the helper arc from t
            # and recompute exact labels afterwards
            arcs = [self.net.arcs_between(self.t, v)[0]]
            if state.residual(arcs[0]) < amount:
                raise frf.ForestError(f"helper arc cannot repay e({v})")
        for a in arcs:
            self.frf_flow(a, amount)
        if relabel:
            self.relabel_from_sink()
            self.repair_forest()
            self.rebuild_sel = True
            if self.audit:
                audit_validity(state, self.counters, where="after rescue")
        self.after_relay(arcs)
        record(self.counters, Event("rescue", Fraction(amount, 1 << self.shift)))

    def settle_pending(self):
        """Hang pending violating nodes into F; True if anything was added."""
        did = False
        while self.pending:
            v = self.state.rep[self.pending.pop(0)]
            if self.is_violating(v) and not self.forest.in_f[v]:
                frf.frf_add(self, v)
                did = True
        return did

    # phases

    def start_phase(self):
        state = self.state
        sc = self.scale
        counters = self.counters
        record(counters, Event("phase_start", Fraction(sc.delta, 1 << self.shift)))
        alive = self.alive()
        self.tracker.start_phase(sc, alive)
        record(counters, Event("medium_arcs", self.tracker.n_medium))
        internal = self.internal()
        if self.audit:
            for p in self.tracker.check_phase_start(sc):
                counters.violation("abundance", p)
            self._abundance_audit("at phase start")
            for p in self.tracker.audit(sc, alive):
                counters.violation("tracker", p)
        F = self.forest
        imb = self.tracker.imb
        for v in internal:
            has_med = self.tracker.has_medium(v)
            self.special[v] = (not has_med and abs(imb[v]) <= sc.eps4 and not F.is_root(v))
            if not has_med and abs(imb[v]) > sc.eps4 and v not in self.deadlines:
                self.deadlines[v] = sc.dexp - 7 * self.params.eps_bits
        self._check_deadlines()
        for v in internal:
            viol = self.is_violating(v)
            if viol:
                if not self.was_violating[v]:
                    record(counters, Event("newly_violating", v))
                self.violating_run[v] += 1
                if self.audit:
                    if not -sc.eps < state.e[v] < sc.eps:
                        counters.violation("violating_bound", f"e({v}) = {state.e[v]} at phase start")
                    if self.violating_run[v] > 2 * self.params.Q + 1:
                        counters.violation("violating_duration", f"node {v} violating {self.violating_run[v]} phases")
            else:
                self.violating_run[v] = 0
            self.was_violating[v] = viol
        if self.audit:
            self._full_invariant2("at phase start")
            audit_validity(state, counters, where="at phase start")
            for v in internal:
                self._special_bounds(v, "at phase start")
                self._ehat_bound(v)

    def _abundance_audit(self, where):
        state = self.state
        net = self.net
        rep = state.rep
        tr = self.tracker
        for b in range(net.m):
            if not tr.abundant[b] or tr.internal[b] or rep[net.tail[b]] == rep[net.head[b]]:
                continue
            r = state.residual(b)
            if r <= 0:
                self.counters.violation("abundant_residual", f"abundant arc {b} has r = {r} {where}")
            elif r < self.scale.m_delta:
                self.counters.violation("abundance_monotone", f"abundant arc {b} r = {r} < M delta {where}")

    def _check_deadlines(self):
        state = self.state
        net = self.net
        for v in sorted(self.deadlines):
            limit = self.deadlines[v]
            if self.scale.dexp > limit:
                continue
            del self.deadlines[v]
            if state.rep[v] != v:
                continue
            if any(self.tracker.is_bi(a) for a in state.adj[v]):
                continue
            if self.audit:
                self.counters.violation("contraction_deadline", f"node {v} missed its deadline")

    def scaling_phase(self):
        state = self.state
        sc = self.scale
        F = self.forest
        counters = self.counters
        self.start_phase()
        self.stranded.clear()
        # hang every violating node into F
        while True:
            todo = [v for v in self.internal()
                    if self.is_violating(v) and not F.in_f[v] and v not in self.stranded]
            if not todo:
                break
            F.needed[todo[0]] = 0
            frf.frf_add(self, todo[0])
            self.settle_pending()
        for v in F.nodes():
            if self.is_violating(v) and F.needed[v] == 0:
                F.needed[v] = sc.needed
                F.reserve[F.root(state, v)] += sc.needed
        snapshot = {v: F.needed[v] for v in F.nodes() if self.is_violating(v)}
        self.pull_window = {v for v, nf in snapshot.items() if 0 < nf < sc.step}
        if F.nodes():
            record(counters, Event("frf_nonempty", None))
        for v in sorted(snapshot):
            if snapshot[v] < sc.step or state.rep[v] != v or not F.in_f[v]:
                continue
            if not self.is_violating(v):
                continue
            root = frf.frf_pull(self, v)
            F.reserve[root] -= F.needed[v]
            F.needed[v] = 0
            self.after_frf("pull")
            if self.audit and not self.is_terminal(root) and self.ehat(root) < 0:
                counters.violation("frf_root_ehat", f"root {root} ehat {self.ehat(root)} after pull")
        frf.recursive_delete_and_merge(self)
        if self.audit:
            self._fixed_point_audit("after phase-start pulls")
        self.rebuild_sel = True
        self.flush_dirty()
        steps = 0
        while True:
            v = self.sel.select()
            if v is None:
                break
            if F.in_f[v]:
                frf.frf_push(self, v)
            else:
                a = find_admissible(state, v)
                if a is None:
                    self.relabel(v)
                else:
                    self.enhanced_push(a)
            frf.recursive_delete_and_merge(self)
            if self.audit:
                self._fixed_point_audit("after step")
            self.flush_dirty()
            steps += 1
            if steps > MAX_STEPS:
                raise RuntimeError("phase step guard tripped")
        if F.nodes():
            record(counters, Event("frf_nonempty", None))
        if self.audit:
            expected = {v: (self.sel_kind(v), state.d[v]) for v in self.internal()}
            for p in self.sel.audit(expected):
                counters.violation("selection", p)
        record(counters, Event("phase_end", None))
        if self.audit:
            n2 = self.net.n ** 2
            if counters.phase_flows[-1] > 5 * n2 * counters.phase_deltas[-1]:
                counters.violation("phase_flow", f"{counters.phase_flows[-1]} > 5n^2 delta")
            if counters.phase_large[-1] > 4 * n2:
                counters.violation("large_pushes", f"{counters.phase_large[-1]} > 4n^2")

    def next_scaling_parameter(self):
        """New delta exponent, or None when every internal excess is zero."""
        state = self.state
        sc = self.scale
        q = self.params.eps_bits
        exps = []
        for v in self.internal():
            e = state.e[v]
            if e > 0:
                exps.append((e - 1).bit_length())
            elif e < 0:
                y = -e
                if self.gamma2_rule == "printed":
                    if e <= -sc.eps:
                        # outside the range the printed rule covers: no jump
                        exps.append(sc.dexp)
                        continue
                    exps.append((y - 1).bit_length() - 3 * q)
                else:
                    exps.append((y - 1).bit_length() + 3 * q)
        if not exps:
            return None
        g = max(exps)
        limit = sc.dexp - 2 * q - self.params.lk
        if self.jumps and g < limit:
            record(self.counters, Event("jump", g))
            return g
        return sc.dexp - self.params.lk

    def run(self):
        if self.initialize():
            phases = 0
            while True:
                if not any(self.state.e[v] for v in self.internal()):
                    break
                self.scaling_phase()
                nxt = self.next_scaling_parameter()
                if nxt is None:
                    break
                self.scale = Scale(self.params, nxt)
                phases += 1
                if phases > MAX_PHASES:
                    raise RuntimeError("phase cap exceeded")
            if self.audit:
                self._abundance_audit("at termination")
                audit_validity(self.state, self.counters, where="final")
        self.state.listener = None
        side = self.source_side()
        self.expand_all()
        return finish(self.net, self.state, self.counters, side)

    # expansion and cut

    def source_side(self):
        """Original nodes that cannot reach t in the final contracted residual graph."""
        state = self.state
        net = self.net
        rep = state.rep
        reach = {rep[self.t]}
        queue = deque(reach)
        while queue:
            u = queue.popleft()
            for b in state.adj[u]:
                j = rep[net.head[b]]
                if j not in reach and state.residual(b ^ 1) > 0:
                    reach.add(j)
                    queue.append(j)
        return sorted(v for v in range(net.n) if rep[v] not in reach)

    def expand_all(self):
        state = self.state
        net = self.net
        rep = state.rep
        q = self.params.eps_bits
        for rec in reversed(self.records):
            members, originals = rec["members"], rec["originals"]
            for u in members:
                for v in originals[u]:
                    rep[v] = u
            member_set = set(members)
            b = {}
            for u in members:
                total = 0
                for v in originals[u]:
                    for a in net.adjacency[v]:
                        if rep[net.head[a]] != u:
                            total += state.x[a ^ 1] - state.x[a]
                b[u] = total
            cycle = rec["cycle"]
            tails = [rep[net.tail[a]] for a in cycle]
            if rep[net.head[cycle[-1]]] != tails[0] or any(
                rep[net.head[cycle[i]]] != tails[i + 1] for i in range(len(cycle) - 1)
            ):
                raise AssertionError("contraction record is not a cycle")
            term = [i for i, u in enumerate(tails) if self.is_terminal(u)]
            if term:
                start = term[0]
                cycle = cycle[start:] + cycle[:start]
                tails = tails[start:] + tails[:start]
            # flow on cycle arc i: y_i = c + prefix_i, prefix_i = sum_{l=1..i} b(tail_l)
            prefix = [0]
            for u in tails[1:]:
                prefix.append(prefix[-1] + b[u])
            c = -min(prefix)
            if term:
                c = max(0, c)
            bound = 1 << (rec["dexp"] + 2 * q)
            for a, p in zip(cycle, prefix):
                y = c + p
                if y < 0:
                    raise AssertionError("negative expansion flow")
                if y == 0:
                    continue
                if y > state.residual(a):
                    raise RuntimeError(f"expansion flow {y} exceeds residual of arc {a}")
                if self.audit and y >= bound:
                    self.counters.violation("expansion_bound", f"y' = {y} >= M delta on arc {a}")
                state.push(a, y)
            for u in members:
                if self.is_terminal(u):
                    continue
                ex = 0
                for v in originals[u]:
                    for a in net.adjacency[v]:
                        if rep[net.head[a]] != u:
                            ex += state.x[a ^ 1] - state.x[a]
                if ex:
                    raise AssertionError(f"member {u} keeps excess {ex} after expansion")
            if len(member_set) != len(members):
                raise AssertionError("duplicate members in contraction record")


def enhanced_solve(net, k=None, audit=False, counters=None, jumps=True,
                   gamma2_rule="inverse", shift=DEFAULT_SHIFT):
    """Run the enhanced solver; returns a SolveResult with ``source_side`` set.

    On ``ShiftOverflow`` the run starts over at four times the shift.
    """
    while True:
        solver = EnhancedSolver(net, k, audit, None, jumps, gamma2_rule, shift)
        try:
            result = solver.run()
        except ShiftOverflow:
            if shift >= 4096:
                raise
            shift *= 4
            continue
        break
    if counters is not None:
        # hand the tallies to the caller's object
        vars(counters).update(vars(result.counters))
        result.counters = counters
    result.params = solver.params
    return result
