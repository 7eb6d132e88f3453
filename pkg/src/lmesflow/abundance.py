"""Arc classes, abundance and node imbalances for the enhanced solver.

Every live node keeps its out-arcs sorted by non-increasing bi-capacity, with
two pointers: arcs before ``ptr_large`` are large, arcs before ``ptr_nonsmall``
are large or medium.  Delta only shrinks, so the pointers only advance and each
arc changes class at most twice over a run.

A large arc direction that is not yet abundant sits in a bucket keyed by the
largest delta exponent at which its residual reaches ``M * delta``; at phase
start every bucket with key >= the new exponent is emptied into the abundant
set.  Keys come from ``int.bit_length``, so no division or logarithm is needed.
Abundance is sticky: once set it is never cleared.

``imb`` holds the imbalance e(v) + (incoming anti-abundant residual) -
(outgoing anti-abundant residual).  Pushes on anti-abundant pairs leave it
unchanged, so it moves only with pushes on other pairs and when abundance
changes.
"""

import heapq


class AbundanceTracker:
    def __init__(self, state, params):
        self.state = state
        self.params = params
        net = state.net
        m, n = net.m, net.n
        self.large = bytearray(m)
        self.medium = bytearray(m)
        self.abundant = bytearray(m)
        self.ptr_large = [0] * n
        self.ptr_nonsmall = [0] * n
        self.bucket_of = [None] * m
        self.buckets = {}
        self._keys = []
        self.abundant_in = [[] for _ in range(n)]
        self.bi_queue = []
        self.n_medium = 0
        self.imb = list(state.e)
        self.max_bucket_shift = 0
        self.internal = bytearray(m)

    # helpers

    def bicap(self, a):
        cap = self.state.cap
        return cap[a] + cap[a ^ 1]

    def is_anti(self, a):
        return self.abundant[a ^ 1] and not self.abundant[a]

    def is_bi(self, a):
        return self.abundant[a] and self.abundant[a ^ 1]

    def has_medium(self, v):
        return self.ptr_large[v] < self.ptr_nonsmall[v]

    def key(self, r):
        """Largest delta exponent e with M * 2**e <= r."""
        return r.bit_length() - 1 - 2 * self.params.eps_bits

    def _unbucket(self, a):
        old = self.bucket_of[a]
        if old is not None:
            self.buckets[old].discard(a)
            self.bucket_of[a] = None
        return old

    def _rebucket(self, a):
        r = self.state.residual(a)
        old = self._unbucket(a)
        if r <= 0:
            return
        key = self.key(r)
        if old is not None:
            self.max_bucket_shift = max(self.max_bucket_shift, abs(key - old))
        bucket = self.buckets.get(key)
        if bucket is None:
            bucket = self.buckets[key] = set()
            heapq.heappush(self._keys, -key)
        bucket.add(a)
        self.bucket_of[a] = key

    # events

    def on_push(self, a, delta):
        """Listener for every flow change on arc ``a`` (raw units)."""
        rep = self.state.rep
        net = self.state.net
        if not (self.is_anti(a) or self.is_anti(a ^ 1)):
            self.imb[rep[net.tail[a]]] -= delta
            self.imb[rep[net.head[a]]] += delta
        for b in (a, a ^ 1):
            if self.large[b] and not self.abundant[b]:
                self._rebucket(b)

    def _make_abundant(self, b):
        state = self.state
        net = state.net
        rep = state.rep
        i, j = rep[net.tail[b]], rep[net.head[b]]
        self._unbucket(b)
        if self.abundant[b ^ 1]:
            # b was anti-abundant and the pair is now bi-abundant
            r = state.residual(b)
            self.imb[j] -= r
            self.imb[i] += r
            self.bi_queue.append(b & ~1)
        else:
            # the reverse becomes anti-abundant
            r = state.residual(b ^ 1)
            self.imb[i] += r
            self.imb[j] -= r
        self.abundant[b] = 1
        self.abundant_in[j].append(b)

    def start_phase(self, scale, alive):
        """Advance class pointers and abundance for delta = 2**scale.dexp.

        Returns the arc directions that became abundant.
        """
        state = self.state
        adj = state.adj
        cap = state.cap
        two_m, eps5, m_delta = scale.two_m, scale.eps5, scale.m_delta
        newly_large = []
        for v in alive:
            lst = adj[v]
            p = self.ptr_large[v]
            while p < len(lst) and cap[lst[p]] + cap[lst[p] ^ 1] >= two_m:
                a = lst[p]
                if not self.large[a]:
                    if self.medium[a]:
                        self.medium[a] = self.medium[a ^ 1] = 0
                        self.n_medium -= 1
                    self.large[a] = self.large[a ^ 1] = 1
                    newly_large.append(a)
                p += 1
            self.ptr_large[v] = p
            p = max(self.ptr_nonsmall[v], p)
            while p < len(lst) and cap[lst[p]] + cap[lst[p] ^ 1] >= eps5:
                a = lst[p]
                if not self.large[a] and not self.medium[a]:
                    self.medium[a] = self.medium[a ^ 1] = 1
                    self.n_medium += 1
                p += 1
            self.ptr_nonsmall[v] = p
        became = []
        for a in newly_large:
            for b in (a, a ^ 1):
                if state.residual(b) >= m_delta:
                    became.append(b)
                else:
                    self._rebucket(b)
        while self._keys and -self._keys[0] >= scale.dexp:
            key = -heapq.heappop(self._keys)
            bucket = self.buckets.pop(key, set())
            became.extend(sorted(bucket))
            for b in bucket:
                self.bucket_of[b] = None
        for b in became:
            if not self.abundant[b]:
                self._make_abundant(b)
        return became

    def contract(self, w, members, newly_internal):
        """Fold the members' data into merged node w after a contraction."""
        state = self.state
        net = state.net
        rep = state.rep
        for a in newly_internal:
            for b in (a, a ^ 1):
                self.internal[b] = 1
                self._unbucket(b)
            if self.medium[a] and not self.large[a]:
                self.n_medium -= 1
        total = 0
        merged_in = []
        for u in members:
            total += self.imb[u]
            merged_in.extend(self.abundant_in[u])
            if u != w:
                self.imb[u] = 0
                self.abundant_in[u] = []
                self.ptr_large[u] = self.ptr_nonsmall[u] = 0
        self.imb[w] = total
        self.abundant_in[w] = [b for b in merged_in if rep[net.tail[b]] != w]
        lst = state.adj[w]
        self.ptr_large[w] = sum(1 for a in lst if self.large[a])
        self.ptr_nonsmall[w] = sum(1 for a in lst if self.large[a] or self.medium[a])

    def pop_bi_abundant(self, mergeable):
        """First queued bi-abundant, non-internal pair accepted by ``mergeable``."""
        keep = []
        found = None
        for p in self.bi_queue:
            if self.internal[p]:
                continue
            if found is None and mergeable(p):
                found = p
                continue
            keep.append(p)
        self.bi_queue = keep
        return found

    # audits

    def imbalance_from_scratch(self, v):
        state = self.state
        net = state.net
        rep = state.rep
        total = state.e[v]
        for a in state.adj[v]:
            if self.is_anti(a):
                total -= state.residual(a)
            if self.is_anti(a ^ 1):
                total += state.residual(a ^ 1)
        return total

    def audit(self, scale, alive):
        """Compare every maintained quantity with a brute-force rescan."""
        problems = []
        state = self.state
        net = state.net
        rep = state.rep
        seen = set()
        for v in alive:
            medium_here = False
            for a in state.adj[v]:
                if rep[net.head[a]] == v:
                    problems.append(f"internal arc {a} in adjacency of {v}")
                    continue
                bc = self.bicap(a)
                want_large = bc >= scale.two_m
                want_medium = not want_large and bc >= scale.eps5
                if bool(self.large[a]) != want_large or bool(self.medium[a]) != want_medium:
                    problems.append(f"arc {a} class flags differ from bi-capacity {bc}")
                medium_here |= want_medium
                seen.add(a & ~1)
                r = state.residual(a)
                if self.large[a] and not self.abundant[a]:
                    # a large arc past M*delta turns abundant only at the next phase start
                    want = self.key(r) if r > 0 else None
                    if self.bucket_of[a] != want:
                        problems.append(f"arc {a} in bucket {self.bucket_of[a]}, expected {want}")
                elif self.bucket_of[a] is not None:
                    problems.append(f"arc {a} bucketed but not a pending large arc")
            if medium_here != self.has_medium(v):
                problems.append(f"node {v} medium-arc pointer disagrees")
            if self.imb[v] != self.imbalance_from_scratch(v):
                problems.append(f"node {v} imbalance {self.imb[v]} != {self.imbalance_from_scratch(v)}")
            want_in = sorted(b for b in range(net.m) if self.abundant[b] and not self.internal[b]
                             and rep[net.head[b]] == v and rep[net.tail[b]] != v)
            if sorted(b for b in self.abundant_in[v] if rep[net.tail[b]] != v) != want_in:
                problems.append(f"node {v} abundant in-arc list differs")
        n_medium = sum(1 for p in seen if self.medium[p] and not self.large[p])
        if n_medium != self.n_medium:
            problems.append(f"medium pair count {self.n_medium} != {n_medium}")
        return problems

    def check_phase_start(self, scale):
        """Large directions with residual >= M*delta must all be abundant now."""
        state = self.state
        net = state.net
        rep = state.rep
        problems = []
        for b in range(net.m):
            if self.internal[b] or rep[net.tail[b]] == rep[net.head[b]]:
                continue
            if self.large[b] and not self.abundant[b] and state.residual(b) >= scale.m_delta:
                problems.append(f"arc {b} qualifies as abundant but is not flagged")
        return problems
