"""Per-label lists of medium and large excess nodes.

MSet and LSet are intrusive doubly linked lists, one per distance label, kept
in insertion order so the first node of a list is the oldest.  MaxML is the
highest label holding a medium or large node, MinL the lowest label holding a
large node (-1 if none), and NextL chains the non-empty large labels in
increasing order.  Selection is O(1); NextL is spliced in O(1) in the cases
the scaling loop produces (a new large level just below MinL) and by a short
walk otherwise.
"""

NONE, MEDIUM, LARGE = 0, 1, 2


class SelectionStructures:
    def __init__(self, n_nodes, n_levels):
        self.kind = [NONE] * n_nodes
        self.level = [-1] * n_nodes
        self.nxt = [-1] * n_nodes
        self.prv = [-1] * n_nodes
        self.head = {MEDIUM: [-1] * n_levels, LARGE: [-1] * n_levels}
        self.tail = {MEDIUM: [-1] * n_levels, LARGE: [-1] * n_levels}
        self.NextL = [0] * n_levels
        self.PrevL = [-1] * n_levels
        self.MaxML = 0
        self.MinL = -1

    @property
    def n_levels(self):
        return len(self.NextL)

    def _grow(self, level):
        extra = level + 1 - self.n_levels
        if extra <= 0:
            return
        for kind in (MEDIUM, LARGE):
            self.head[kind].extend([-1] * extra)
            self.tail[kind].extend([-1] * extra)
        self.NextL.extend([0] * extra)
        self.PrevL.extend([-1] * extra)

    def _splice_large_level(self, d):
        if self.MinL == -1:
            self.MinL = d
            self.NextL[d] = 0
            self.PrevL[d] = -1
        elif d < self.MinL:
            self.NextL[d] = self.MinL
            self.PrevL[self.MinL] = d
            self.PrevL[d] = -1
            self.MinL = d
        else:
            p = self.MinL
            while self.NextL[p] != 0 and self.NextL[p] < d:
                p = self.NextL[p]
            q = self.NextL[p]
            self.NextL[d] = q
            if q:
                self.PrevL[q] = d
            self.NextL[p] = d
            self.PrevL[d] = p

    def _unsplice_large_level(self, d):
        p, q = self.PrevL[d], self.NextL[d]
        if p == -1:
            self.MinL = q if q else -1
            if q:
                self.PrevL[q] = -1
        else:
            self.NextL[p] = q
            if q:
                self.PrevL[q] = p
        self.NextL[d] = 0
        self.PrevL[d] = -1

    def remove(self, v):
        kind = self.kind[v]
        if kind == NONE:
            return
        d = self.level[v]
        head, tail = self.head[kind], self.tail[kind]
        p, q = self.prv[v], self.nxt[v]
        if p == -1:
            head[d] = q
        else:
            self.nxt[p] = q
        if q == -1:
            tail[d] = p
        else:
            self.prv[q] = p
        self.kind[v] = NONE
        self.level[v] = -1
        self.nxt[v] = self.prv[v] = -1
        if kind == LARGE and head[d] == -1:
            self._unsplice_large_level(d)
        if d == self.MaxML:
            while self.MaxML > 0 and self.head[MEDIUM][self.MaxML] == -1 and self.head[LARGE][self.MaxML] == -1:
                self.MaxML -= 1

    def _insert(self, v, kind, d):
        self._grow(d)
        head, tail = self.head[kind], self.tail[kind]
        was_empty = head[d] == -1
        last = tail[d]
        self.prv[v] = last
        self.nxt[v] = -1
        if last == -1:
            head[d] = v
        else:
            self.nxt[last] = v
        tail[d] = v
        self.kind[v] = kind
        self.level[v] = d
        if kind == LARGE and was_empty:
            self._splice_large_level(d)
        if d > self.MaxML:
            self.MaxML = d

    def update(self, v, kind, d):
        """Put v in the list for (kind, d), or in none when kind is NONE."""
        if self.kind[v] == kind and self.level[v] == d:
            return
        self.remove(v)
        if kind != NONE:
            self._insert(v, kind, d)

    def rebuild(self, entries):
        """Start-of-phase rebuild from (node, kind, level) triples."""
        for v in range(len(self.kind)):
            self.kind[v] = NONE
            self.level[v] = -1
            self.nxt[v] = self.prv[v] = -1
        for kind in (MEDIUM, LARGE):
            h, t = self.head[kind], self.tail[kind]
            for d in range(len(h)):
                h[d] = t[d] = -1
        for d in range(self.n_levels):
            self.NextL[d] = 0
            self.PrevL[d] = -1
        self.MaxML = 0
        self.MinL = -1
        for v, kind, d in entries:
            if kind != NONE:
                self._insert(v, kind, d)

    def select(self):
        """First node of LSet(MinL), else of MSet(MaxML), else None."""
        if self.MinL >= 0:
            return self.head[LARGE][self.MinL]
        v = self.head[MEDIUM][self.MaxML]
        return None if v == -1 else v

    def members(self, kind, d):
        out = []
        v = self.head[kind][d] if d < self.n_levels else -1
        while v != -1:
            out.append(v)
            v = self.nxt[v]
        return out

    def audit(self, expected):
        """Compare against a from-scratch map node -> (kind, level); returns problems."""
        problems = []
        for v in range(len(self.kind)):
            want = expected.get(v, (NONE, -1))
            if want[0] == NONE:
                want = (NONE, -1)
            have = (self.kind[v], self.level[v])
            if have != want:
                problems.append(f"node {v}: stored {have}, expected {want}")
        seen = set()
        for kind in (MEDIUM, LARGE):
            for d in range(self.n_levels):
                for v in self.members(kind, d):
                    if (self.kind[v], self.level[v]) != (kind, d):
                        problems.append(f"node {v} linked in wrong list")
                    seen.add(v)
        if seen != {v for v, (k, _) in expected.items() if k != NONE}:
            problems.append("list membership differs from expectation")
        levels = [w[1] for w in expected.values() if w[0] != NONE]
        large = sorted({w[1] for w in expected.values() if w[0] == LARGE})
        if self.MaxML != max(levels, default=0):
            problems.append(f"MaxML {self.MaxML} != {max(levels, default=0)}")
        if self.MinL != (large[0] if large else -1):
            problems.append(f"MinL {self.MinL} != {large[0] if large else -1}")
        for a, b in zip(large, large[1:] + [0]):
            if self.NextL[a] != b:
                problems.append(f"NextL({a}) = {self.NextL[a]}, expected {b}")
        return problems
