"""Run counters, audit findings and the flat ``key value`` report."""

import math
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

Event = namedtuple("Event", "kind data")

PUSH_CLASSES = ("saturating", "large", "medium", "other")


@dataclass
class Counters:
    n: int = 0
    m: int = 0
    audit: bool = False
    pushes: dict = field(default_factory=lambda: {c: 0 for c in PUSH_CLASSES})
    frf_pushes: int = 0
    frf_pulls: int = 0
    frf_adds: int = 0
    frf_deletes: int = 0
    frf_stranded: int = 0
    rescues: int = 0
    relabels: int = 0
    relabels_per_node: dict = field(default_factory=dict)
    phases: int = 0
    useful_phases: int = 0
    useless_phases: int = 0
    jumps: int = 0
    contractions: int = 0
    newly_violating: int = 0
    medium_arc_occurrences: int = 0
    phase_deltas: list = field(default_factory=list)
    phase_flows: list = field(default_factory=list)
    phase_large: list = field(default_factory=list)
    phase_pushes: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    _flow: Fraction = Fraction(0)
    _large: int = 0
    _count: int = 0
    _frf_nonempty: bool = False

    def violation(self, name, detail=""):
        self.violations.append((name, detail))

    @property
    def total_pushes(self):
        return sum(self.pushes.values())


def record(counters, event):
    """Tally one solver event."""
    kind, data = event
    if kind == "push":
        cls, amount = data
        counters.pushes[cls] += 1
        counters._count += 1
        counters._flow += amount
        if cls == "large":
            counters._large += 1
    elif kind == "frf_push":
        counters.frf_pushes += 1
        counters._count += 1
        counters._flow += data
    elif kind == "frf_pull":
        counters.frf_pulls += 1
        counters._count += 1
        counters._flow += data
    elif kind == "relabel":
        counters.relabels += 1
        counters.relabels_per_node[data] = counters.relabels_per_node.get(data, 0) + 1
    elif kind == "phase_start":
        counters.phases += 1
        counters.phase_deltas.append(data)
        counters._flow = Fraction(0)
        counters._large = 0
        counters._count = 0
        counters._frf_nonempty = False
    elif kind == "frf_nonempty":
        counters._frf_nonempty = True
    elif kind == "phase_end":
        counters.phase_flows.append(counters._flow)
        counters.phase_large.append(counters._large)
        counters.phase_pushes.append(counters._count)
        if counters._count or counters._frf_nonempty:
            counters.useful_phases += 1
        else:
            counters.useless_phases += 1
    elif kind == "jump":
        counters.jumps += 1
    elif kind == "contraction":
        counters.contractions += 1
        if counters.n and counters.contractions > counters.n - 1:
            counters.violation("contractions", f"{counters.contractions} > n-1")
    elif kind == "frf_add":
        counters.frf_adds += 1
    elif kind == "frf_delete":
        counters.frf_deletes += 1
    elif kind == "stranded":
        counters.frf_stranded += 1
    elif kind == "rescue":
        counters.rescues += 1
        counters._count += 1
        counters._flow += data
    elif kind == "newly_violating":
        counters.newly_violating += 1
    elif kind == "medium_arcs":
        counters.medium_arc_occurrences += data
    else:
        raise ValueError(f"unknown event {kind!r}")
    return counters


def _ratio(x):
    return f"{float(x):.6f}"


def max_phase_flow_ratio(counters):
    """max over phases of (flow pushed) / (n^2 * delta)."""
    n2 = counters.n * counters.n
    best = Fraction(0)
    for delta, flow in zip(counters.phase_deltas, counters.phase_flows):
        if delta:
            best = max(best, Fraction(flow) / (n2 * Fraction(delta)))
    return best


def report(counters, params=None):
    """Flat report: one ``key value`` pair per line, sorted keys within groups."""
    params = dict(params or {})
    n, m = counters.n, counters.m
    k = params.get("k")
    rows = list(params.items())
    rows += [
        ("n", n),
        ("m", m),
        ("phases", counters.phases),
        ("phases_useful", counters.useful_phases),
        ("phases_useless", counters.useless_phases),
        ("jumps", counters.jumps),
    ]
    rows += [(f"pushes_{c}", counters.pushes[c]) for c in PUSH_CLASSES]
    rows += [
        ("pushes_frf", counters.frf_pushes),
        ("pulls_frf", counters.frf_pulls),
        ("frf_adds", counters.frf_adds),
        ("frf_deletes", counters.frf_deletes),
        ("frf_stranded", counters.frf_stranded),
        ("rescues", counters.rescues),
        ("relabels", counters.relabels),
        ("relabels_max_per_node", max(counters.relabels_per_node.values(), default=0)),
        ("contractions", counters.contractions),
        ("newly_violating", counters.newly_violating),
        ("medium_arc_occurrences", counters.medium_arc_occurrences),
        ("ratio_phase_flow", _ratio(max_phase_flow_ratio(counters))),
        ("ratio_large_pushes", _ratio(max(counters.phase_large, default=0) / max(n * n, 1))),
    ]
    if k and n > 1 and m:
        rows.append(("ratio_phases", _ratio(counters.phases / (m * math.log(n, k)))))
    rows.append(("violations", len(counters.violations)))
    return "\n".join(f"{key} {value}" for key, value in rows) + "\n"


def parse_report(text):
    out = {}
    for line in text.splitlines():
        if line.strip():
            key, value = line.split(" ", 1)
            out[key] = value
    return out
