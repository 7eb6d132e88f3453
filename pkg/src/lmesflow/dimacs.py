"""DIMACS max-flow input and a plain solution format.

Input::

    c comment
    p max <nodes> <arcs>
    n <id> s
    n <id> t
    a <tail> <head> <capacity>

Solution::

    s <value>
    f <tail> <head> <amount>

Node ids are 1-based in both.  Amounts are integers or ``p/q``.
"""

from fractions import Fraction

from .network import NetworkError, build_network

# arithmetic is unbounded; the cap only rejects absurd input
MAX_CAPACITY = 2 ** 128 - 1


class DimacsError(ValueError):
    """Malformed DIMACS text; ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message, line=0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class DimacsRangeError(DimacsError):
    """A number outside the accepted range."""


def _int(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise DimacsError(f"{what} {token!r} is not an integer", lineno) from None


def parse_dimacs(text):
    """Parse a DIMACS max-flow document into a Network."""
    n = m = None
    source = sink = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "max":
                raise DimacsError("expected 'p max <nodes> <arcs>'", lineno)
            n = _int(parts[2], lineno, "node count")
            m = _int(parts[3], lineno, "arc count")
            if n < 2 or m < 0:
                raise DimacsRangeError(f"bad sizes n={n} m={m}", lineno)
        elif tag == "n":
            if n is None:
                raise DimacsError("node line before problem line", lineno)
            if len(parts) != 3 or parts[2] not in ("s", "t"):
                raise DimacsError("expected 'n <id> s|t'", lineno)
            v = _int(parts[1], lineno, "node id")
            if not 1 <= v <= n:
                raise DimacsRangeError(f"node {v} outside 1..{n}", lineno)
            if parts[2] == "s":
                if source is not None:
                    raise DimacsError("duplicate source designator", lineno)
                source = v - 1
            else:
                if sink is not None:
                    raise DimacsError("duplicate sink designator", lineno)
                sink = v - 1
        elif tag == "a":
            if n is None:
                raise DimacsError("arc line before problem line", lineno)
            if len(parts) != 4:
                raise DimacsError("expected 'a <tail> <head> <capacity>'", lineno)
            i = _int(parts[1], lineno, "tail")
            j = _int(parts[2], lineno, "head")
            u = _int(parts[3], lineno, "capacity")
            for v in (i, j):
                if not 1 <= v <= n:
                    raise DimacsRangeError(f"node {v} outside 1..{n}", lineno)
            if u < 0 or u > MAX_CAPACITY:
                raise DimacsRangeError(f"capacity {u} outside 0..{MAX_CAPACITY}", lineno)
            if i == j:
                raise DimacsError(f"self-loop at node {i}", lineno)
            arcs.append((i - 1, j - 1, u))
        else:
            raise DimacsError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise DimacsError("missing problem line")
    if source is None or sink is None:
        raise DimacsError("missing source or sink designator")
    if len(arcs) != m:
        raise DimacsError(f"problem line announces {m} arcs, found {len(arcs)}")
    try:
        return build_network(n, arcs, source, sink)
    except NetworkError as exc:
        raise DimacsError(str(exc)) from None


def write_dimacs(net, comment=None):
    """Serialize the input arcs of a Network (parallel arcs already merged)."""
    lines = []
    if comment:
        lines.append(f"c {comment}")
    lines.append(f"p max {net.n} {len(net.input_arcs)}")
    lines.append(f"n {net.source + 1} s")
    lines.append(f"n {net.sink + 1} t")
    for a in net.input_arcs:
        lines.append(f"a {net.tail[a] + 1} {net.head[a] + 1} {net.orig_cap[a]}")
    return "\n".join(lines) + "\n"


def write_solution(net, flow, value):
    """``s <value>`` then one ``f`` line per arc with positive flow, by arc id."""
    lines = [f"s {value}"]
    for a in range(net.m):
        if flow[a] > 0:
            lines.append(f"f {net.tail[a] + 1} {net.head[a] + 1} {flow[a]}")
    return "\n".join(lines) + "\n"


def _amount(token, lineno):
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise DimacsError(f"amount {token!r} is not a number", lineno) from None
    return int(value) if value.denominator == 1 else value


def parse_solution(text):
    """Returns ``(value, [(tail, head, amount), ...])`` with 0-based nodes."""
    value = None
    flows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s" and len(parts) == 2:
            if value is not None:
                raise DimacsError("second value line", lineno)
            value = _amount(parts[1], lineno)
        elif parts[0] == "f" and len(parts) == 4:
            i = _int(parts[1], lineno, "tail")
            j = _int(parts[2], lineno, "head")
            flows.append((i - 1, j - 1, _amount(parts[3], lineno)))
        else:
            raise DimacsError("expected 's <value>' or 'f <tail> <head> <amount>'", lineno)
    if value is None:
        raise DimacsError("missing value line")
    return value, flows


def flow_vector(net, flows):
    """Map ``(tail, head, amount)`` triples onto arc ids of ``net``."""
    x = [0] * net.m
    for i, j, amount in flows:
        if not (0 <= i < net.n and 0 <= j < net.n):
            raise DimacsError(f"flow on unknown arc {i + 1}->{j + 1}")
        arcs = [a for a in net.adjacency[i] if net.head[a] == j]
        if not arcs:
            raise DimacsError(f"flow on unknown arc {i + 1}->{j + 1}")
        x[arcs[0]] += amount
    return x
