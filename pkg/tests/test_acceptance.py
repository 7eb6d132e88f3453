"""Acceptance criteria 1-7.

Each test records one PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py).  Solver runs are shared between criteria.
"""

import os
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache

import pytest

from conftest import ACCEPTANCE_LINES
from lmesflow import (
    enhanced_solve, gpr_solve, lmes_solve, min_cut, oracle_max_flow, pathological, verify_flow,
)
from lmesflow.corpus import acceptance_corpus, layered_corpus, random_corpus
from lmesflow.dimacs import write_dimacs
from lmesflow.lmes import phase_bound
from lmesflow.oracle import cut_capacity
from lmesflow.params import derive_params

LMES_KS = (2, 4, 8)
ENHANCED_KS = (4, 8, 16)
SOLVERS = (
    [("generic", None, lambda net, audit: gpr_solve(net, audit=audit))]
    + [("lmes", k, lambda net, audit, k=k: lmes_solve(net, k, audit=audit)) for k in LMES_KS]
    + [("enhanced", k, lambda net, audit, k=k: enhanced_solve(net, k, audit=audit))
       for k in ENHANCED_KS]
)

# audit finding names grouped by the criterion they belong to
INVARIANT_FINDINGS = {
    "invariant1", "label_bound", "invariant2", "special_excess", "special_mod",
    "violating_bound", "frf_structure", "frf_root_ehat", "frf_no_path", "ehat_bound",
    "excess_bound", "selection", "phase_end", "tracker",
}
COUNTER_FINDINGS = {
    "phase_flow", "large_pushes", "relabel_bound", "contractions", "phase_count",
    "violating_duration", "contraction_deadline", "expansion_bound",
}
ABUNDANCE_FINDINGS = {"abundance", "abundant_residual", "abundance_monotone"}


@contextmanager
def criterion(num, label):
    ACCEPTANCE_LINES[num] = f"criterion {num}: FAIL {label}"
    info = {}
    yield info
    extra = f" ({info['detail']})" if info.get("detail") else ""
    ACCEPTANCE_LINES[num] = f"criterion {num}: PASS {label}{extra}"


@lru_cache(maxsize=None)
def corpus_runs():
    """Every solver configuration on the 550-instance corpus, with the oracle value."""
    t0 = time.perf_counter()
    runs = []
    for name, net in acceptance_corpus():
        _, expected = oracle_max_flow(net)
        for algo, k, solve in SOLVERS:
            runs.append((name, net, algo, k, expected, solve(net, False)))
    return runs, time.perf_counter() - t0


@lru_cache(maxsize=None)
def audit_runs():
    """LMES and enhanced in audit mode on 50 random and 50 layered instances."""
    nets = random_corpus()[:50] + layered_corpus()
    runs = []
    for name, net in nets:
        for algo, k, solve in SOLVERS[1:]:
            runs.append((name, net, algo, k, solve(net, True)))
    return runs


def findings(names):
    out = []
    for name, _, algo, k, res in audit_runs():
        out += [(name, algo, k, v, d) for v, d in res.counters.violations if v in names]
    return out


def test_criterion_1_oracle_equivalence():
    with criterion(1, "all solvers match the oracle, verify_flow ok") as info:
        runs, secs = corpus_runs()
        bad = []
        for name, net, algo, k, expected, res in runs:
            rep = verify_flow(net, res.flow)
            if res.value != expected or not rep.ok or rep.value != expected:
                bad.append((name, algo, k, res.value, expected))
        assert bad == []
        assert len(runs) == 550 * len(SOLVERS)
        assert secs < 120, f"corpus took {secs:.1f}s"
        info["detail"] = f"{len(runs)} runs in {secs:.1f}s"


def test_criterion_2_cut_equals_value():
    with criterion(2, "minimum cut capacity equals the flow value") as info:
        runs, _ = corpus_runs()
        bad = []
        for name, net, algo, k, _, res in runs:
            S, _, cap = min_cut(net, res.flow)
            if cap != res.value:
                bad.append((name, algo, k, "residual cut"))
            if res.source_side is not None and cut_capacity(net, res.source_side) != res.value:
                bad.append((name, algo, k, "solver cut"))
        assert bad == []
        info["detail"] = f"{len(runs)} runs"


def test_criterion_3_audit_invariants():
    with criterion(3, "audit mode finds no invariant violations") as info:
        assert findings(INVARIANT_FINDINGS) == []
        info["detail"] = f"{len(audit_runs())} audited runs"


def test_criterion_4_counter_bounds():
    with criterion(4, "counter bounds hold") as info:
        runs, _ = corpus_runs()
        bad = []
        for name, net, algo, k, _, res in runs:
            c = res.counters
            n2 = net.n * net.n
            if algo == "generic":
                continue
            for delta, flow in zip(c.phase_deltas, c.phase_flows):
                ratio = Fraction(flow) / (n2 * Fraction(delta))
                if (algo == "lmes" and ratio >= 2) or (algo == "enhanced" and ratio > 5):
                    bad.append((name, algo, k, "phase flow", ratio))
            if max(c.phase_large, default=0) > 4 * n2:
                bad.append((name, algo, k, "large pushes"))
            if max(c.relabels_per_node.values(), default=0) > net.n + 1:
                bad.append((name, algo, k, "relabels per node"))
            if c.contractions > max(net.n - 1, 0):
                bad.append((name, algo, k, "contractions"))
            if algo == "lmes" and c.phases > phase_bound(net.U, k):
                bad.append((name, algo, k, "phases", c.phases, phase_bound(net.U, k)))
        assert bad == []
        # violating duration (<= 2Q+1) and contraction deadlines are audit-only checks
        assert findings(COUNTER_FINDINGS) == []
        info["detail"] = f"{len(runs)} runs, {len(audit_runs())} audited"


def _path_phases(alpha, jumps):
    net = pathological(4, alpha)
    res = enhanced_solve(net, 4, jumps=jumps)
    assert res.value == 4 ** alpha + 1
    assert verify_flow(net, res.flow).ok
    return res.counters.phases


ALPHAS = (10, 20, 40)


def test_criterion_5_pathological_jumps():
    with criterion(5, "pathological family: value k^alpha+1, enhanced phases flat in alpha") as info:
        phases = {a: _path_phases(a, True) for a in ALPHAS}
        for a in ALPHAS:
            assert lmes_solve(pathological(4, a), 4).value == 4 ** a + 1
        assert len(set(phases.values())) == 1
        info["detail"] = f"phases {phases}"


@pytest.mark.xfail(
    strict=True,
    reason="without jumps the enhanced solver still finishes in a constant number of "
           "phases on this family; see the decisions ledger",
)
def test_criterion_5_pathological_without_jumps_grows_linearly():
    ACCEPTANCE_LINES["5b"] = "criterion 5: FAIL jumps disabled, phases grow linearly in alpha"
    phases = {a: _path_phases(a, False) for a in ALPHAS}
    ACCEPTANCE_LINES["5b"] += f" (phases {phases})"
    assert phases[10] < phases[20] < phases[40]
    assert phases[40] >= 40 // 2
    ACCEPTANCE_LINES["5b"] = "criterion 5: PASS jumps disabled, phases grow linearly in alpha"


def test_criterion_6_abundance_is_monotone():
    with criterion(6, "abundant arcs stay abundant with r > 0") as info:
        assert findings(ABUNDANCE_FINDINGS) == []
        info["detail"] = f"{len(audit_runs())} audited runs"


def _cli(args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    subprocess.run([sys.executable, "-m", "lmesflow", *args], check=True, env=env)


def test_criterion_7_byte_identical_runs(tmp_path):
    with criterion(7, "two runs give byte-identical solution and counter files") as info:
        nets = [random_corpus()[7], random_corpus()[123], layered_corpus()[3],
                ("pathological", pathological(4, 10))]
        checked = 0
        for name, net in nets:
            inst = tmp_path / f"{name}.max"
            inst.write_text(write_dimacs(net))
            for algo, k in (("generic", None), ("lmes", 4), ("enhanced", 8)):
                outs = []
                for run in (1, 2):
                    sol, cnt = tmp_path / f"{run}.sol", tmp_path / f"{run}.cnt"
                    args = ["solve", str(inst), "--algo", algo, "-o", str(sol), "--counters", str(cnt)]
                    if k:
                        args += ["--k", str(k)]
                    _cli(args, hashseed=run)
                    outs.append((sol.read_bytes(), cnt.read_bytes()))
                assert outs[0] == outs[1], (name, algo)
                checked += 1
        info["detail"] = f"{checked} instance/solver pairs, different hash seeds"
