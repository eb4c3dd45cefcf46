import numpy as np
import pytest
from scipy import stats as sps

from zeiger.audit import AuditError, audit_zk, reveal_histograms
from zeiger.grid import parse_grid
from zeiger.protocol import ProverBehavior, run_protocol
from zeiger.simulator import simulate_transcript


def event_skeleton(t):
    return [(ev["ev"], ev.get("site"), ev.get("row")) for ev in t.events]


def test_simulator_structure_matches_real_run(fig1_grid, fig1_solution):
    _, real, _ = run_protocol(fig1_grid, ProverBehavior.honest(fig1_solution), seed=11)
    sim = simulate_transcript(fig1_grid, seed=999)
    assert event_skeleton(real) == event_skeleton(sim)


def test_simulator_structure_for_degenerate_sightlines():
    g = parse_grid("R. L.\nR. L.")
    from zeiger.grid import Filling

    f = Filling([[1, 1], [1, 1]])
    _, real, _ = run_protocol(g, ProverBehavior.honest(f), seed=0)
    sim = simulate_transcript(g, seed=0)
    assert event_skeleton(real) == event_skeleton(sim)


def test_simulator_deterministic(fig1_grid):
    a = simulate_transcript(fig1_grid, seed=4)
    b = simulate_transcript(fig1_grid, seed=4)
    assert a.events == b.events


def test_reveal_histograms_sites(fig1_grid, fig1_solution):
    _, t, _ = run_protocol(fig1_grid, ProverBehavior.honest(fig1_solution), seed=2)
    hists = reveal_histograms(t)
    b = fig1_grid.max_value + 1
    assert set(hists) == {
        ("copy", b),
        ("setsize", b),
        ("compare", b + 1),
        *{("sum", i + 1) for i in range(2, b + 1)},
    }
    # one copy reveal per cell and per sightline cell: sum(t_c) + 25 = 102
    assert hists[("copy", b)].sum() == 102
    assert hists[("compare", b + 1)].sum() == 25


def test_compare_counts_only_first_row(fig1_grid):
    sim = simulate_transcript(fig1_grid, seed=1)
    hists = reveal_histograms(sim)
    assert hists[("compare", 6)].sum() == 25


def test_normalize_shift_equals_revealed_position(fig1_grid, fig1_solution):
    _, t, _ = run_protocol(fig1_grid, ProverBehavior.honest(fig1_solution), seed=3)
    events = t.events
    for i, ev in enumerate(events):
        if ev["ev"] == "normalize":
            prev = events[i - 1]
            assert prev["ev"] == "reveal"
            marker = {"copy": "HC", "sum": "H"}[prev["site"]]
            assert prev["faces"].index(marker) == ev["shift"]


def test_real_reveal_positions_uniform_many_runs(fig1_grid, fig1_solution):
    total = {}
    for i in range(60):
        _, t, _ = run_protocol(fig1_grid, ProverBehavior.honest(fig1_solution), seed=5000 + i)
        for key, counts in reveal_histograms(t).items():
            total[key] = total.get(key, 0) + counts
    for key, counts in total.items():
        assert sps.chisquare(counts).pvalue >= 0.001, key


def test_audit_requires_enough_trials(fig1_grid, fig1_solution):
    with pytest.raises(AuditError, match="at least"):
        audit_zk(fig1_grid, fig1_solution, trials=10, alpha=0.001)


def test_audit_report_shape(fig1_grid, fig1_solution):
    report = audit_zk(fig1_grid, fig1_solution, trials=1000, alpha=0.001, seed=7)
    assert report["pass"] is True
    sites = {s["site"] for s in report["sites"]}
    assert sites == {"copy", "setsize", "sum", "compare"}
    for s in report["sites"]:
        assert s["samples_real"] == s["samples_sim"]
        assert sum(s["real_counts"]) == s["samples_real"]
