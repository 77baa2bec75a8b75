from algorithms.selfcheck import CheckTracker, run_selfcheck
from data.lattices import A8, G


def test_builtin_constants_pass():
    tracker = run_selfcheck()
    assert tracker.ok, tracker.failures()
    assert tracker.lines()[-1] == f"{len(tracker.names)}/{len(tracker.names)} checks passed"
    assert "G^T A8 G = 2*I8" in tracker.names


def test_corrupted_g_is_named():
    bad = [list(row) for row in G]
    bad[0][0] += 1
    tracker = run_selfcheck(g=bad)
    assert not tracker.ok
    assert "G^T A8 G = 2*I8" in tracker.failures()


def test_asymmetric_a8_stops_early():
    bad = [list(row) for row in A8]
    bad[0][1] += 1
    tracker = run_selfcheck(a8=bad)
    assert tracker.failures() == ["A8 is a valid Gram matrix"]


def test_output_is_deterministic():
    assert run_selfcheck().lines() == run_selfcheck().lines()


def test_tracker_bookkeeping():
    tracker = CheckTracker()
    tracker.update("a", True)
    tracker.update("b", False, "off by one")
    assert tracker.summary() == {"checks": 2, "passed": 1, "failed": ["b"]}
    assert tracker.lines() == ["PASS a", "FAIL b: off by one", "1/2 checks passed"]
    assert not tracker.ok
    assert CheckTracker().ok
