"""Shared fixtures: backend parametrization, kernel warmup, acceptance summary."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from specdetect import backend

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def lanes():
    return backend.available_backends()


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels(lanes):
    # Touch every kernel once per lane so compile / cache-load cost never lands
    # inside a timed or deadline-checked test body.
    for name in lanes:
        k = backend.resolve_backend(name)
        v = np.array([1.0, -1.0, 0.5, -0.5, 0.25])
        k.dft_direct(v)
        k.fft(v)  # non-power-of-two path
        k.fft(v[:4])  # power-of-two path
        k.stft_frames(np.arange(8.0), np.ones(4), 2)
        k.sample_indices(
            np.array([[0.5, 1.0]]),
            np.array([2], dtype=np.int64),
            np.array([[0.3]]),
        )
        k.batch_half_energy(np.array([[1.0, -1.0]]))
    yield


@pytest.fixture(params=backend.available_backends())
def lane(request):
    """Run the test once per installed compute backend."""
    backend.set_backend(request.param)
    yield request.param
    backend.set_backend(None)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rank = {"passed": 0, "skipped": 1, "failed": 2, "error": 2}
    seen = {}
    for outcome in ("passed", "skipped", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            base = nodeid.split("::")[-1].split("[")[0]
            prev = seen.get(base)
            if prev is None or rank[outcome] > rank[prev]:
                seen[base] = outcome
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for base in sorted(seen):
        outcome = seen[base]
        label = {0: "PASS", 1: "SKIP"}.get(rank[outcome], "FAIL")
        pretty = base[len("test_") :].replace("_", " ") if base.startswith("test_") else base
        terminalreporter.write_line(f"[{label}] {pretty}")
