import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from conelab.algebra import AlgebraShape, random_element

settings.register_profile(
    "conelab", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("conelab")

SHAPES = [AlgebraShape([2]), AlgebraShape([3]), AlgebraShape([2, 3]), AlgebraShape([1, 2])]

shapes = st.sampled_from(SHAPES)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def pd(shape, seed, lo=0.1, hi=10.0):
    return random_element(shape, "PositiveInvertible", (lo, hi), seed)


def dense_eigh(a):
    """Independent oracle: numpy's LAPACK eigh per block."""
    return [np.linalg.eigvalsh(b) for b in a.blocks]


def dense_fn(a, f):
    out = []
    for b in a.blocks:
        w, v = np.linalg.eigh(b)
        out.append((v * f(w)) @ v.conj().T)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one PASS/FAIL line per acceptance criterion, shown in the terminal summary
_CRITERIA: dict[int, list] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    n = dict(report.user_properties).get("criterion")
    if n is None:
        return
    entry = _CRITERIA.setdefault(n, [True, []])
    entry[0] = entry[0] and report.passed
    entry[1].extend(v for k, v in report.user_properties if k == "detail")


@pytest.fixture
def criterion(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    record_property("criterion", marker.args[0])

    def note(text: str) -> None:
        record_property("detail", text)

    return note


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, details = _CRITERIA[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
        if details:
            line += "  (" + "; ".join(details) + ")"
        terminalreporter.write_line(line)
