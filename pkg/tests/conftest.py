import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from valdiff.ordered_groups import LevelDescriptor, OrderedGroup

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PRIMES = (2, 3, 5, 7)

small_pos = st.builds(Fraction, st.integers(1, 6), st.integers(1, 6))

levels = st.one_of(
    st.builds(LevelDescriptor.cyclic, small_pos),
    st.builds(LevelDescriptor.localized, small_pos,
              st.sets(st.sampled_from(PRIMES), min_size=1, max_size=2)),
    st.just(LevelDescriptor.rationals()),
)

groups = st.lists(levels, min_size=1, max_size=4).map(lambda ls: OrderedGroup(tuple(ls)))


def _level_value(L, k, e):
    if L.kind == "rationals":
        return Fraction(k, e + 1)
    if L.kind == "localized":
        return L.g * k / min(L.primes) ** e
    return L.g * k


@st.composite
def elements(draw, group):
    coords = [_level_value(L, draw(st.integers(-6, 6)), draw(st.integers(0, 3)))
              for L in group.levels]
    return group.element(coords)


@st.composite
def group_and_elements(draw, count=2):
    G = draw(groups)
    return G, [draw(elements(G)) for _ in range(count)]


# -- acceptance summary -------------------------------------------------------

_ACCEPTANCE: list = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


class _Criterion:
    def __init__(self):
        self.detail = ""
        self.start = time.perf_counter()


@pytest.fixture
def criterion(request):
    """Records one acceptance line: number and title come from the
    ``acceptance`` marker, ``detail`` is filled in by the test."""
    marker = request.node.get_closest_marker("acceptance")
    c = _Criterion()
    yield c
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    elapsed = time.perf_counter() - c.start
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {marker.args[0]}: {marker.args[1]}"
            f" ({elapsed:.2f} s){'; ' + c.detail if c.detail else ''}")
    _ACCEPTANCE.append((marker.args[0], line))
    print(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
