import random
from math import gcd

import pytest
from hypothesis import strategies as st

from toric_volume.germ import REFERENCE_GERM
from toric_volume.lattice_fan import WeightSequence


def slope_sorted(pairs):
    """Distinct-slope primitive pairs sorted by increasing q/p."""
    seen = {}
    for p, q in pairs:
        d = gcd(p, q)
        p, q = p // d, q // d
        seen[(p, q)] = None
    return sorted(seen, key=lambda v: (v[1] / v[0], v))


@st.composite
def weight_sequences(draw, max_n=6, max_entry=1000):
    raw = draw(st.lists(st.tuples(st.integers(1, max_entry), st.integers(1, max_entry)), min_size=1, max_size=max_n))
    return WeightSequence(slope_sorted(raw))


def random_weight_sequence(rng: random.Random, max_n=6, max_entry=1000) -> WeightSequence:
    n = rng.randint(1, max_n)
    raw = [(rng.randint(1, max_entry), rng.randint(1, max_entry)) for _ in range(n)]
    return WeightSequence(slope_sorted(raw))


def random_corpus(size=500, seed=20261018, **kw):
    rng = random.Random(seed)
    return [random_weight_sequence(rng, **kw) for _ in range(size)]


@pytest.fixture
def germ():
    return REFERENCE_GERM


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in sorted(_acceptance, key=lambda r: int(r[0].split("_")[2])):
        doc = getattr(test_acceptance, name).__doc__.strip()
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {doc}  [{duration:.2f}s]")
