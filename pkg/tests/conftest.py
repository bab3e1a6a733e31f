"""Shared fixtures and the per-criterion acceptance summary."""
import random

import pytest

from entrotree import data
from entrotree.dataset import AttributeDescriptor, Dataset

_outcomes: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, text = marker.args
    ok = report.passed if report.when == "call" else False
    prev = _outcomes.get(number, (True, text))
    _outcomes[number] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        ok, text = _outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")


@pytest.fixture
def table1():
    return data.table1()


@pytest.fixture
def table3():
    return data.table3()


@pytest.fixture
def region_h():
    return data.region_hierarchy()


def random_dataset(rng: random.Random, max_rows=30, max_attrs=5, max_values=4, max_classes=3) -> Dataset:
    """Small nominal dataset with integer counts, for property suites."""
    n_attrs = rng.randint(1, max_attrs)
    n_classes = rng.randint(1, max_classes)
    schema = [AttributeDescriptor(f"a{i}", "nominal") for i in range(n_attrs)]
    schema.append(AttributeDescriptor("cls", "nominal", "class"))
    domains = [[f"v{j}" for j in range(rng.randint(1, max_values))] for _ in range(n_attrs)]
    rows = []
    for _ in range(rng.randint(1, max_rows)):
        rows.append(tuple(rng.choice(dom) for dom in domains) + (f"c{rng.randrange(n_classes)}",))
    counts = [rng.randint(1, 3) for _ in rows]
    return Dataset(schema, rows, counts)


def corpus(n=250, seed=20240611):
    rng = random.Random(seed)
    return [random_dataset(rng) for _ in range(n)]
