import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from toricfan.birational import star_subdivision
from toricfan.gallery import get_fan


@pytest.fixture(scope="session")
def p2():
    return get_fan("pn", 2).fan


@pytest.fixture(scope="session")
def p3():
    return get_fan("pn", 3).fan


@pytest.fixture(scope="session")
def f1():
    return get_fan("hirzebruch", 1).fan


@pytest.fixture(scope="session")
def p1xp1():
    return get_fan("p1xp1").fan


@pytest.fixture(scope="session")
def oda():
    return get_fan("oda3")


def make_random_records(n=50, seed=8139):
    """Seeded star-subdivision chains over the projective plane and 3-space."""
    rng = random.Random(seed)
    bases = [get_fan("pn", 2).fan, get_fan("pn", 3).fan]
    records = []
    while len(records) < n:
        fan = rng.choice(bases)
        rec = None
        for _ in range(rng.randint(1, 3)):
            cone = rng.choice(fan.max_cones)
            size = rng.randint(2, fan.dim)
            center = tuple(sorted(rng.sample(list(cone), size)))
            rec = star_subdivision(fan, center)
            fan = rec.result
        records.append(rec)
    return records


@pytest.fixture(scope="session")
def random_records():
    return make_random_records()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(rep, "when", "call") == "call":
                lines.append((nodeid.split("::")[-1], "PASS" if rep.passed else "FAIL"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{name}: {status}")
