import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tensorlat import HermLattice, make_field

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = (1, 2, 3, 7, 11)


def random_ok(F, rng, k=2):
    return F.from_omega(rng.randint(-k, k), rng.randint(-k, k))


def random_herm(F, m, rng, k=2, scale=(1, 2)):
    """B diag(s) B* for a random nonsingular B over O_K."""
    while True:
        B = [[random_ok(F, rng, k) for _ in range(m)] for _ in range(m)]
        s = [rng.choice(scale) for _ in range(m)]
        G = [[sum((B[i][t] * s[t] * B[j][t].conj() for t in range(m)), F.zero()) for j in range(m)] for i in range(m)]
        try:
            return HermLattice(F, G)
        except ValueError:
            continue


@st.composite
def herm_lattices(draw, ranks=(1, 2, 3), fields=FIELDS, k=2):
    d = draw(st.sampled_from(fields))
    m = draw(st.sampled_from(ranks))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_herm(make_field(d), m, random.Random(seed), k)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
