from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from commulab.matrix import Matrix
from commulab.rings import Dual, Integers, Rationals, RingSpec, parse_ring

settings.register_profile(
    "commulab",
    deadline=None,
    derandomize=True,
    database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("commulab")

# one of every ring kind, including nested and mixed ones
RING_SPECS = [
    "Z",
    "Q",
    "Zmod:4",
    "Zmod:6",
    "Zmod:9",
    "Zmod:12",
    "GF:2",
    "GF:3",
    "GF:5",
    "GF:7",
    "Dual:GF:3",
    "Dual:Zmod:4",
    "Dual:Q",
    "Dual:Z",
    "Prod:GF:2,GF:3",
    "Prod:Zmod:4,GF:5",
    "Prod:Q,GF:3",
]
RINGS = [parse_ring(s) for s in RING_SPECS]
FIELDS = [parse_ring(s) for s in ("Q", "GF:2", "GF:3", "GF:5", "GF:7")]


def payloads(R: RingSpec):
    """Strategy for canonical payloads of R."""
    if R.is_finite:
        return st.sampled_from(list(R.elements()))
    if isinstance(R, Integers):
        return st.integers(-6, 6)
    if isinstance(R, Rationals):
        return st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    if isinstance(R, Dual):
        return st.tuples(payloads(R.base), payloads(R.base))
    return st.tuples(*[payloads(c) for c in R.components])


def matrices(R: RingSpec, n: int):
    return st.lists(st.lists(payloads(R), min_size=n, max_size=n), min_size=n, max_size=n).map(lambda rows: Matrix(R, rows))


@st.composite
def ring_and_matrices(draw, rings=RINGS, sizes=(1, 2, 3), count=1):
    R = draw(st.sampled_from(rings))
    n = draw(st.sampled_from(sizes))
    return (R,) + tuple(draw(matrices(R, n)) for _ in range(count))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(mod.VERDICTS):
            terminalreporter.write_line(mod.VERDICTS[k])
