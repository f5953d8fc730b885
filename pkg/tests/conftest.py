import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.spatial.distance import pdist
from shapely.geometry import Polygon

from rotakit.generators import regular_polygon

settings.register_profile(
    "rotakit", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("rotakit")


@pytest.fixture(scope="session")
def hexagon():
    return regular_polygon(6)


@pytest.fixture(scope="session")
def square():
    return regular_polygon(4)


def wedge_pieces(vertices, center, endpoints):
    """Pieces of a standard-style partition computed with shapely.

    Each piece is the body intersected with the (big) sector spanned by two
    consecutive spokes; a two-spoke fan becomes two half-planes.
    """
    body = Polygon(vertices)
    c = np.asarray(center, dtype=float)
    far = 10.0 * float(np.max(np.hypot(*(np.asarray(vertices) - c).T)))
    dirs = [(e - c) / np.hypot(*(e - c)) for e in np.asarray(endpoints, dtype=float)]
    pieces = []
    for i in range(len(dirs)):
        a, b = dirs[i], dirs[(i + 1) % len(dirs)]
        a0 = math.atan2(a[1], a[0])
        span = (math.atan2(b[1], b[0]) - a0) % (2 * math.pi) or 2 * math.pi
        ts = a0 + np.linspace(0, span, 16)
        sector = Polygon([tuple(c)] + [tuple(c + far * np.array([math.cos(t), math.sin(t)])) for t in ts])
        pieces.append(body.intersection(sector))
    return pieces


def shapely_dM(pieces):
    return max(pdist(np.asarray(p.exterior.coords)).max() for p in pieces)


class _Acceptance:
    """Collects one pass/fail line per acceptance criterion."""

    def __init__(self):
        self.lines = {}

    def __call__(self, number, title):
        return _Criterion(self, number, title)


class _Criterion:
    def __init__(self, log, number, title):
        self.log, self.number, self.title, self.detail = log, number, title, ""

    def __enter__(self):
        import time

        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        status = "PASS" if exc_type is None else "FAIL"
        took = time.perf_counter() - self.t0
        line = f"criterion {self.number:>2} {status}  {self.title}  [{self.detail}] ({took:.1f} s)"
        self.log.lines[self.number] = line
        print(line)
        return False


_ACCEPTANCE = _Acceptance()


@pytest.fixture(scope="session")
def acceptance():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE.lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE.lines):
            terminalreporter.write_line(_ACCEPTANCE.lines[n])
