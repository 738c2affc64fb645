from pathlib import Path

import numpy as np
import pytest

from rdhei.pgm import read_pgm

DATA = Path(__file__).parent / "data"

_acceptance_results = []


@pytest.fixture(scope="session")
def lena():
    return read_pgm(DATA / "lena.pgm")


@pytest.fixture(scope="session")
def lena_container(lena):
    from rdhei.container import vacate

    return vacate(lena)


def smooth_image(rng, m, n, noise=2.0):
    """Gradient plus mild noise: compresses well, like a natural image."""
    yy, xx = np.mgrid[0:m, 0:n]
    base = 40 + 120 * (yy / max(m - 1, 1)) * rng.uniform(0.2, 1) + 60 * (xx / max(n - 1, 1))
    img = base + rng.normal(0, noise, (m, n))
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def checkerboard(m, n, lo=0, hi=255):
    tile = np.array([[lo, hi], [hi, lo]], dtype=np.uint8)
    return np.tile(tile, (m // 2 + 1, n // 2 + 1))[:m, :n]


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    _acceptance_results.append((marker.args[0], item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, name, ok in sorted(_acceptance_results):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{criterion} {name}")
