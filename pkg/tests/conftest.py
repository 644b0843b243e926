import pytest

from crysalite.polyring import HypersurfaceRing


def ring(poly: str, nvars: int, p: int) -> HypersurfaceRing:
    names = ["x"] if nvars == 1 and "x0" not in poly else [f"x{i}" for i in range(nvars)]
    return HypersurfaceRing.from_text(poly, names, p)


def odp(nvars: int, p: int = 5) -> HypersurfaceRing:
    return ring("+".join(f"x{i}^2" for i in range(nvars)), nvars, p)


@pytest.fixture
def node():
    return ring("x0*x1", 2, 5)


@pytest.fixture
def cubic():
    return ring("x0^3+x1^3+x2^3", 3, 7)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
