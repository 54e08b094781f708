import pytest

from codescent.algmod import AlgebraMorphism, field_algebra, product_algebra, quotient_ring
from codescent.exactlin import GF, QQ

# filled by test_acceptance: (number, title, tolerance, seconds, limit, passed)
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, tol, secs, limit, passed in sorted(ACCEPTANCE_LINES):
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"[{word}] criterion {num:2d}: {title} | tolerance: {tol} | {secs:.2f}s (limit {limit}s)")


@pytest.fixture(scope="session")
def quadratic():
    """Q -> Q[x]/(x^2 - 2)."""
    return AlgebraMorphism.structure_map(quotient_ring(QQ, [-2, 0, 1]))


@pytest.fixture(scope="session")
def split_pair():
    """Q -> Q x Q."""
    P, _ = product_algebra([field_algebra(QQ), field_algebra(QQ)])
    return AlgebraMorphism.structure_map(P)


@pytest.fixture(scope="session")
def projection():
    """Q x Q -> Q onto the first factor."""
    P, projs = product_algebra([field_algebra(QQ), field_algebra(QQ)])
    return projs[0]


@pytest.fixture(params=[QQ, GF(2), GF(3), GF(5)], ids=str)
def any_field(request):
    return request.param
