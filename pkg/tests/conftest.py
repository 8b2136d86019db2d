import pytest

from mahlercocycle import kernels

# Reference constants, 15+ significant digits.  Measures were computed
# independently with 60-digit mpmath root finding and frozen here.
GOLDEN_RATIO = 1.618033988749895
LOG_GOLDEN = 0.48121182505960345
PLASTIC = 1.324717957244746
ZETA3 = 1.202056903159594
ZETA3_MEASURE = 0.42627839881750579  # 7 zeta(3) / (2 pi^2)
LEHMER_MEASURE = 0.16235761200773814
LITTLEWOOD_MEASURE = 0.65625597923697581
NEWMAN14_MEASURE = 0.23516861742856603
ONE_X_Y_MEASURE = 0.32306594721945051

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]
LITTLEWOOD = [-1, -1, 1, -1, 1]
NEWMAN14 = [1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1]


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
