import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        default=None,
        action="store_true",
        help="Run the full-size Monte-Carlo and quadrature suites",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size suite; needs --runslow to run")


def pytest_runtest_setup(item):
    if "slow" in item.keywords and not item.config.getoption("--runslow"):
        pytest.skip("need --runslow option to run")
