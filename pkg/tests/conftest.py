import pytest

from doseopt import Boin12Config, default_rds_table


@pytest.fixture(scope="session")
def default_config():
    return Boin12Config()


@pytest.fixture(scope="session")
def fixture_table():
    return default_rds_table()


# paper boundary table: target -> (lambda_e, lambda_d)
PUBLISHED_BOUNDARIES = {
    0.15: (0.118, 0.179),
    0.20: (0.157, 0.238),
    0.25: (0.197, 0.298),
    0.30: (0.236, 0.358),
    0.35: (0.276, 0.419),
    0.40: (0.316, 0.479),
}
