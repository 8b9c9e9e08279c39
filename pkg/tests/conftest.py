import pytest
from click.testing import CliRunner


@pytest.fixture
def runner():
    """CliRunner for CLI testing"""
    return CliRunner()


@pytest.fixture
def ota_env():
    """Standard environment variables for tests"""
    return {"OTA_SEED": "0", "OTA_LOG_LEVEL": "WARNING"}


@pytest.fixture
def bounds():
    """Price bounds L=2, U=10 (θ = 5)"""
    from ota_cli.core.models import PriceBounds

    return PriceBounds(lower=2.0, upper=10.0)


@pytest.fixture
def unit_bounds():
    """Price bounds L=1, U=5"""
    from ota_cli.core.models import PriceBounds

    return PriceBounds.from_theta(5.0)


@pytest.fixture
def rising_instance(bounds):
    """Prices climbing from L to 8 before a crash to L"""
    from ota_cli.analysis.instances import p_instance

    return p_instance(bounds, 8.0, 50)


@pytest.fixture
def price_csv(tmp_path):
    """Factory writing a timestamp,price CSV and returning its path"""

    def write(text: str, name: str = "prices.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write


@pytest.fixture
def walk_series():
    """Seeded random walk of 2000 five-minute ticks"""
    from ota_cli.harness.data import synthesize_prices

    return synthesize_prices(2000, vol=0.01, seed=3)
