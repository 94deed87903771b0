from pathlib import Path

import pytest

from greendry import load_config, synthetic_days

REPO_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = REPO_ROOT / "configs"


@pytest.fixture(scope="session")
def baseline_config_path():
    return CONFIG_DIR / "baseline_copra.yaml"


@pytest.fixture(scope="session")
def baseline_cfg(baseline_config_path):
    return load_config(baseline_config_path)


@pytest.fixture(scope="session")
def tropical_weather():
    return synthetic_days(4)
