from argparse import Namespace

import pytest

from config import DEFAULT_CHECKPOINTS, Config
from enums import OutputFormat
from exceptions import UsageError


def test_from_namespace_ignores_unknown_and_missing_values() -> None:
    namespace = Namespace(command="count", m=6, verbose=2, format="json", out=None)
    config = Config.from_namespace(namespace)
    assert config.m == 6
    assert config.format == OutputFormat.JSON
    assert config.checkpoints == DEFAULT_CHECKPOINTS


@pytest.mark.parametrize(
    "values",
    [
        {"command": "count", "m": 0},
        {"command": "oracle", "m": 0},
        {"command": "census", "m_from": 1},
        {"command": "census", "m_from": 3, "m_to": 2},
        {"command": "census", "m_from": 1, "m_to": 2, "workers": 0},
        {"command": "oracle", "m": 6, "k_max": -1},
        {"command": "oracle", "m": 6, "height_max": 0},
        {"command": "fit", "checkpoints": (10, 10)},
        {"command": "fit", "checkpoints": (0, 10)},
        {"command": "cl", "truncation": 0},
        {"command": "cl", "u": -1},
        {"command": "seifert", "count": -2},
        {"command": "count", "m": 1, "format": "xml"},
    ],
)
def test_invalid_configurations(values: dict) -> None:
    with pytest.raises((UsageError, ValueError)):
        Config(**values)
