from pathlib import Path

import pytest

from polycode.ff import FieldTable, field_new

RESOURCES = Path(__file__).parent / "resources"


@pytest.fixture(scope="session")
def resources_dir() -> Path:
    return RESOURCES


@pytest.fixture(scope="session")
def field5() -> FieldTable:
    return field_new(5)


@pytest.fixture(autouse=True)
def no_budget_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Tests set POLYCODE_BUDGET themselves when they need it."""
    monkeypatch.delenv("POLYCODE_BUDGET", raising=False)
