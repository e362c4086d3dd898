import pytest

from polycode.config import (
    DEFAULT_MESSAGE_BUDGET,
    DEFAULT_NODE_BUDGET,
    message_budget,
    node_budget,
)


class TestBudgets:
    def test_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("POLYCODE_BUDGET", raising=False)
        assert message_budget() == DEFAULT_MESSAGE_BUDGET
        assert node_budget() == DEFAULT_NODE_BUDGET

    def test_environment_overrides_default(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("POLYCODE_BUDGET", "1234")
        assert message_budget() == 1234
        assert node_budget() == 1234

    def test_explicit_argument_wins(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("POLYCODE_BUDGET", "1234")
        assert message_budget(10) == 10
