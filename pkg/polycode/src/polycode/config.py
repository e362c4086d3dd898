from typing import Optional

from pydantic import BaseSettings, PositiveInt

DEFAULT_MESSAGE_BUDGET = 10**8
DEFAULT_NODE_BUDGET = 10**7


class Settings(BaseSettings):
    budget: Optional[PositiveInt] = None

    class Config:
        env_prefix = "POLYCODE_"


def resolve_budget(default: int, explicit: Optional[int] = None) -> int:
    """Explicit argument first, then POLYCODE_BUDGET, then the default."""
    if explicit is not None:
        return explicit
    configured = Settings().budget
    return configured if configured is not None else default


def message_budget(explicit: Optional[int] = None) -> int:
    return resolve_budget(DEFAULT_MESSAGE_BUDGET, explicit)


def node_budget(explicit: Optional[int] = None) -> int:
    return resolve_budget(DEFAULT_NODE_BUDGET, explicit)
