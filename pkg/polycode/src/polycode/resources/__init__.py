"""Packaged data files, addressed by paths relative to this package."""

from importlib.resources import path
from pathlib import Path, PurePath
from typing import ContextManager, List, Union

POLYTOPES = "polytopes"


def _split(resource_path: Union[str, PurePath]) -> List[str]:
    parts = PurePath(resource_path).parts
    if not parts or PurePath(resource_path).is_absolute() or ".." in parts:
        raise ValueError(
            f"Resource path has to stay inside the package: {resource_path}"
        )
    return list(parts)


def resource(resource_path: Union[str, PurePath]) -> ContextManager[Path]:
    *packages, name = _split(resource_path)
    return path(".".join([__name__, *packages]), name)


def resource_text(resource_path: Union[str, PurePath]) -> str:
    with resource(resource_path) as r:
        return r.read_text(encoding="utf-8")


def polytope_fixture(name: str) -> str:
    """JSON document of a packaged polytope, e.g. ``fat_triangle``."""
    if not name.endswith(".json"):
        name = f"{name}.json"
    return resource_text(f"{POLYTOPES}/{name}")
