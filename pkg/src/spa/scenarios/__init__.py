"""Bundled scenario and problem files."""

from importlib import resources
from pathlib import Path

BUNDLED = ("kerberos", "ns_lowe")


def scenario_path(name: str) -> Path:
    """Filesystem path of a bundled scenario (without the .spa suffix)."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled scenario {name!r}; available: {BUNDLED}")
    with resources.as_file(resources.files(__name__) / f"{name}.spa") as path:
        return path


def scenario_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(f"no bundled scenario {name!r}; available: {BUNDLED}")
    return (resources.files(__name__) / f"{name}.spa").read_text(encoding="utf-8")


def fuzzy_example_text() -> str:
    return (resources.files(__name__) / "fuzzy_example.scsp").read_text(encoding="utf-8")
