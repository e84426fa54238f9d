"""Access to bundled scenario maps.

Maps resolve in order: explicit path, file inside the directory named by the
PREFLOOP_MAPS_DIR environment variable, then the package's own data. Bare
names accept "scenario1", "scenario1.map.json" or a literal file name.
"""

import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import PrefLoopError
from .mapmodel import MapGraph, load_map

BUNDLED_NAMES = ("scenario1", "scenario2", "scenario3")

MAPS_DIR_ENV = "PREFLOOP_MAPS_DIR"


def _candidate_names(name: str) -> list[str]:
    if name.endswith(".json"):
        return [name]
    return [f"{name}.map.json", f"{name}.json", name]


def _bundled_dir():
    return resources.files("prefloop").joinpath("data/maps")


def map_source(name: str) -> str:
    """Return the JSON text for a map name or path."""
    path = Path(name)
    if path.exists() and path.is_file():
        return path.read_text()
    env_dir = os.environ.get(MAPS_DIR_ENV)
    search_dirs = [Path(env_dir)] if env_dir else []
    for directory in search_dirs:
        for candidate in _candidate_names(name):
            p = directory / candidate
            if p.exists():
                return p.read_text()
    bundled = _bundled_dir()
    for candidate in _candidate_names(path.name):
        res = bundled.joinpath(candidate)
        if res.is_file():
            return res.read_text()
    raise PrefLoopError("IO_ERROR", f"map {name!r} not found (path, ${MAPS_DIR_ENV}, or bundled)")


@lru_cache(maxsize=32)
def get_map(name: str) -> MapGraph:
    return load_map(map_source(name))


def available_maps() -> list[str]:
    """Names available without an explicit path: env dir first, then bundled."""
    names: list[str] = []
    env_dir = os.environ.get(MAPS_DIR_ENV)
    if env_dir and Path(env_dir).is_dir():
        for p in sorted(Path(env_dir).glob("*.json")):
            names.append(p.name.removesuffix(".map.json").removesuffix(".json"))
    if not names:
        names = list(BUNDLED_NAMES)
    return names
