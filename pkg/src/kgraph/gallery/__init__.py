"""Bundled example k-graphs.

``sphere6``, ``torus4``, ``rp2``, ``klein`` and ``sphere10`` are 2-graphs whose
realizations are the named closed surfaces; ``loop1`` is a single loop.
"""

from __future__ import annotations

from importlib import resources

from ..core import KGraph
from ..fileio import parse_kgraph

NAMES = ("sphere6", "torus4", "rp2", "klein", "sphere10", "loop1")
SURFACES = ("sphere6", "torus4", "rp2", "klein", "sphere10")


def text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no gallery entry {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__).joinpath(f"{name}.kg").read_text(encoding="utf-8")


def load(name: str) -> KGraph:
    return parse_kgraph(text(name))
