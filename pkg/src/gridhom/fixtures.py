"""Diagrams shipped with the package (``gridhom/data/*.grid``)."""

from __future__ import annotations

from importlib import resources

from .diagram import WeightedDiagram, load_weighted

# shipped diagrams whose graph has a sink, a source or a cut edge
VANISHING = (
    "handcuff-g1",
    "cut-edge-loop-trefoil",
    "cut-edge-trefoil-unknot",
    "sink-source",
    "source",
    "sink",
)


def names() -> list[str]:
    files = resources.files("gridhom") / "data"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".grid"))


def text(name: str) -> str:
    return (resources.files("gridhom") / "data" / f"{name}.grid").read_text()


def load(name: str) -> WeightedDiagram:
    return load_weighted(text(name))
