"""Built-in corpus of presentations shipped under ``symprod/data``."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .presentation import AlgebraData, Presentation, parse_presentation, realize


def fixture_names() -> list[str]:
    root = resources.files("symprod") / "data"
    return sorted(p.name[: -len(".sym")] for p in root.iterdir() if p.name.endswith(".sym"))


def fixture_text(name: str) -> str:
    return (resources.files("symprod") / "data" / f"{name}.sym").read_text()


@lru_cache(maxsize=None)
def fixture_presentation(name: str) -> Presentation:
    return parse_presentation(fixture_text(name))


@lru_cache(maxsize=None)
def fixture_algebra(name: str, cutoff: int) -> AlgebraData:
    return realize(fixture_presentation(name), cutoff)


def model_fixtures() -> list[str]:
    """Fixtures that carry a nonzero differential."""
    return [n for n in fixture_names() if fixture_presentation(n).differential]
