"""Subshifts of finite type on finitely generated groups."""

import json as _json

from ._core import (
    CosetTable,
    Embedding,
    FreeProductSplit,
    Generator,
    Presentation,
    SftgError,
    Sft,
    Witness,
    Word,
    __version__,
    abelian_quotient_table,
    exponent_hom_check,
    free_extension,
    magnus_moldavansky,
    replays_to,
    right_extension,
    search_periodic,
    tile_ball,
    todd_coxeter,
)
from ._core import analyze as _analyze


def analyze(presentation, plug=None, radius=3, budget=2000000):
    """Certificate for a one-relator presentation, as a dict."""
    if isinstance(presentation, str):
        presentation = Presentation(presentation)
    return _json.loads(_analyze(presentation, plug, radius, budget, True))


def analyze_text(presentation, plug=None, radius=3, budget=2000000):
    if isinstance(presentation, str):
        presentation = Presentation(presentation)
    return _analyze(presentation, plug, radius, budget, False)


__all__ = [
    "CosetTable",
    "Embedding",
    "FreeProductSplit",
    "Generator",
    "Presentation",
    "SftgError",
    "Sft",
    "Witness",
    "Word",
    "abelian_quotient_table",
    "analyze",
    "analyze_text",
    "exponent_hom_check",
    "free_extension",
    "magnus_moldavansky",
    "replays_to",
    "right_extension",
    "search_periodic",
    "tile_ball",
    "todd_coxeter",
]
