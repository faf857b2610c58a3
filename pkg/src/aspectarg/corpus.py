"""Access to the bundled corpus of worked example files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

CORPUS_NAMES = (
    "fear_appeal",
    "false_flag",
    "straw_man",
    "question_begging_opium",
    "question_begging_god",
    "contradictory_conclusion",
)


def corpus_path(name: str) -> Path:
    """Filesystem path of a bundled corpus file (without the .json suffix)."""
    if name not in CORPUS_NAMES:
        raise KeyError(f"unknown corpus file {name!r}; choose from {CORPUS_NAMES}")
    return Path(str(resources.files("aspectarg").joinpath("corpus", f"{name}.json")))
