"""Input documents: a semiring, optional fuzzy subsets and optional gluing scripts."""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .algebra import semiring_from_dict
from .fuzzy import FuzzySubset
from .semiring import TernaryGammaSemiring
from .types import StructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GlueScript:
    """Element names of f and its cover, and one `a/s` section string per cover element."""

    f: str
    cover: Tuple[str, ...]
    sections: Tuple[str, ...]


@dataclass(frozen=True)
class GammaInput:
    algebra: TernaryGammaSemiring
    fuzzy: Dict[str, FuzzySubset] = field(default_factory=dict)
    glue_scripts: Tuple[GlueScript, ...] = ()


def _glue_scripts(raw: Any) -> Tuple[GlueScript, ...]:
    if not isinstance(raw, list):
        raise StructureError("'glue_scripts' must be a list")
    scripts: List[GlueScript] = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"f", "cover", "sections"} <= set(entry):
            raise StructureError(f"glue script {i} needs 'f', 'cover' and 'sections'")
        for key in ("cover", "sections"):
            if not isinstance(entry[key], list):
                raise StructureError(f"glue script {i}: '{key}' must be a list of names")
        scripts.append(
            GlueScript(
                str(entry["f"]),
                tuple(str(g) for g in entry["cover"]),
                tuple(str(s) for s in entry["sections"]),
            )
        )
    return tuple(scripts)


def input_from_dict(document: Dict[str, Any]) -> GammaInput:
    algebra = semiring_from_dict(document)
    fuzzy_doc = document.get("fuzzy", {})
    if not isinstance(fuzzy_doc, dict):
        raise StructureError("'fuzzy' must map names to {element: grade} objects")
    fuzzy = {}
    for name, grades in fuzzy_doc.items():
        if not isinstance(grades, dict):
            raise StructureError(f"Fuzzy subset '{name}' must be an object of grades")
        fuzzy[str(name)] = FuzzySubset.parse(algebra, grades)
    return GammaInput(algebra, fuzzy, _glue_scripts(document.get("glue_scripts", [])))


def load_input(path: str) -> GammaInput:
    """Read an input JSON file.

    Raises:
        OSError: If the file cannot be read.
        json.JSONDecodeError: If it is not JSON.
        StructureError: If the document does not describe a semiring.
    """
    with open(path, "r", encoding="utf-8") as file:
        document = json.load(file)
    logger.info("Loaded input from %s", path)
    return input_from_dict(document)
