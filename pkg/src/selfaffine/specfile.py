"""Loading of JSON input files (schema version 1).

Every file carries ``schema_version`` and ``kind``; ``kind`` is one of
``expansion``, ``substitution`` or ``boundary``. A substitution file may embed
a ``boundary`` block (letters, vectors, endomorphism, words) that shares the
file's field and expansion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from . import fieldlinalg as fl
from .boundary import Alphabet, Endomorphism, VectorAssignment
from .errors import InputError, SelfAffineError
from .expansion import ExpansionMap, RationalMatrix, SpectralSpec
from .substitution import SubstitutionRule, field_spec_from_json, rule_from_json

SCHEMA_VERSION = 1
KINDS = ("expansion", "substitution", "boundary")


@dataclass(frozen=True)
class BoundarySpec:
    assignment: VectorAssignment
    endomorphism: Endomorphism
    words: dict[str, str]
    name: str = ""


def bundled_path(name: str) -> Path:
    """Path of a bundled example, e.g. ``bundled_path("figure3")``."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("selfaffine") / "data" / name))


def bundled_names() -> list[str]:
    folder = resources.files("selfaffine") / "data"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def read_json(path: str | Path) -> dict:
    p = Path(path)
    if not p.exists() and not p.suffix and bundled_path(p.name).exists():
        p = bundled_path(p.name)
    try:
        with open(p, encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InputError(f"{path}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    if data.get("kind") not in KINDS:
        raise InputError(f"{path}: 'kind' must be one of {', '.join(KINDS)}")
    return data


def _wrap(path, fn, data):
    try:
        return fn(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except SelfAffineError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"{path}: malformed {data.get('kind')} data: {exc!r}") from exc


def expansion_from_json(data: Mapping) -> ExpansionMap:
    if "matrix" in data:
        return RationalMatrix(data["matrix"])
    if "spectrum" in data:
        return SpectralSpec.from_json(data["spectrum"])
    raise InputError("expansion file needs a 'matrix' or a 'spectrum' entry")


def boundary_from_json(data: Mapping, field_data: Mapping | None = None, expansion=None) -> BoundarySpec:
    spec = field_spec_from_json(field_data if field_data is not None else data["field"])
    phi_data = expansion if expansion is not None else data["expansion"]
    phi = tuple(tuple(fl.parse_elem(spec, x) for x in row) for row in phi_data)
    alphabet = Alphabet(data["letters"])
    vecs = data["vectors"]
    missing = [ch for ch in alphabet.letters if ch not in vecs]
    if missing:
        raise InputError(f"no vector for letters {missing}")
    vectors = tuple(fl.parse_vector(spec, vecs[ch]) for ch in alphabet.letters)
    psi = Endomorphism.from_strings(alphabet, data["endomorphism"])
    words = {str(k): str(v) for k, v in data.get("words", {}).items()}
    for w in words.values():
        alphabet.parse(w)
    return BoundarySpec(VectorAssignment(spec, alphabet, vectors, phi), psi, words, str(data.get("name", "")))


def load(path: str | Path):
    """Load any input file; returns an expansion map, a rule or a boundary spec."""
    data = read_json(path)
    kind = data["kind"]
    if kind == "expansion":
        return _wrap(path, expansion_from_json, data)
    if kind == "substitution":
        return _wrap(path, rule_from_json, data)
    return _wrap(path, boundary_from_json, data)


def load_expansion(path) -> ExpansionMap:
    data = read_json(path)
    if data["kind"] != "expansion":
        raise InputError(f"{path}: expected an expansion file, got kind {data['kind']!r}")
    return _wrap(path, expansion_from_json, data)


def load_rule(path) -> SubstitutionRule:
    data = read_json(path)
    if data["kind"] != "substitution":
        raise InputError(f"{path}: expected a substitution file, got kind {data['kind']!r}")
    return _wrap(path, rule_from_json, data)


def load_boundary(path) -> BoundarySpec:
    """Boundary data from a boundary file or from a rule file's ``boundary`` block."""
    data = read_json(path)
    if data["kind"] == "boundary":
        return _wrap(path, boundary_from_json, data)
    if data["kind"] == "substitution" and "boundary" in data:
        return _wrap(path, lambda d: boundary_from_json(d["boundary"], d["field"], d["expansion"]), data)
    raise InputError(f"{path}: no boundary data in this file")
