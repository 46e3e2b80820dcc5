"""
Strict models for the JSON fixture files and for basis descriptors.

Unknown fields are rejected and every file carries `version: 1`.
"""
import json
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt, ValidationError

from splitting_structures.errors import InputError


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class BallBasis(_Strict):
    """Basis of graph balls B(v, r) for every vertex v and every listed radius."""

    kind: Literal["balls"] = "balls"
    radii: tuple[NonNegativeInt, ...] = Field(min_length=1)


class ExplicitBasis(_Strict):
    """Basis given set by set."""

    kind: Literal["explicit"] = "explicit"
    sets: tuple[tuple[NonNegativeInt, ...], ...] = Field(min_length=1)


class ShortIntervalBasis(_Strict):
    """Open id-intervals {z : a < z < b} with 0 < b - a <= window."""

    kind: Literal["short_intervals"] = "short_intervals"
    window: int = Field(ge=2)


BasisSpec = Annotated[Union[BallBasis, ExplicitBasis, ShortIntervalBasis], Field(discriminator="kind")]


class SpaceFile(_Strict):
    version: Literal[1] = 1
    points: PositiveInt
    edges: tuple[tuple[NonNegativeInt, NonNegativeInt], ...]
    basis: BasisSpec


class BetweennessFile(_Strict):
    version: Literal[1] = 1
    points: PositiveInt
    triples: tuple[tuple[NonNegativeInt, NonNegativeInt, NonNegativeInt], ...]


def _load(path: Path, model: type[_Strict]) -> _Strict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    try:
        return model.model_validate(json.loads(raw))
    except (json.JSONDecodeError, ValidationError) as e:
        raise InputError(f"{path}: {e}") from e


def load_space_file(path: Path) -> SpaceFile:
    return _load(path, SpaceFile)


def load_betweenness_file(path: Path) -> BetweennessFile:
    return _load(path, BetweennessFile)


def dump_document(document: _Strict) -> str:
    """Deterministic JSON text for a fixture document."""
    return json.dumps(document.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
