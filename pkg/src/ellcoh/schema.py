"""Input document handling: JSON parsing, schema validation, and conversion
of validated documents into the domain types.

The three document kinds (divisor, circle bundle, exact sequence) each have a
published JSON schema shipped with the package; unknown keys are rejected.
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema

from .divisor import (
    CircleGysinResidue,
    ComplementRecipe,
    CrossCheck,
    DirectResidue,
    DivisorSpec,
    Flags,
    PointsResidue,
    TrivialTorusResidue,
)
from .errors import ParseError, ValidationFailedError
from .exactq import COMPLEX, RATIONAL, BettiVector
from .sequences import SequenceSpec

DIVISOR_SCHEMA = "divisor-input.schema.json"
GYSIN_SCHEMA = "gysin-input.schema.json"
SEQUENCE_SCHEMA = "sequence-input.schema.json"

_FIELD_TAGS = {"rational": RATIONAL, "complex": COMPLEX}


def load_schema(name: str) -> dict:
    text = resources.files("ellcoh.schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def load_document(path) -> dict:
    """Read a JSON document from disk, reporting syntax errors with position."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, column=err.colno) from None


def check_schema(document: dict, schema_name: str) -> None:
    schema = load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "(document root)"
        raise ValidationFailedError([], f"schema violation at {where}: {first.message}")


def _betti(values, field_tag: str) -> BettiVector:
    return BettiVector(list(values), field_tag)


def _rank_map(obj) -> dict:
    return {int(k): int(v) for k, v in (obj or {}).items()}


def _parse_complement(obj: dict, field_tag: str):
    if "betti" in obj:
        return _betti(obj["betti"], field_tag)
    recipe = obj["recipe"]
    return ComplementRecipe(
        ambient_betti=_betti(recipe["ambient_betti"], field_tag),
        locus_betti=_betti(recipe["locus_betti"], field_tag),
        pushforward_ranks=_rank_map(recipe.get("pushforward_ranks")),
    )


def _parse_residue(obj: dict, field_tag: str):
    i = obj["i"]
    mode = obj["mode"]
    if mode == "direct":
        return DirectResidue(
            stratum_index=i,
            betti=_betti(obj["betti"], field_tag),
            closed_stratum=obj.get("closed_stratum", False),
        )
    if mode == "trivial_torus":
        return TrivialTorusResidue(
            stratum_index=i,
            base_betti=_betti(obj["base_betti"], field_tag),
            closed_stratum=obj.get("closed_stratum", False),
        )
    if mode == "circle_gysin":
        return CircleGysinResidue(
            stratum_index=i,
            base_betti=_betti(obj["base_betti"], field_tag),
            cup_e_ranks=_rank_map(obj.get("cup_e_ranks")),
            closed_stratum=obj.get("closed_stratum", False),
        )
    if mode == "points":
        return PointsResidue(stratum_index=i, count=obj["count"])
    raise ValidationFailedError([], f"unknown residue mode {mode!r}")


def parse_divisor_document(document: dict) -> DivisorSpec:
    """Convert a schema-checked divisor document into a DivisorSpec."""
    check_schema(document, DIVISOR_SCHEMA)
    field_tag = _FIELD_TAGS[document["field"]]
    cross = None
    if "cross_check" in document:
        raw = document["cross_check"]
        cross = CrossCheck(
            complement=(
                _parse_complement(raw["complement"], field_tag) if "complement" in raw else None
            ),
            residues=(
                tuple(_parse_residue(r, field_tag) for r in raw["residues"])
                if "residues" in raw
                else None
            ),
        )
    return DivisorSpec(
        name=document["name"],
        ambient_dim=document["ambient_dim"],
        intersection_number=document["intersection_number"],
        complement=_parse_complement(document["complement"], field_tag),
        residue_inputs=tuple(_parse_residue(r, field_tag) for r in document["residues"]),
        flags=Flags(
            global_normal_crossing=document["flags"]["global_normal_crossing"],
            d1_coorientable=document["flags"]["d1_coorientable"],
        ),
        field_tag=field_tag,
        cross_check=cross,
        description=document.get("description", ""),
    )


def parse_gysin_document(document: dict) -> tuple:
    """Returns (base_betti, cup_e_ranks) from a circle-bundle document."""
    check_schema(document, GYSIN_SCHEMA)
    return _betti(document["base_betti"], RATIONAL), _rank_map(document.get("cup_e_ranks"))


def parse_sequence_document(document: dict) -> SequenceSpec:
    check_schema(document, SEQUENCE_SCHEMA)
    terms = tuple(document["terms"])
    ranks = tuple(document["ranks"])
    if len(ranks) != len(terms) - 1:
        raise ValidationFailedError(
            [], f"need {len(terms) - 1} rank entries for {len(terms)} terms, got {len(ranks)}"
        )
    try:
        return SequenceSpec(terms, ranks)
    except ValueError as err:
        raise ValidationFailedError([], str(err)) from None
