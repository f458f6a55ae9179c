"""On-disk JSON formats for the package's object types and reports.

Files are UTF-8 JSON with explicit tables: levels as arrays of id
strings, face/degeneracy tables as objects keyed ``"n,i"``, ``"a,b"``,
or ``"a,b,i"``, compositions and square oracles as nested objects.
Nothing is reconstructed implicitly.  Serialization is canonical
(sorted keys, two-space indent), so round-trips are lossless and output
is byte-stable.

Two failure modes are kept apart: :class:`ParseError` for files that
cannot be decoded into a typed object at all, and
:class:`ValidationError` (carrying the full report) for well-formed
objects that violate their axioms.
"""

from __future__ import annotations

import json
from typing import Any

from .exactnerve import ProtoExactData, validate_proto_exact
from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSigmaDiagram,
    validate_groupoid_diagram,
)
from .preaug import PreaugBisimplicialSet, validate_preaug
from .report import CheckReport
from .sset import (
    FiniteCategoryData,
    TruncatedSimplicialSet,
    validate_category,
    validate_simplicial,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "object_to_data",
    "object_from_data",
    "object_kind",
    "validation_report",
    "parse_object_file",
    "write_object_file",
    "serialize_object",
    "report_to_data",
]

KINDS = ("sset", "sigma", "groupoid-sigma", "category", "proto-exact")


class ParseError(Exception):
    """The file or data cannot be decoded into a typed object."""


class ValidationError(Exception):
    """A well-formed object violates its axioms; carries the report."""

    def __init__(self, report: CheckReport):
        super().__init__(report.describe())
        self.report = report


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _expect_dict(value: Any, what: str) -> dict:
    _expect(isinstance(value, dict), f"{what} must be an object")
    return value


def _expect_list(value: Any, what: str) -> list:
    _expect(isinstance(value, list), f"{what} must be an array")
    return value


def _expect_int(value: Any, what: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


def _id_list(value: Any, what: str) -> tuple[str, ...]:
    items = _expect_list(value, what)
    for item in items:
        _expect(isinstance(item, str), f"{what} must contain strings")
    return tuple(items)


def _string_table(value: Any, what: str) -> dict[str, str]:
    table = _expect_dict(value, what)
    for key, val in table.items():
        _expect(isinstance(key, str), f"{what} keys must be strings")
        _expect(isinstance(val, str), f"{what} values must be strings")
    return dict(table)


def _int_key(text: str, parts: int, what: str) -> tuple[int, ...]:
    pieces = text.split(",")
    _expect(
        len(pieces) == parts,
        f"{what} key {text!r} must have {parts} comma-separated integers",
    )
    try:
        return tuple(int(piece) for piece in pieces)
    except ValueError:
        raise ParseError(f"{what} key {text!r} is not numeric") from None


def _keyed_tables(value: Any, parts: int, what: str) -> dict[tuple[int, ...], dict[str, str]]:
    outer = _expect_dict(value, what)
    return {
        _int_key(key, parts, what): _string_table(table, f"{what}[{key}]")
        for key, table in outer.items()
    }


def _fmt_key(key: tuple[int, ...]) -> str:
    return ",".join(str(part) for part in key)


def _required(data: dict, keys: tuple[str, ...], what: str) -> None:
    missing = [key for key in keys if key not in data]
    _expect(not missing, f"{what} is missing fields: {', '.join(missing)}")
    extra = [key for key in data if key not in keys]
    _expect(not extra, f"{what} has unknown fields: {', '.join(extra)}")


# ---------------------------------------------------------------------------
# Simplicial sets
# ---------------------------------------------------------------------------


def _sset_to_data(X: TruncatedSimplicialSet) -> dict:
    return {
        "kind": "sset",
        "truncation": X.truncation,
        "levels": [list(level) for level in X.levels],
        "faces": {_fmt_key(key): dict(table) for key, table in X.faces.items()},
        "degeneracies": {
            _fmt_key(key): dict(table) for key, table in X.degeneracies.items()
        },
    }


def _sset_from_data(data: dict) -> TruncatedSimplicialSet:
    _required(
        data, ("kind", "truncation", "levels", "faces", "degeneracies"), "sset object"
    )
    truncation = _expect_int(data["truncation"], "truncation")
    levels = tuple(
        _id_list(level, f"levels[{n}]")
        for n, level in enumerate(_expect_list(data["levels"], "levels"))
    )
    faces = _keyed_tables(data["faces"], 2, "faces")
    degeneracies = _keyed_tables(data["degeneracies"], 2, "degeneracies")
    try:
        return TruncatedSimplicialSet(truncation, levels, faces, degeneracies)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Pre-augmented bisimplicial sets
# ---------------------------------------------------------------------------


def _sigma_to_data(D: PreaugBisimplicialSet) -> dict:
    return {
        "kind": "sigma",
        "total_truncation": D.total_truncation,
        "levels": {_fmt_key(key): list(level) for key, level in D.levels.items()},
        "augmentation": list(D.augmentation),
        "vertical_faces": {
            _fmt_key(key): dict(table) for key, table in D.vertical_faces.items()
        },
        "vertical_degeneracies": {
            _fmt_key(key): dict(table)
            for key, table in D.vertical_degeneracies.items()
        },
        "horizontal_faces": {
            _fmt_key(key): dict(table) for key, table in D.horizontal_faces.items()
        },
        "horizontal_degeneracies": {
            _fmt_key(key): dict(table)
            for key, table in D.horizontal_degeneracies.items()
        },
        "eps": dict(D.eps),
    }


def _sigma_from_data(data: dict) -> PreaugBisimplicialSet:
    _required(
        data,
        (
            "kind",
            "total_truncation",
            "levels",
            "augmentation",
            "vertical_faces",
            "vertical_degeneracies",
            "horizontal_faces",
            "horizontal_degeneracies",
            "eps",
        ),
        "sigma object",
    )
    levels_raw = _expect_dict(data["levels"], "levels")
    levels = {
        _int_key(key, 2, "levels"): _id_list(level, f"levels[{key}]")
        for key, level in levels_raw.items()
    }
    try:
        return PreaugBisimplicialSet(
            total_truncation=_expect_int(data["total_truncation"], "total_truncation"),
            levels=levels,
            augmentation=_id_list(data["augmentation"], "augmentation"),
            vertical_faces=_keyed_tables(data["vertical_faces"], 3, "vertical_faces"),
            vertical_degeneracies=_keyed_tables(
                data["vertical_degeneracies"], 3, "vertical_degeneracies"
            ),
            horizontal_faces=_keyed_tables(
                data["horizontal_faces"], 3, "horizontal_faces"
            ),
            horizontal_degeneracies=_keyed_tables(
                data["horizontal_degeneracies"], 3, "horizontal_degeneracies"
            ),
            eps=_string_table(data["eps"], "eps"),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Categories and proto-exact structures
# ---------------------------------------------------------------------------


def _nested_composition_to_data(
    composition: dict[tuple[str, str], str],
) -> dict[str, dict[str, str]]:
    nested: dict[str, dict[str, str]] = {}
    for (f, g), h in composition.items():
        nested.setdefault(f, {})[g] = h
    return nested


def _nested_composition_from_data(value: Any, what: str) -> dict[tuple[str, str], str]:
    outer = _expect_dict(value, what)
    composition: dict[tuple[str, str], str] = {}
    for f, inner in outer.items():
        for g, h in _string_table(inner, f"{what}[{f}]").items():
            composition[(f, g)] = h
    return composition


def _category_body(C: FiniteCategoryData) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": list(C.morphisms),
        "source": dict(C.source),
        "target": dict(C.target),
        "identity": dict(C.identity),
        "composition": _nested_composition_to_data(C.composition),
    }


_CATEGORY_FIELDS = ("objects", "morphisms", "source", "target", "identity", "composition")


def _category_from_body(data: dict, what: str) -> FiniteCategoryData:
    _required(data, _CATEGORY_FIELDS, what)
    return FiniteCategoryData(
        objects=_id_list(data["objects"], f"{what}.objects"),
        morphisms=_id_list(data["morphisms"], f"{what}.morphisms"),
        source=_string_table(data["source"], f"{what}.source"),
        target=_string_table(data["target"], f"{what}.target"),
        identity=_string_table(data["identity"], f"{what}.identity"),
        composition=_nested_composition_from_data(
            data["composition"], f"{what}.composition"
        ),
    )


def _category_to_data(C: FiniteCategoryData) -> dict:
    return {"kind": "category", **_category_body(C)}


def _category_from_data(data: dict) -> FiniteCategoryData:
    _required(data, ("kind",) + _CATEGORY_FIELDS, "category object")
    return _category_from_body(
        {key: value for key, value in data.items() if key != "kind"},
        "category object",
    )


def _oracle_to_data(
    oracle: dict[tuple[str, str], tuple[str, str]],
) -> dict[str, dict[str, list[str]]]:
    nested: dict[str, dict[str, list[str]]] = {}
    for (f, g), completion in oracle.items():
        nested.setdefault(f, {})[g] = list(completion)
    return nested


def _oracle_from_data(value: Any, what: str) -> dict[tuple[str, str], tuple[str, str]]:
    outer = _expect_dict(value, what)
    oracle: dict[tuple[str, str], tuple[str, str]] = {}
    for f, inner in outer.items():
        for g, completion in _expect_dict(inner, f"{what}[{f}]").items():
            pair = _id_list(completion, f"{what}[{f}][{g}]")
            _expect(len(pair) == 2, f"{what}[{f}][{g}] must be a pair")
            oracle[(f, g)] = (pair[0], pair[1])
    return oracle


def _proto_exact_to_data(E: ProtoExactData) -> dict:
    return {
        "kind": "proto-exact",
        "category": _category_body(E.category),
        "monos": list(E.monos),
        "epis": list(E.epis),
        "zeros": list(E.zeros),
        "pullbacks": _oracle_to_data(E.pullbacks),
        "pushouts": _oracle_to_data(E.pushouts),
    }


def _proto_exact_from_data(data: dict) -> ProtoExactData:
    _required(
        data,
        ("kind", "category", "monos", "epis", "zeros", "pullbacks", "pushouts"),
        "proto-exact object",
    )
    return ProtoExactData(
        category=_category_from_body(
            _expect_dict(data["category"], "category"), "category"
        ),
        monos=_id_list(data["monos"], "monos"),
        epis=_id_list(data["epis"], "epis"),
        zeros=_id_list(data["zeros"], "zeros"),
        pullbacks=_oracle_from_data(data["pullbacks"], "pullbacks"),
        pushouts=_oracle_from_data(data["pushouts"], "pushouts"),
    )


# ---------------------------------------------------------------------------
# Groupoid-valued diagrams
# ---------------------------------------------------------------------------


def _groupoid_body(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "morphisms": list(G.morphisms),
        "source": dict(G.source),
        "target": dict(G.target),
        "identity": dict(G.identity),
        "composition": _nested_composition_to_data(G.composition),
        "inverse": dict(G.inverse),
    }


_GROUPOID_FIELDS = _CATEGORY_FIELDS + ("inverse",)


def _groupoid_from_body(data: dict, what: str) -> FiniteGroupoid:
    _required(data, _GROUPOID_FIELDS, what)
    return FiniteGroupoid(
        objects=_id_list(data["objects"], f"{what}.objects"),
        morphisms=_id_list(data["morphisms"], f"{what}.morphisms"),
        source=_string_table(data["source"], f"{what}.source"),
        target=_string_table(data["target"], f"{what}.target"),
        identity=_string_table(data["identity"], f"{what}.identity"),
        composition=_nested_composition_from_data(
            data["composition"], f"{what}.composition"
        ),
        inverse=_string_table(data["inverse"], f"{what}.inverse"),
    )


def _functor_body(F: GroupoidFunctor) -> dict:
    return {"objects": dict(F.object_map), "morphisms": dict(F.morphism_map)}


def _functor_from_body(
    data: dict, source: FiniteGroupoid, target: FiniteGroupoid, what: str
) -> GroupoidFunctor:
    _required(data, ("objects", "morphisms"), what)
    return GroupoidFunctor(
        source_groupoid=source,
        target_groupoid=target,
        object_map=_string_table(data["objects"], f"{what}.objects"),
        morphism_map=_string_table(data["morphisms"], f"{what}.morphisms"),
    )


def _groupoid_sigma_to_data(D: GroupoidSigmaDiagram) -> dict:
    return {
        "kind": "groupoid-sigma",
        "total_truncation": D.total_truncation,
        "levels": {
            _fmt_key(key): _groupoid_body(G) for key, G in D.levels.items()
        },
        "augmentation": _groupoid_body(D.augmentation),
        "vertical_faces": {
            _fmt_key(key): _functor_body(F) for key, F in D.vertical_faces.items()
        },
        "vertical_degeneracies": {
            _fmt_key(key): _functor_body(F)
            for key, F in D.vertical_degeneracies.items()
        },
        "horizontal_faces": {
            _fmt_key(key): _functor_body(F) for key, F in D.horizontal_faces.items()
        },
        "horizontal_degeneracies": {
            _fmt_key(key): _functor_body(F)
            for key, F in D.horizontal_degeneracies.items()
        },
        "eps": _functor_body(D.eps),
    }


def _groupoid_sigma_from_data(data: dict) -> GroupoidSigmaDiagram:
    _required(
        data,
        (
            "kind",
            "total_truncation",
            "levels",
            "augmentation",
            "vertical_faces",
            "vertical_degeneracies",
            "horizontal_faces",
            "horizontal_degeneracies",
            "eps",
        ),
        "groupoid-sigma object",
    )
    levels_raw = _expect_dict(data["levels"], "levels")
    levels = {
        _int_key(key, 2, "levels"): _groupoid_from_body(
            _expect_dict(body, f"levels[{key}]"), f"levels[{key}]"
        )
        for key, body in levels_raw.items()
    }
    augmentation = _groupoid_from_body(
        _expect_dict(data["augmentation"], "augmentation"), "augmentation"
    )

    def functor_family(
        name: str, dv: int, dh: int
    ) -> dict[tuple[int, int, int], GroupoidFunctor]:
        outer = _expect_dict(data[name], name)
        family = {}
        for key_text, body in outer.items():
            a, b, i = _int_key(key_text, 3, name)
            source = levels.get((a, b))
            target = levels.get((a + dv, b + dh))
            _expect(
                source is not None and target is not None,
                f"{name}[{key_text}] connects bidegrees outside the levels table",
            )
            family[(a, b, i)] = _functor_from_body(
                _expect_dict(body, f"{name}[{key_text}]"),
                source,
                target,
                f"{name}[{key_text}]",
            )
        return family

    level_00 = levels.get((0, 0))
    _expect(level_00 is not None, "levels must include bidegree 0,0")
    return GroupoidSigmaDiagram(
        total_truncation=_expect_int(data["total_truncation"], "total_truncation"),
        levels=levels,
        augmentation=augmentation,
        vertical_faces=functor_family("vertical_faces", -1, 0),
        vertical_degeneracies=functor_family("vertical_degeneracies", 1, 0),
        horizontal_faces=functor_family("horizontal_faces", 0, -1),
        horizontal_degeneracies=functor_family("horizontal_degeneracies", 0, 1),
        eps=_functor_from_body(
            _expect_dict(data["eps"], "eps"), augmentation, level_00, "eps"
        ),
    )


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_TO_DATA = {
    TruncatedSimplicialSet: _sset_to_data,
    PreaugBisimplicialSet: _sigma_to_data,
    FiniteCategoryData: _category_to_data,
    ProtoExactData: _proto_exact_to_data,
    GroupoidSigmaDiagram: _groupoid_sigma_to_data,
}

_FROM_DATA = {
    "sset": _sset_from_data,
    "sigma": _sigma_from_data,
    "category": _category_from_data,
    "proto-exact": _proto_exact_from_data,
    "groupoid-sigma": _groupoid_sigma_from_data,
}

_VALIDATORS = {
    "sset": validate_simplicial,
    "sigma": validate_preaug,
    "category": validate_category,
    "proto-exact": validate_proto_exact,
    "groupoid-sigma": validate_groupoid_diagram,
}

_KIND_OF_TYPE = {
    TruncatedSimplicialSet: "sset",
    PreaugBisimplicialSet: "sigma",
    FiniteCategoryData: "category",
    ProtoExactData: "proto-exact",
    GroupoidSigmaDiagram: "groupoid-sigma",
}


def object_kind(obj: Any) -> str:
    """The file-format kind string of a typed object."""
    try:
        return _KIND_OF_TYPE[type(obj)]
    except KeyError:
        raise TypeError(f"no file format for {type(obj).__name__}") from None


def object_to_data(obj: Any) -> dict:
    """The JSON-able dictionary for any serializable object."""
    return _TO_DATA[type(obj)](obj)


def object_from_data(data: Any) -> Any:
    """Decode a typed object from parsed JSON; raises :class:`ParseError`."""
    body = _expect_dict(data, "top-level value")
    kind = body.get("kind")
    _expect(isinstance(kind, str), "object must declare a string 'kind'")
    if kind not in _FROM_DATA:
        raise ParseError(
            f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}"
        )
    return _FROM_DATA[kind](body)


def validation_report(obj: Any) -> CheckReport:
    """Run the axiom validator matching the object's kind."""
    return _VALIDATORS[object_kind(obj)](obj)


def serialize_object(obj: Any) -> str:
    """Canonical JSON text for a typed object."""
    return json.dumps(object_to_data(obj), indent=2, sort_keys=True) + "\n"


def write_object_file(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_object(obj))


def parse_object_file(path: str, validate: bool = True) -> Any:
    """Read, decode, and (by default) validate one object file.

    Raises :class:`ParseError` for unreadable or undecodable files and
    :class:`ValidationError` when the decoded object fails its axioms.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    obj = object_from_data(data)
    if validate:
        report = validation_report(obj)
        if report.verdict == "fail":
            raise ValidationError(report)
    return obj


def report_to_data(report: CheckReport) -> dict:
    """The JSON-able dictionary of a report (schema-stable field names)."""
    return {
        "verdict": report.verdict,
        "scope": report.scope,
        "instances": [
            {
                "condition": inst.condition,
                "index": list(inst.index),
                "role": inst.role,
                "kind": inst.kind,
                "witness": list(inst.witness),
            }
            for inst in report.instances
        ],
        "subreports": {
            name: report_to_data(sub) for name, sub in report.subreports.items()
        },
    }
