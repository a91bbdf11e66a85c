"""Instance files: one JSON document holding a space, valuations and functions.

Layout::

    {
      "space": {"elements": ["s0", "s1"], "lattice": [["s1"]], "close": true},
      "valuations": {
        "mu": {"dirac_combo": [{"coef": "1", "point": "s0"}, {"coef": "1", "point": "s1"}]},
        "nu": {"lattice_table": {"": "0", "s1": "0", "s0,s1": "1"}},
        "w":  {"atom_weights": {"s0": "1", "s1": "inf"}}
      },
      "functions": {"g": {"s0": "0", "s1": "2"}}
    }

A set is written as a comma-joined list of point names (``""`` is the empty
set) or as a JSON list of names.  With ``close: false`` the lattice list must
already be a lattice; with ``close: true`` it is a list of generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .choquet import LscFunction, lsc_check
from .errors import NotLsc, ValDensityError, ValidationFailure
from .exreal import ExtValue, format_ext
from .pervin import PervinSpace, close_lattice
from .valuation import Valuation, dirac_combo, from_atom_weights, from_lattice_table


class ParseError(ValDensityError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Instance:
    space: PervinSpace
    valuations: dict[str, Valuation] = field(default_factory=dict)
    functions: dict[str, LscFunction] = field(default_factory=dict)

    def valuation(self, name: str) -> Valuation:
        try:
            return self.valuations[name]
        except KeyError:
            raise ValidationFailure("valuations", f"no valuation named {name!r}") from None

    def function(self, name: str) -> LscFunction:
        try:
            return self.functions[name]
        except KeyError:
            raise ValidationFailure("functions", f"no function named {name!r}") from None


def parse_set(space: PervinSpace, label: Any, what: str) -> int:
    if isinstance(label, str):
        s = label.strip()
        if s in ("", "{}", "∅"):
            return 0
        names = [t.strip() for t in s.strip("{}").split(",")]
    elif isinstance(label, list):
        names = [str(t) for t in label]
    else:
        raise ValidationFailure(what, f"cannot read a set from {label!r}")
    try:
        return space.mask_of(names)
    except ValDensityError as e:
        raise ValidationFailure(what, str(e)) from None


def _ext(value: Any, what: str) -> ExtValue:
    try:
        if isinstance(value, int) and not isinstance(value, bool):
            return ExtValue(value)
        if isinstance(value, str):
            return ExtValue(value)
    except ValueError as e:
        raise ValidationFailure(what, str(e)) from None
    raise ValidationFailure(what, f"{value!r} is not an extended rational (use strings like \"3/4\" or \"inf\")")


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict) or "space" not in doc:
        raise ValidationFailure("instance", "missing 'space' section")
    sdoc = doc["space"]
    elements = sdoc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise ValidationFailure("space", "'elements' must be a non-empty list of names")
    raw_sets = sdoc.get("lattice", [])
    close = bool(sdoc.get("close", False))
    try:
        if close:
            probe = close_lattice([], elements)
            gens = [parse_set(probe, s, "space.lattice") for s in raw_sets]
            space = close_lattice([probe.names_of(m) for m in gens], elements)
        else:
            probe = close_lattice([], elements)
            masks = [parse_set(probe, s, "space.lattice") for s in raw_sets]
            space = PervinSpace.from_lattice(elements, masks)
    except ValidationFailure:
        raise
    except ValDensityError as e:
        raise ValidationFailure("space", str(e)) from None

    inst = Instance(space)
    for name, vdoc in (doc.get("valuations") or {}).items():
        inst.valuations[name] = _valuation_from_dict(space, name, vdoc)
    for name, fdoc in (doc.get("functions") or {}).items():
        what = f"functions.{name}"
        if not isinstance(fdoc, dict):
            raise ValidationFailure(what, "expected a map from point name to value")
        unknown = set(fdoc) - set(space.elements)
        if unknown:
            raise ValidationFailure(what, f"unknown point {sorted(unknown)[0]!r}")
        missing = [e for e in space.elements if e not in fdoc]
        if missing:
            raise ValidationFailure(what, f"no value for point {missing[0]!r}")
        h = lsc_check(space, {e: _ext(fdoc[e], what) for e in space.elements})
        if isinstance(h, NotLsc):
            raise ValidationFailure(
                what, f"not lower semicontinuous: level set above {h.threshold} is {{{space.label(h.level_set)}}}"
            )
        inst.functions[name] = h
    return inst


def _valuation_from_dict(space: PervinSpace, name: str, vdoc: Any) -> Valuation:
    what = f"valuations.{name}"
    if not isinstance(vdoc, dict) or len(vdoc) != 1:
        raise ValidationFailure(what, "expected exactly one of atom_weights, lattice_table, dirac_combo")
    (kind, body), = vdoc.items()
    try:
        if kind == "atom_weights":
            by_mask = {parse_set(space, k, what): _ext(v, what) for k, v in body.items()}
            atoms = {a.member_mask: a for a in space.atoms}
            for m in by_mask:
                if m not in atoms:
                    raise ValidationFailure(what, f"{{{space.label(m)}}} is not an atom of the space")
            for m, a in atoms.items():
                if m not in by_mask:
                    raise ValidationFailure(what, f"no weight for atom {{{space.label(m)}}}")
            return from_atom_weights(space, {atoms[m]: w for m, w in by_mask.items()})
        if kind == "lattice_table":
            table = {parse_set(space, k, what): _ext(v, what) for k, v in body.items()}
            for u in table:
                if not space.is_member(u):
                    raise ValidationFailure(what, f"{{{space.label(u)}}} is not a lattice member")
            missing = [u for u in space.lattice if u not in table]
            if missing:
                raise ValidationFailure(what, f"no value for lattice member {{{space.label(missing[0])}}}")
            return from_lattice_table(space, table)
        if kind == "dirac_combo":
            terms = []
            for t in body:
                if not isinstance(t, dict) or "point" not in t:
                    raise ValidationFailure(what, "dirac_combo terms need 'coef' and 'point'")
                terms.append((_ext(t.get("coef", "1"), what), str(t["point"])))
            return dirac_combo(space, terms)
    except ValidationFailure:
        raise
    except ValDensityError as e:
        raise ValidationFailure(what, str(e)) from None
    raise ValidationFailure(what, f"unknown valuation form {kind!r}")


def instance_to_dict(inst: Instance, *, generators: list[int] | None = None) -> dict:
    """Canonical document: element order, ascending masks, atom-weight form.

    With ``generators`` the lattice is written as those generators and
    ``close: true``; otherwise every member is listed.
    """
    sp = inst.space
    if generators is None:
        space_doc = {"elements": list(sp.elements), "lattice": [sp.label(u) for u in sp.lattice], "close": False}
    else:
        space_doc = {"elements": list(sp.elements), "lattice": [sp.label(u) for u in generators], "close": True}
    return {
        "space": space_doc,
        "valuations": {
            name: {"atom_weights": {sp.label(a.member_mask): format_ext(w) for a, w in zip(sp.atoms, v.weights)}}
            for name, v in inst.valuations.items()
        },
        "functions": {
            name: {e: format_ext(x) for e, x in zip(sp.elements, h.values)} for name, h in inst.functions.items()
        },
    }


def dumps(inst: Instance, **kw) -> str:
    return json.dumps(instance_to_dict(inst, **kw), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    return instance_from_dict(doc)


def load(ref: str | Path) -> Instance:
    """Load an instance from a path or from a shipped fixture name.

    Fixture names may carry a parameter, e.g. ``halfpow_no_density:7``.
    """
    p = Path(ref)
    if p.exists():
        return loads(p.read_text(encoding="utf-8"))
    name = str(ref)
    from . import fixtures

    if name in fixtures.BUILDERS or name.split(":")[0] in fixtures.BUILDERS:
        return fixtures.build(name)
    shipped = resources.files("valdensity") / "fixtures" / f"{name}.json"
    if shipped.is_file():
        return loads(shipped.read_text(encoding="utf-8"))
    raise ParseError(f"no such instance file or fixture: {ref}")


def rational_label(q: Fraction) -> str:
    return format_ext(ExtValue(q)) if q >= 0 else f"-{format_ext(ExtValue(-q))}"
