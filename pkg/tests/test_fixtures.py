import json
from importlib import resources

import pytest

from valdensity.fixtures import MAX_HALFPOW_DEPTH, build, halfpow_no_density, shipped_documents
from valdensity.instance import ParseError, instance_from_dict, load


def test_shipped_files_match_builders():
    docs = shipped_documents()
    root = resources.files("valdensity") / "fixtures"
    shipped = {p.name[:-5] for p in root.iterdir() if p.name.endswith(".json")}
    assert shipped == set(docs)
    for name, doc in docs.items():
        on_disk = json.loads((root / f"{name}.json").read_text(encoding="utf-8"))
        assert on_disk == doc, name


@pytest.mark.parametrize("name", sorted(shipped_documents()))
def test_shipped_files_load_to_builder_instances(name):
    from_file = instance_from_dict(shipped_documents()[name])
    built = build(name)
    assert from_file.space == built.space
    assert from_file.valuations == built.valuations
    assert from_file.functions == built.functions


def test_load_accepts_parameter():
    assert load("halfpow_no_density:4").space.elements == ("z", "x1", "x2", "x3", "x4")


def test_halfpow_depth_limits():
    with pytest.raises(ParseError):
        halfpow_no_density(MAX_HALFPOW_DEPTH + 1)
    with pytest.raises(ParseError):
        build("no_such_fixture")
