import json
from pathlib import Path

import pytest
from hypothesis import given, settings

from raagdyn.automorphism import Level, same_map
from raagdyn.diagram import build_diagram, cycle_analysis
from raagdyn.io import (
    SpecError,
    automorphism_to_spec,
    export_dot,
    parse_spec,
    serialize_spec,
)
from strategies import automorphisms

SPECS = Path(__file__).resolve().parent.parent / "specs"


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.stem)
def test_fixture_specs_verify(path):
    spec = parse_spec(path.read_text())
    phi = spec.automorphism()
    assert phi.level is Level.AUTOMORPHISM


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.stem)
def test_round_trip(path):
    spec = parse_spec(path.read_text())
    again = parse_spec(serialize_spec(spec))
    assert again == spec
    assert serialize_spec(again) == serialize_spec(spec)


def test_generator_spec_matches_images():
    gens = parse_spec((SPECS / "ns_generators.json").read_text()).automorphism()
    assert gens.provenance[0].__class__.__name__ == "PartialConjugation"
    assert str(gens.images["a"]) == "c a c^-1"


@pytest.mark.parametrize("doc, fragment", [
    ("{", "line 1"),
    ('{"graph": {}}', "graph: missing field 'vertices'"),
    ('{"graph": {"vertices": ["a"]}}', "missing field 'automorphism'"),
    ('{"graph": {"vertices": ["a"], "edges": [["a"]]}, "automorphism": {}}', "graph.edges[0]"),
    ('{"graph": {"vertices": ["a", "a"]}, "automorphism": {}}', "duplicate"),
    ('{"graph": {"vertices": ["a"]}, "automorphism": {"images": {}}}', "no word given"),
    ('{"graph": {"vertices": ["a"]}, "automorphism": {"images": {"a": "q"}}}', "automorphism.images.a"),
    ('{"graph": {"vertices": ["a"]}, "automorphism": {"images": {"a": "a", "z": "a"}}}', "unknown vertex"),
    ('{"graph": {"vertices": ["a"]}, "automorphism": {"generators": [{"type": "spin"}]}}',
     "automorphism.generators[0].type"),
    ('{"graph": {"vertices": ["a", "b"]}, "automorphism": {"generators": '
     '[{"type": "transvection", "v": "a", "w": "b", "sign": 2}]}}', "sign"),
])
def test_spec_errors(doc, fragment):
    with pytest.raises(SpecError) as info:
        parse_spec(doc)
    assert fragment in str(info.value)


def test_non_utf8_rejected():
    with pytest.raises(SpecError):
        parse_spec(b"\xff\xfe")


def test_dot_export(gp, phi_p):
    D = build_diagram(phi_p)
    text = export_dot(D, cycle_analysis(gp, D))
    assert text == (
        "digraph automorphism_diagram {\n"
        '  "a" [shape=ellipse,peripheries=2];\n'
        '  "b" [shape=ellipse,peripheries=2];\n'
        '  "c";\n'
        '  "a" -> "b";\n'
        '  "b" -> "a";\n'
        "}\n"
    )


def test_dot_complete_class(z2, tau):
    D = build_diagram(tau)
    assert '"a" [shape=box]' in export_dot(D, cycle_analysis(z2, D))


@settings(max_examples=40)
@given(automorphisms())
def test_automorphism_round_trip(phi):
    spec = automorphism_to_spec(phi)
    again = parse_spec(serialize_spec(spec))
    assert again == spec
    assert same_map(again.automorphism(), phi)
    json.loads(serialize_spec(spec))
