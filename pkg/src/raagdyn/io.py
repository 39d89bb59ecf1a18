"""Spec-file parsing, report serialisation and DOT export.

Spec files are JSON::

    {"graph": {"vertices": ["a", "b", "c"], "edges": [["a", "c"], ["b", "c"]]},
     "automorphism": {"images": {"a": "a b a^-1", "b": "b a^-1", "c": "c"},
                      "inverse_images": {...}}}

or with ``"automorphism": {"generators": [{"type": "transvection", "v": "a",
"w": "b"}, ...]}`` where ``type`` is one of ``inversion``, ``transvection``,
``partial_conjugation``, ``graph_symmetry``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .automorphism import (
    Automorphism,
    AutomorphismError,
    GraphSymmetry,
    Inversion,
    PartialConjugation,
    Transvection,
    from_generators,
    from_images,
)
from .diagram import AutomorphismDiagram, CycleClassification, CycleKind
from .graphs import GraphError, SimplicialGraph
from .words import WordError, format_word, parse_word


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SpecFile:
    graph: SimplicialGraph
    images: Optional[dict] = None  # vertex -> word text
    inverse_images: Optional[dict] = None
    generators: Optional[tuple] = None  # LS generator objects

    def automorphism(self) -> Automorphism:
        if self.generators is not None:
            return from_generators(self.graph, self.generators)
        return from_images(self.graph, self.images, self.inverse_images)


def _need(obj, key, where, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise SpecError(f"{where}.{key}: expected {kind.__name__}")
    return val


def _word_map(G, raw, where):
    if not isinstance(raw, dict):
        raise SpecError(f"{where}: expected an object mapping vertices to words")
    out = {}
    for v, text in raw.items():
        if v not in G.index:
            raise SpecError(f"{where}.{v}: unknown vertex {v!r}")
        if not isinstance(text, str):
            raise SpecError(f"{where}.{v}: word must be a string")
        try:
            parse_word(G, text)
        except WordError as exc:
            raise SpecError(f"{where}.{v}: {exc}") from None
        out[v] = text
    missing = [v for v in G.vertices if v not in out]
    if missing:
        raise SpecError(f"{where}: no word given for {missing}")
    return out


def _vertex(G, obj, key, where):
    v = _need(obj, key, where, str)
    if v not in G.index:
        raise SpecError(f"{where}.{key}: unknown vertex {v!r}")
    return v


def _sign(obj, where):
    s = obj.get("sign", 1)
    if s not in (1, -1) or isinstance(s, bool):
        raise SpecError(f"{where}.sign: must be 1 or -1")
    return s


def parse_generator(G: SimplicialGraph, obj, where="generator"):
    kind = _need(obj, "type", where, str)
    if kind == "inversion":
        return Inversion(_vertex(G, obj, "v", where))
    if kind == "transvection":
        return Transvection(_vertex(G, obj, "v", where), _vertex(G, obj, "w", where), _sign(obj, where))
    if kind == "partial_conjugation":
        comp = _need(obj, "component", where, list)
        for v in comp:
            if v not in G.index:
                raise SpecError(f"{where}.component: unknown vertex {v!r}")
        return PartialConjugation(comp, _vertex(G, obj, "w", where), _sign(obj, where))
    if kind == "graph_symmetry":
        perm = _need(obj, "perm", where, dict)
        for a, b in perm.items():
            if a not in G.index or b not in G.index:
                raise SpecError(f"{where}.perm: unknown vertex in {a!r} -> {b!r}")
        return GraphSymmetry(perm)
    raise SpecError(f"{where}.type: unknown generator type {kind!r}")


def generator_to_json(gen) -> dict:
    if isinstance(gen, Inversion):
        return {"type": "inversion", "v": gen.v}
    if isinstance(gen, Transvection):
        d = {"type": "transvection", "v": gen.v, "w": gen.w}
    elif isinstance(gen, PartialConjugation):
        d = {"type": "partial_conjugation", "component": sorted(gen.component), "w": gen.w}
    elif isinstance(gen, GraphSymmetry):
        return {"type": "graph_symmetry", "perm": dict(gen.perm)}
    else:
        raise TypeError(f"not a generator: {gen!r}")
    if gen.sign != 1:
        d["sign"] = gen.sign
    return d


def parse_spec(text) -> SpecFile:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    graph = _need(doc, "graph", "spec", dict)
    vertices = _need(graph, "vertices", "graph", list)
    edges = graph.get("edges", [])
    if not isinstance(edges, list):
        raise SpecError("graph.edges: expected list")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise SpecError(f"graph.edges[{i}]: expected a pair of vertex names")
    try:
        G = SimplicialGraph(vertices, [tuple(e) for e in edges])
    except (GraphError, TypeError) as exc:
        raise SpecError(f"graph: {exc}") from None
    auto = _need(doc, "automorphism", "spec", dict)
    if "generators" in auto:
        gens = _need(auto, "generators", "automorphism", list)
        parsed = tuple(parse_generator(G, g, f"automorphism.generators[{i}]") for i, g in enumerate(gens))
        return SpecFile(G, generators=parsed)
    images = _word_map(G, _need(auto, "images", "automorphism", dict), "automorphism.images")
    inv = auto.get("inverse_images")
    if inv is not None:
        inv = _word_map(G, inv, "automorphism.inverse_images")
    return SpecFile(G, images, inv)


def graph_to_json(G: SimplicialGraph) -> dict:
    return {"vertices": list(G.vertices), "edges": [list(e) for e in G.edge_list()]}


def spec_to_json(spec: SpecFile) -> dict:
    if spec.generators is not None:
        auto = {"generators": [generator_to_json(g) for g in spec.generators]}
    else:
        auto = {"images": dict(spec.images)}
        if spec.inverse_images is not None:
            auto["inverse_images"] = dict(spec.inverse_images)
    return {"graph": graph_to_json(spec.graph), "automorphism": auto}


def serialize_spec(spec: SpecFile) -> str:
    return json.dumps(spec_to_json(spec), indent=2) + "\n"


def automorphism_to_spec(phi: Automorphism) -> SpecFile:
    G = phi.graph
    images = {v: format_word(phi.images[v]) for v in G.vertices}
    inv = None
    if phi.inverse_images is not None:
        inv = {v: format_word(phi.inverse_images[v]) for v in G.vertices}
    return SpecFile(G, images, inv)


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(D: AutomorphismDiagram, C: CycleClassification) -> str:
    """DOT text for the diagram; complete cycle classes are boxes, empty
    ones double ellipses."""
    style = {}
    for cls in C.sccs:
        for v in cls.vertices:
            if cls.kind is CycleKind.COMPLETE:
                style[v] = "shape=box"
            elif cls.kind is CycleKind.EMPTY:
                style[v] = "shape=ellipse,peripheries=2"
    lines = ["digraph automorphism_diagram {"]
    for v in D.vertices:
        attrs = f" [{style[v]}]" if v in style else ""
        lines.append(f"  {_q(v)}{attrs};")
    for u, v in D.arcs():
        lines.append(f"  {_q(u)} -> {_q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


PARSE_ERRORS = (SpecError, GraphError, WordError, AutomorphismError)
