"""Reading and writing the JSON formats.

All coordinates travel as exact rational strings ("3", "-1/2"); floats in
input are rejected rather than rounded.  Serialization is canonical: keys
sorted, fixed separators, one trailing newline, so equal objects produce
byte-identical files.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .arrangement import (CodomainStratification, Face, LocusStratification,
                          SingularLocus, stratum_dimension)
from .complexes import SimplicialComplex, Simplex
from .errors import InputError
from .geometry import canon_key, format_frac
from .jacobi import GenericityReport, JacobiSet, PLMap
from .posets import StratifiedSpace, poset_to_json_dict
from .reeb import ReebGraph, ReebScaffold, SteinReport


def parse_fraction(x) -> Fraction:
    """Exact rational from an int or a "p/q" string; floats are refused."""
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"inexact or boolean number {x!r}; write rationals as strings")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"expected a rational, got {type(x).__name__}")


def encode_fraction(x) -> str:
    return format_frac(x)


def _encode_point(p) -> list:
    return [format_frac(c) for c in p]


# ---------------------------------------------------------------------------
# maps

def map_from_dict(data: dict) -> PLMap:
    """Build a map from {"k": ..., "facets": [[labels]], "values": {...}}.

    Vertex labels are strings.  For k = 1 every value is one rational, for
    higher k a list of k rationals.
    """
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    try:
        k = data["k"]
        facets = data["facets"]
        values = data["values"]
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from exc
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError("k must be a positive integer")
    if not isinstance(facets, list) or not all(isinstance(s, list) for s in facets):
        raise InputError("facets must be a list of label lists")
    if not isinstance(values, dict):
        raise InputError("values must map vertex labels to rationals")
    domain = SimplicialComplex.from_facets(facets)
    parsed = {}
    for v, val in values.items():
        if k == 1:
            parsed[v] = (parse_fraction(val),)
        else:
            if not isinstance(val, list) or len(val) != k:
                raise InputError(f"value of {v!r} must be a list of {k} rationals")
            parsed[v] = tuple(parse_fraction(c) for c in val)
    return PLMap(domain=domain, k=k, values=parsed)


def map_to_dict(f: PLMap) -> dict:
    values = {}
    for v in sorted(f.domain.vertices, key=canon_key):
        val = f.values[v]
        values[v] = format_frac(val[0]) if f.k == 1 else _encode_point(val)
    return {"k": f.k,
            "facets": [list(s) for s in sorted(f.domain.facets(), key=canon_key)],
            "values": values}


def load_map(path) -> PLMap:
    return map_from_dict(_load_json(path))


# ---------------------------------------------------------------------------
# loci

def locus_from_dict(data: dict) -> SingularLocus:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    strands = data.get("strands")
    if not isinstance(strands, list):
        raise InputError("strands must be a list of polylines")
    parsed = []
    for s in strands:
        if not isinstance(s, list):
            raise InputError("each strand must be a list of points")
        parsed.append(tuple(tuple(parse_fraction(c) for c in p) for p in s))
    cusps = data.get("cusps", [])
    try:
        marks = tuple((i, v) for i, v in cusps)
    except (TypeError, ValueError) as exc:
        raise InputError("cusps must be a list of [strand, vertex] pairs") from exc
    return SingularLocus(strands=tuple(parsed), cusp_marks=marks)


def locus_to_dict(locus: SingularLocus) -> dict:
    return {"strands": [[_encode_point(p) for p in s] for s in locus.strands],
            "cusps": [list(m) for m in locus.cusp_marks]}


def load_locus(path) -> SingularLocus:
    return locus_from_dict(_load_json(path))


def input_from_dict(data) -> PLMap | SingularLocus:
    """Dispatch on the "kind" field, falling back to the shape of the data."""
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    kind = data.get("kind", "locus" if "strands" in data else "map")
    if kind == "map":
        return map_from_dict(data)
    if kind == "locus":
        return locus_from_dict(data)
    raise InputError(f"unknown input kind {kind!r}")


def load_input(path) -> PLMap | SingularLocus:
    return input_from_dict(_load_json(path))


def example_input(name: str) -> PLMap | SingularLocus:
    return input_from_dict(load_example(name))


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# result encoders

def _encode_simplex(s: Simplex) -> list:
    return list(s)


def jacobi_to_dict(j: JacobiSet) -> dict:
    return {"notion": j.notion, "k": j.k,
            "simplices": [_encode_simplex(s) for s in j.complex.sorted_simplices()]}


def jacobi_report_dict(f: PLMap, j: JacobiSet) -> dict:
    """Critical subcomplex together with the verdict table over all
    candidate (k-1)-simplices, criticality under every applicable notion."""
    from .jacobi import criticality_verdict
    verdicts = []
    for s in f.domain.simplices_of_dim(f.k - 1):
        v = criticality_verdict(f, s)
        verdicts.append({"simplex": _encode_simplex(v.simplex),
                         "h_critical": v.h_critical,
                         "d_critical": v.d_critical,
                         "l_critical": v.l_critical})
    return {"critical": jacobi_to_dict(j), "verdicts": verdicts}


def genericity_to_dict(report: GenericityReport) -> dict:
    return {"passed": report.passed,
            "violations": [{"rule": code,
                            "witness": _jsonable(witness),
                            "detail": detail}
                           for code, witness, detail in report.violations]}


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_frac(x)
    if isinstance(x, (Simplex, tuple, list, frozenset, set)):
        items = sorted(x, key=canon_key) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def manifold_to_dict(report) -> dict:
    return {"pure": report.is_pure,
            "weak_pseudomanifold": report.is_weak_pseudomanifold,
            "verdict": report.complex_verdict,
            "links": {",".join(str(u) for u in v): verdict
                      for v, verdict in sorted(report.link_checks.items(),
                                               key=lambda kv: canon_key(kv[0]))},
            "notes": list(report.notes)}


def fiber_audit_to_dict(audit) -> dict:
    return {"critical_values": [format_frac(v) for v in audit.boundaries],
            "interval_counts": list(audit.counts),
            "passed": audit.passed,
            "samples": [list(d) for d in audit.detail]}


def stratified_space_to_dict(space: StratifiedSpace) -> dict:
    from .posets import _encode_label
    cells = sorted(space.cells, key=canon_key)
    return {"poset": poset_to_json_dict(space.poset),
            "cells": [_encode_label(_cell(c)) for c in cells],
            "assignment": [[_encode_label(_cell(c)),
                            _encode_label(space.assignment[c])] for c in cells],
            "closure": [[_encode_label(_cell(a)), _encode_label(_cell(b))]
                        for a, b in sorted(space.closure,
                                           key=lambda p: (canon_key(p[0]),
                                                          canon_key(p[1])))]}


def _cell(c):
    return tuple(c) if isinstance(c, Simplex) else c


def _encode_face(face: Face) -> dict:
    return {"bounded": face.bounded,
            "cycles": [[u for u, _ in walk] for walk in face.cycles]}


def codomain_to_dict(cs: CodomainStratification) -> dict:
    out = {"k": cs.k, "stratification": stratified_space_to_dict(cs.space)}
    geom = {}
    for label in sorted(cs.space.cells):
        g = cs.geometry[label]
        if cs.k == 1:
            if label.startswith("p"):
                geom[label] = format_frac(g)
            else:
                lo, hi = g
                geom[label] = [None if lo is None else format_frac(lo),
                               None if hi is None else format_frac(hi)]
        else:
            if label.startswith("v"):
                geom[label] = _encode_point(g)
            elif label.startswith("e"):
                geom[label] = [_encode_point(g[0]), _encode_point(g[1])]
            else:
                geom[label] = _encode_face(g)
    out["geometry"] = geom
    if cs.k == 2:
        arr = cs.refined.arrangement
        out["euler"] = {"vertices": len(arr.vertices), "edges": len(arr.edges),
                        "faces": len(arr.faces),
                        "components": arr.component_count()}
    out["multiplicities"] = list(cs.refined.multiplicities)
    return out


def locus_stratification_to_dict(ls: LocusStratification) -> dict:
    out = {"stratification": stratified_space_to_dict(ls.space),
           "marks": {z: sorted(ls.marks[z]) for z in sorted(ls.marks)}}
    geom = {}
    for label in sorted(ls.space.cells):
        g = ls.geometry[label]
        if label.startswith("z"):
            geom[label] = _encode_point(g)
        elif label.startswith("c"):
            geom[label] = [[_encode_point(a), _encode_point(b)] for a, b in g]
        else:
            geom[label] = _encode_face(g)
    out["geometry"] = geom
    arr = ls.arrangement
    out["euler"] = {"vertices": len(arr.vertices), "edges": len(arr.edges),
                    "faces": len(arr.faces), "components": arr.component_count()}
    return out


def reeb_to_dict(rg: ReebGraph) -> dict:
    return {"nodes": list(rg.nodes),
            "values": {n: format_frac(rg.node_value[n]) for n in rg.nodes},
            "critical_vertices": {n: list(rg.node_critical[n]) for n in rg.nodes},
            "edges": [list(e) for e in rg.edges],
            "cycle_rank": rg.cycle_rank(),
            "components": rg.component_count()}


def reeb_to_dot(rg: ReebGraph) -> str:
    """GraphViz text for a Reeb graph; nodes of one level share a rank."""
    lines = ["graph reeb {", "  rankdir=BT;"]
    for n in rg.nodes:
        lines.append(f'  {n} [label="{n} @ {format_frac(rg.node_value[n])}"];')
    by_level: dict = {}
    for n in rg.nodes:
        by_level.setdefault(rg.node_value[n], []).append(n)
    for t in sorted(by_level):
        ids = " ".join(sorted(by_level[t]))
        lines.append(f"  {{ rank=same; {ids} }}")
    for a, b in rg.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def filtration_text(chain) -> str:
    """A chain of strata as a filtration: one line per cell, holding the
    label, the cell dimension and the step index, increasing along the
    chain."""
    lines = [f"{label} {stratum_dimension(label)} {i}"
             for i, label in enumerate(chain)]
    return "".join(line + "\n" for line in lines)


def scaffold_to_dict(sc: ReebScaffold) -> dict:
    return {"poset": poset_to_json_dict(sc.poset),
            "counts": {s: sc.counts[s] for s in sorted(sc.counts)},
            "representatives": {s: _encode_point(sc.representatives[s])
                                for s in sorted(sc.representatives)},
            "codomain": codomain_to_dict(sc.codomain)}


def stein_to_dict(report: SteinReport) -> dict:
    from .posets import _encode_label
    cm = sorted(report.cell_map.items(), key=lambda kv: canon_key(kv[0]))
    return {"passed": report.passed,
            "continuous": report.continuous,
            "projection_monotone": report.projection_monotone,
            "projection_surjective": report.projection_surjective,
            "commutes": report.commutes,
            "notes": list(report.notes),
            "cell_map": [[_encode_label(tuple(s)), _encode_label(e)]
                         for s, e in cm]}


def canonical_dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, newline end."""
    return json.dumps(obj, sort_keys=True, indent=2,
                      separators=(",", ": "), ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# bundled examples

def example_names() -> list[str]:
    root = resources.files("plstrat.data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_example(name: str) -> dict:
    root = resources.files("plstrat.data")
    path = root / f"{name}.json"
    try:
        text = path.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as exc:
        raise InputError(f"no bundled example named {name!r}; "
                         f"try one of {', '.join(example_names())}") from exc
    return json.loads(text)


def example_map(name: str) -> PLMap:
    data = load_example(name)
    if data.get("kind") != "map":
        raise InputError(f"example {name!r} is not a map")
    return map_from_dict(data)


def example_locus(name: str) -> SingularLocus:
    data = load_example(name)
    if data.get("kind") != "locus":
        raise InputError(f"example {name!r} is not a contour")
    return locus_from_dict(data)
