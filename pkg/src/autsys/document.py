"""JSON documents for systems, partial orders and witnesses.

A system document has two keys::

    {"ground": ["v1", "v2", "v3"],
     "autonomous": [["v1"], ["v3"], ["v1", "v2"], ["v2", "v3"]]}

The empty set is implicit. Serialisation is canonical: labels sorted,
sets sorted by size and then lexicographically, the empty set listed first.
"""

from __future__ import annotations

import json
from typing import Any, Union

from .core import AutonomousSystem, ValidationReport, check_masks
from .minors import WitnessSequence
from .ops import QUOTIENT, ReductionStep
from .order import CanonicalOrder, PartialOrderRelation
from .quotient import Partition


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)
        self.line = line
        self.col = col


def _locate(text: str, needle: str, after: str | None = None) -> tuple[int | None, int | None]:
    start = text.find(after) if after else 0
    pos = text.find(needle, max(start, 0))
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"{what} must be a list of strings")
    return value


def parse_system(text: str) -> Union[AutonomousSystem, ValidationReport]:
    """Parse a system document; returns the report instead when axioms fail."""
    doc = _load(text)
    if not isinstance(doc, dict) or "ground" not in doc or "autonomous" not in doc:
        raise ParseError("expected an object with keys 'ground' and 'autonomous'")
    ground = _string_list(doc["ground"], "ground")
    if len(set(ground)) != len(ground):
        dup = next(x for x in ground if ground.count(x) > 1)
        raise ParseError(f"duplicate label {dup!r} in ground", *_locate(text, json.dumps(dup)))
    sets = doc["autonomous"]
    if not isinstance(sets, list):
        raise ParseError("'autonomous' must be a list of lists")
    known = set(ground)
    for s in sets:
        for x in _string_list(s, "each autonomous set"):
            if x not in known:
                raise ParseError(f"unknown element {x!r}", *_locate(text, json.dumps(x), '"autonomous"'))
    order = sorted(ground)
    idx = {x: i for i, x in enumerate(order)}
    masks = [0] + [sum(1 << idx[x] for x in set(s)) for s in sets]
    report = check_masks(order, masks)
    if report:
        return report
    return AutonomousSystem(tuple(order), report.family)


def system_to_doc(P: AutonomousSystem) -> dict:
    return {"ground": list(P.ground), "autonomous": [list(s) for s in P.sets()]}


def serialize_system(P: AutonomousSystem) -> str:
    return json.dumps(system_to_doc(P), indent=2)


def parse_poset(text: str) -> PartialOrderRelation:
    """``{"carrier": [...], "less": [[x, y], ...]}`` meaning x < y."""
    doc = _load(text)
    if not isinstance(doc, dict) or "carrier" not in doc:
        raise ParseError("expected an object with keys 'carrier' and 'less'")
    carrier = _string_list(doc["carrier"], "carrier")
    less = doc.get("less", [])
    if not isinstance(less, list) or not all(isinstance(p, list) and len(p) == 2 for p in less):
        raise ParseError("'less' must be a list of [x, y] pairs")
    return PartialOrderRelation.from_pairs(carrier, [tuple(p) for p in less])


def poset_to_doc(R: PartialOrderRelation) -> dict:
    return {"carrier": list(R.carrier), "less": [list(p) for p in R.strict_pairs()]}


def parse_subset(spec: str) -> list[str]:
    """``"a,b,c"``; the empty string is the empty set."""
    return [x.strip() for x in spec.split(",") if x.strip()]


def parse_partition(spec: str) -> Partition:
    """``"a1,a2;x;y;b1,b2"``: cells separated by ``;``."""
    return Partition.of([parse_subset(cell) for cell in spec.split(";")])


def step_to_doc(step: ReductionStep) -> dict:
    if step.kind == QUOTIENT:
        return {
            "kind": step.kind,
            "cells": [list(c) for c in step.operand.cells],
            "labels": list(step.operand.names),
        }
    return {"kind": step.kind, "subset": list(step.operand)}


def witness_to_doc(w: WitnessSequence, target: AutonomousSystem) -> dict:
    return {
        "source": system_to_doc(w.source),
        "target": system_to_doc(target),
        "steps": [step_to_doc(s) for s in w.steps],
        "intermediates": [system_to_doc(Q) for Q in w.intermediates],
        "final_iso": dict(sorted(w.final_iso.items())),
        "narrative": w.narrative(),
    }


def order_to_doc(o: CanonicalOrder) -> dict:
    return {
        "carrier": list(o.system.labels(o.carrier)),
        "less": [list(p) for p in sorted(o.strict_pairs())],
        "covers": [list(p) for p in o.covers()],
    }


def order_to_dot(o: CanonicalOrder, name: str = "canonical_order") -> str:
    """Graphviz Hasse diagram: one node per element, edges along covering pairs."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    for x in o.system.labels(o.carrier):
        lines.append(f"  {json.dumps(x)};")
    for x, y in o.covers():
        lines.append(f"  {json.dumps(x)} -> {json.dumps(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
