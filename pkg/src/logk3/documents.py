"""File formats: pair and script documents (JSON) and boundary diagrams (DOT).

Component indices in files are 1-based; everything in memory is 0-based.
"""

from __future__ import annotations

import json
from typing import Any

from .boundary import (
    BoundaryError,
    Circular,
    Elliptic,
    LogSurfacePair,
    Nodal,
    Realization,
    _check_realization,
)
from .lattice import IntersectionLattice, LatticeError
from .surgery import (
    PRED,
    SUCC,
    CanonicalBlowdown,
    CanonicalBlowup,
    HalfPointAttach,
    Pivot,
    SurgeryStep,
)

__all__ = [
    "DocumentError",
    "parse_pair",
    "pair_to_document",
    "emit_document",
    "parse_script",
    "step_to_document",
    "to_dot",
    "load_json",
]


class DocumentError(ValueError):
    """Malformed input; the message names the offending field."""


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"field '{where}': expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise DocumentError(f"field '{where}': expected a list of integers")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _matrix(value: Any, where: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise DocumentError(f"field '{where}': expected a list of integer rows")
    return [_int_list(row, f"{where}[{i}]") for i, row in enumerate(value)]


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise DocumentError(f"field '{where}{key}': missing")
    return obj[key]


def parse_pair(data: Any) -> tuple[str, LogSurfacePair]:
    """Build ``(name, pair)`` from a decoded pair document."""
    if not isinstance(data, dict):
        raise DocumentError("pair document must be a JSON object")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("field 'name': expected a string")
    mode = data.get("mode", "type")
    if mode not in ("type", "lattice"):
        raise DocumentError(f"field 'mode': expected \"type\" or \"lattice\", got {json.dumps(mode)}")
    boundary = _require(data, "boundary", "")
    if not isinstance(boundary, dict):
        raise DocumentError("field 'boundary': expected an object")
    kind = _require(boundary, "kind", "boundary.")
    if kind == "circular":
        lambdas = _int_list(_require(boundary, "lambdas", "boundary."), "boundary.lambdas")
        try:
            shape = Circular(tuple(lambdas))
        except BoundaryError as exc:
            raise DocumentError(f"field 'boundary.lambdas': {exc}") from exc
    elif kind in ("nodal", "elliptic"):
        self_int = _int(_require(boundary, "self_int", "boundary."), "boundary.self_int")
        shape = Nodal(self_int) if kind == "nodal" else Elliptic(self_int)
    else:
        raise DocumentError(
            f"field 'boundary.kind': expected circular, nodal or elliptic, got {json.dumps(kind)}"
        )
    if mode == "type":
        return name, LogSurfacePair(shape)

    gram = _matrix(_require(data, "gram", ""), "gram")
    canonical = _int_list(_require(data, "canonical", ""), "canonical")
    classes = _matrix(_require(data, "boundary_classes", ""), "boundary_classes")
    try:
        lattice = IntersectionLattice(tuple(map(tuple, gram)), tuple(canonical))
        real = Realization(lattice, tuple(map(tuple, classes)))
        _check_realization(shape, real)
    except (LatticeError, BoundaryError) as exc:
        raise DocumentError(str(exc)) from exc
    return name, LogSurfacePair(shape, real)


def pair_to_document(name: str, S: LogSurfacePair) -> dict:
    shape = S.shape
    if isinstance(shape, Circular):
        boundary = {"kind": "circular", "lambdas": list(shape.lambdas)}
    else:
        kind = "nodal" if isinstance(shape, Nodal) else "elliptic"
        boundary = {"kind": kind, "self_int": shape.self_int}
    doc: dict = {"name": name, "mode": "type" if S.realization is None else "lattice"}
    doc["boundary"] = boundary
    if S.realization is not None:
        L = S.realization.lattice
        doc["gram"] = [list(row) for row in L.gram]
        doc["canonical"] = list(L.canonical)
        doc["boundary_classes"] = [list(c) for c in S.realization.boundary_classes]
    return doc


def emit_document(doc: dict) -> str:
    """One top-level key per line, values compact; keys keep insertion order."""
    if not doc:
        return "{}\n"
    lines = [f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


_OPS = ("blowup", "contract", "pivot", "attach")


def _index(step: dict, key: str, where: str) -> int:
    k = _int(_require(step, key, where), where + key)
    if k < 1:
        raise DocumentError(f"field '{where}{key}': indices are 1-based, got {k}")
    return k - 1


def parse_script(data: Any) -> list[SurgeryStep]:
    if isinstance(data, dict):
        data = _require(data, "steps", "")
    if not isinstance(data, list):
        raise DocumentError("field 'steps': expected a list")
    steps: list[SurgeryStep] = []
    for n, step in enumerate(data):
        where = f"steps[{n}]."
        if not isinstance(step, dict):
            raise DocumentError(f"field 'steps[{n}]': expected an object")
        op = _require(step, "op", where)
        if op == "blowup":
            edge = _int_list(_require(step, "edge", where), where + "edge")
            if len(edge) != 2 or min(edge) < 1:
                raise DocumentError(f"field '{where}edge': expected two 1-based indices")
            point = _int(step.get("point", 0), where + "point")
            steps.append(CanonicalBlowup((edge[0] - 1, edge[1] - 1), point))
        elif op == "contract":
            steps.append(CanonicalBlowdown(_index(step, "component", where)))
        elif op == "pivot":
            direction = step.get("direction", SUCC)
            if direction not in (SUCC, PRED):
                raise DocumentError(f"field '{where}direction': expected succ or pred")
            steps.append(Pivot(_index(step, "component", where), direction))
        elif op == "attach":
            steps.append(HalfPointAttach(_index(step, "component", where)))
        else:
            raise DocumentError(f"field '{where}op': expected one of {', '.join(_OPS)}, got {json.dumps(op)}")
    return steps


def step_to_document(step: SurgeryStep) -> dict:
    if isinstance(step, CanonicalBlowup):
        return {"op": "blowup", "edge": [step.edge[0] + 1, step.edge[1] + 1], "point": step.point}
    if isinstance(step, CanonicalBlowdown):
        return {"op": "contract", "component": step.component + 1}
    if isinstance(step, Pivot):
        return {"op": "pivot", "component": step.component + 1, "direction": step.direction}
    if isinstance(step, HalfPointAttach):
        return {"op": "attach", "component": step.component + 1}
    return {"op": "contract-curve", "class": list(step.cls)}


def to_dot(S: LogSurfacePair, name: str = "boundary") -> str:
    """Dual graph of D: one node per component, cycle edges, a self-loop on a nodal curve."""
    shape = S.shape
    graph_id = json.dumps(name or "boundary")
    out = [f"graph {graph_id} {{"]
    lam = S.lambdas
    for i, x in enumerate(lam):
        out.append(f'  D{i + 1} [label="D{i + 1} ({x})"];')
    if isinstance(shape, Nodal):
        out.append("  D1 -- D1;")
    elif isinstance(shape, Circular):
        n = shape.n
        if n == 2:
            out.extend(["  D1 -- D2;", "  D1 -- D2;"])
        else:
            out.extend(f"  D{i + 1} -- D{(i + 1) % n + 1};" for i in range(n))
    out.append("}")
    return "\n".join(out) + "\n"
