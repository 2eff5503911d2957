"""JSON encoding of the library's values.

Rationals travel as ``"p/q"`` strings so that round trips are exact.  The
``parse_*`` functions only check the *shape* of a document and raise
:class:`ParseError`; semantic checks (metric axioms, sphere condition, ...)
are left to the constructors, which raise ``ValueError`` subclasses.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .convex_geometry import SymPolytope, sc_hull
from .linf_embeddings import IsoEmbedding, SupportedVector
from .lipschitz_order import ColouringTable, FiniteMetricSpace
from .pumpkin import Pumpkin, Stage, TupleLinf
from .ramsey_harness import CopySystem


class ParseError(ValueError):
    pass


def rat(value: Fraction) -> str:
    return str(Fraction(value))


def rat_report(value: Fraction) -> dict:
    """A rational with a display-only decimal next to it."""
    value = Fraction(value)
    return {"exact": rat(value), "decimal": float(value)}


def parse_rat(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {value!r} as a rational") from None
    raise ParseError(f"{where}: expected a number or a 'p/q' string, got {type(value).__name__}")


def _obj(doc: Any, keys: tuple[str, ...], what: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"{what}: missing key(s) {', '.join(missing)}")
    return doc


def _list(doc: Any, where: str) -> list:
    if not isinstance(doc, list):
        raise ParseError(f"{where}: expected a list")
    return doc


def _int(doc: Any, where: str) -> int:
    if isinstance(doc, bool) or not isinstance(doc, int):
        raise ParseError(f"{where}: expected an integer")
    return doc


def _vector(doc: Any, where: str) -> tuple[Fraction, ...]:
    return tuple(parse_rat(v, f"{where}[{i}]") for i, v in enumerate(_list(doc, where)))


def _matrix(doc: Any, where: str, width: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    rows = tuple(_vector(r, f"{where}[{i}]") for i, r in enumerate(_list(doc, where)))
    widths = {len(r) for r in rows}
    if width is not None:
        widths.add(width)
    if len(widths) > 1:
        raise ParseError(f"{where}: rows have different lengths")
    return rows


# -- tuples and pumpkins -------------------------------------------------------


def tuple_to_json(x: TupleLinf) -> dict:
    return {"d": x.d, "n": x.n, "entries": [[rat(v) for v in r] for r in x.entries]}


def parse_tuple(doc: Any) -> TupleLinf:
    doc = _obj(doc, ("entries",), "tuple")
    rows = _matrix(doc["entries"], "entries")
    if not rows:
        raise ParseError("entries: a tuple needs at least one row")
    if "d" in doc and _int(doc["d"], "d") != len(rows):
        raise ParseError(f"d = {doc['d']} but entries has {len(rows)} rows")
    if "n" in doc and _int(doc["n"], "n") != len(rows[0]):
        raise ParseError(f"n = {doc['n']} but rows have length {len(rows[0])}")
    return TupleLinf(rows)


def polytope_to_json(P: SymPolytope) -> list:
    return [[rat(c) for c in g] for g in P.generators]


def _parse_polytope(doc: Any, where: str, dim: int) -> SymPolytope:
    gens = _matrix(doc, where, dim)
    if not gens:
        raise ParseError(f"{where}: a body needs at least one generator (use the zero vector for the origin)")
    return sc_hull(gens)


def pumpkin_to_json(P: Pumpkin) -> dict:
    return {
        "dim": P.dim,
        "stages": [{"base": polytope_to_json(s.base), "direction": [rat(c) for c in s.direction]}
                   for s in P.stages],
        "final": polytope_to_json(P.final),
    }


def parse_pumpkin(doc: Any) -> Pumpkin:
    doc = _obj(doc, ("dim", "stages", "final"), "pumpkin")
    dim = _int(doc["dim"], "dim")
    if dim < 1:
        raise ParseError("dim must be positive")
    stages = []
    for k, st in enumerate(_list(doc["stages"], "stages")):
        st = _obj(st, ("base", "direction"), f"stages[{k}]")
        direction = _vector(st["direction"], f"stages[{k}].direction")
        if len(direction) != dim:
            raise ParseError(f"stages[{k}].direction has length {len(direction)}, expected {dim}")
        stages.append(Stage(_parse_polytope(st["base"], f"stages[{k}].base", dim), direction))
    return Pumpkin(dim, tuple(stages), _parse_polytope(doc["final"], "final", dim))


# -- metric spaces and colourings ----------------------------------------------


def metric_to_json(K: FiniteMetricSpace) -> dict:
    return {"labels": list(K.labels), "dist": [[rat(v) for v in r] for r in K.dist]}


def parse_metric(doc: Any, where: str = "metric space") -> FiniteMetricSpace:
    doc = _obj(doc, ("labels", "dist"), where)
    labels = _list(doc["labels"], f"{where}.labels")
    for lab in labels:
        if not isinstance(lab, (str, int)) or isinstance(lab, bool):
            raise ParseError(f"{where}.labels: labels must be strings or integers")
    dist = _matrix(doc["dist"], f"{where}.dist", len(labels))
    if len(dist) != len(labels):
        raise ParseError(f"{where}: {len(labels)} labels but {len(dist)} distance rows")
    return FiniteMetricSpace(tuple(labels), dist)


def colouring_to_json(chi: ColouringTable) -> dict:
    return {"domain": metric_to_json(chi.domain), "target": metric_to_json(chi.target),
            "table": list(chi.table)}


def _table(doc: Any, where: str) -> tuple[int, ...]:
    return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(_list(doc, where)))


def parse_colouring(doc: Any) -> ColouringTable:
    doc = _obj(doc, ("domain", "target", "table"), "colouring")
    return ColouringTable(parse_metric(doc["domain"], "domain"), parse_metric(doc["target"], "target"),
                          _table(doc["table"], "table"))


# -- embeddings and c0 vectors -------------------------------------------------


def embedding_to_json(T: IsoEmbedding) -> dict:
    return {"m": T.m, "n": T.n, "rows": [[rat(v) for v in r] for r in T.rows]}


def parse_embedding(doc: Any) -> IsoEmbedding:
    doc = _obj(doc, ("m", "n", "rows"), "embedding")
    m, n = _int(doc["m"], "m"), _int(doc["n"], "n")
    rows = _matrix(doc["rows"], "rows", m)
    if len(rows) != n:
        raise ParseError(f"n = {n} but rows has {len(rows)} entries")
    return IsoEmbedding(m, n, rows)


def vector_to_json(v: SupportedVector) -> dict:
    return {"support": [[i, rat(x)] for i, x in v.entries]}


def parse_vector(doc: Any, where: str = "vector") -> SupportedVector:
    doc = _obj(doc, ("support",), where)
    entries = []
    for k, e in enumerate(_list(doc["support"], f"{where}.support")):
        e = _list(e, f"{where}.support[{k}]")
        if len(e) != 2:
            raise ParseError(f"{where}.support[{k}]: expected [index, value]")
        entries.append((_int(e[0], f"{where}.support[{k}][0]"), parse_rat(e[1], f"{where}.support[{k}][1]")))
    return SupportedVector(tuple(entries))


# -- copy systems --------------------------------------------------------------


def copy_system_to_json(system: CopySystem, k: int) -> dict:
    return {"objects": list(system.objects), "subcopies": [list(s) for s in system.subcopies], "k": k}


def parse_copy_system(doc: Any) -> tuple[CopySystem, int]:
    doc = _obj(doc, ("objects", "subcopies", "k"), "copy system")
    objects = _list(doc["objects"], "objects")
    subs = tuple(_table(s, f"subcopies[{i}]") for i, s in enumerate(_list(doc["subcopies"], "subcopies")))
    k = _int(doc["k"], "k")
    return CopySystem(tuple(_freeze(o) for o in objects), subs), k


def _freeze(obj: Any) -> Any:
    if isinstance(obj, list):
        return tuple(_freeze(o) for o in obj)
    return obj
