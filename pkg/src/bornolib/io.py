"""JSON and CSV readers/writers for universes, families, maps, sizes, topologies and clouds.

All structures share one JSON shape: a ``"universe"`` array of labels plus
structure-specific keys; subsets are arrays of labels.  Examples::

    {"universe": ["a", "b"], "family": [[], ["a"], ["b"], ["a", "b"]]}
    {"universe": ["a", "b"], "sizes": [[["a"], 1], [["a", "b"], "inf"]]}
    {"universe": ["a", "b"], "size": "counting"}
    {"universe": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}
    {"universe": ["a", "b"], "preorder": [["b", "a"]]}
    {"universe": ["x", "y", "z"], "leq": [["x", "z"], ["y", "z"]]}
    {"domain": ["1", "2"], "codomain": ["a"], "map": {"1": "a", "2": "a"}}
    {"points": [[0, 0], [1, 0]], "labels": ["p", "q"]}
"""

from __future__ import annotations

import csv
import functools
import json
from pathlib import Path

import numpy as np

from .bornology import FinitePoset, MapSpec, SetFamily
from .core import FiniteUniverse, ext, ext_to_json
from .errors import BornoError, ParseError
from .geometry import PointCloud
from .sizes import SizeTable, check_size_function, counting_size, submask_max, tabulate
from .topology import FiniteTopology


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _field(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    return doc[key]


def _parsing(fn):
    """Re-raise library contract errors met while decoding as :class:`ParseError`."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError:
            raise
        except (BornoError, TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from None
    return wrapper


@_parsing
def universe_from(doc: dict, key: str = "universe") -> FiniteUniverse:
    labels = _field(doc, key)
    if not isinstance(labels, list):
        raise ParseError(f"{key!r} must be an array of labels")
    return FiniteUniverse(tuple(labels))


def _mask(u: FiniteUniverse, labels) -> int:
    if not isinstance(labels, list):
        raise ParseError(f"subset must be an array of labels, got {labels!r}")
    return u.mask(labels)


@_parsing
def family_from(doc: dict, key: str = "family") -> SetFamily:
    u = universe_from(doc)
    return SetFamily(u, (_mask(u, s) for s in _field(doc, key)))


def family_to_doc(fam: SetFamily, key: str = "family") -> dict:
    u = fam.universe
    return {"universe": list(u.labels), key: [u.decode(m) for m in fam.masks]}


@_parsing
def poset_from(doc: dict) -> FinitePoset:
    u = universe_from(doc)
    return FinitePoset.from_labels(u, [tuple(p) for p in _field(doc, "leq")])


@_parsing
def map_from(doc: dict) -> MapSpec:
    dom = universe_from(doc, "domain")
    cod = universe_from(doc, "codomain")
    mapping = _field(doc, "map")
    if isinstance(mapping, list):
        mapping = dict(zip(dom.labels, mapping))
    return MapSpec.from_labels(dom, cod, {str(k): str(v) for k, v in mapping.items()})


@_parsing
def size_from(doc: dict, validate: bool = True) -> SizeTable:
    """Decode a size table, completing omitted subsets.

    An omitted subset gets the largest value listed for any of its subsets
    (0 if none), the least monotone completion.  Listed values are kept as
    given; with ``validate`` the completed table must be a size function.
    """
    u = universe_from(doc)
    if "size" in doc:
        if doc["size"] != "counting":
            raise ParseError(f"unknown named size {doc['size']!r}")
        table = tabulate(counting_size(u))
    else:
        u.require_enumerable()
        raw = np.zeros(1 << u.n)
        listed = {}
        for entry in _field(doc, "sizes"):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"size entry must be [subset, value], got {entry!r}")
            m = _mask(u, entry[0])
            if m in listed:
                raise ParseError(f"subset {u.format(m)} listed twice")
            listed[m] = ext(entry[1])
            raw[m] = listed[m]
        values = submask_max(raw, u.n)
        for m, v in listed.items():
            values[m] = v
        table = SizeTable(u, values, doc.get("name", "table"))
    if validate:
        verdict = check_size_function(table)
        if not verdict:
            raise ParseError(f"completed table is not a size function: {verdict}")
    return table


def size_to_doc(s) -> dict:
    t = tabulate(s)
    u = t.universe
    return {"universe": list(u.labels),
            "sizes": [[u.decode(m), ext_to_json(float(v))] for m, v in enumerate(t.values)]}


@_parsing
def topology_from(doc: dict) -> FiniteTopology:
    u = universe_from(doc)
    if "opens" in doc:
        return FiniteTopology(u, (_mask(u, g) for g in doc["opens"]))
    if "preorder" in doc:
        return FiniteTopology.from_preorder(
            u, [(u.index(a), u.index(b)) for a, b in doc["preorder"]])
    if doc.get("topology") in ("discrete", "indiscrete"):
        return getattr(FiniteTopology, doc["topology"])(u)
    raise ParseError("topology needs 'opens', 'preorder' or 'topology'")


def topology_to_doc(t: FiniteTopology) -> dict:
    return family_to_doc(t.opens, "opens")


@_parsing
def cloud_from(doc: dict) -> PointCloud:
    pts = _field(doc, "points")
    labels = doc.get("labels")
    if not pts:
        return PointCloud(np.zeros((0, int(doc.get("dim", 1)))), labels or [])
    return PointCloud(pts, labels)


def _number(x: str) -> bool:
    try:
        float(x)
    except ValueError:
        return False
    return True


def read_cloud_csv(path) -> PointCloud:
    """One point per row; a non-numeric last column holds labels.

    A first row that is entirely non-numeric is a header.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [[c.strip() for c in r] for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if rows and not any(_number(c) for c in rows[0]):
        rows = rows[1:]
    if not rows:
        raise ParseError(f"{path}: no points")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError(f"{path}: rows have different lengths")
    labelled = any(not _number(r[-1]) for r in rows)
    coords = [r[:-1] if labelled else r for r in rows]
    try:
        pts = [[float(c) for c in r] for r in coords]
        return PointCloud(pts, [r[-1] for r in rows] if labelled else None)
    except (ValueError, BornoError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def load_cloud(path) -> PointCloud:
    if Path(path).suffix.lower() == ".json":
        return cloud_from(read_json(path))
    return read_cloud_csv(path)
