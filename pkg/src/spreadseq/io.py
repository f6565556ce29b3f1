"""
JSON / CSV export of spreading matrices.

Both formats keep phases as integers so a round trip is exact. The CSV file
starts with a ``# {...}`` line carrying the same metadata as the JSON file
(without the phases), then a header ``s0,s1,...`` and one row per chip.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .errors import ParseError, SpreadSeqError
from .quadform import PsiSpec, QuadMatrix
from .spreading import SpreadingMatrix

FORMATS = ("json", "csv")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def metadata(phi: SpreadingMatrix, normalization: str = "none") -> dict:
    blocks = []
    for k, A in enumerate(phi.blocks):
        entry = {"matrix": A.matrix.tolist(), "linear_forms_range": [k * phi.M, (k + 1) * phi.M - 1]}
        if A.spec is not None:
            entry.update(A.spec.to_dict())
        blocks.append(entry)
    prov = dict(phi.provenance)
    return _jsonable({
        "p": phi.p,
        "m": phi.m,
        "q": phi.q,
        "h": phi.h,
        "M": phi.M,
        "N": phi.N,
        "construction": prov.pop("construction", None),
        "params": prov,
        "blocks": blocks,
        "normalization": normalization,
    })


def dumps_json(phi: SpreadingMatrix, normalization: str = "none") -> str:
    doc = metadata(phi, normalization)
    doc["phases"] = phi.phases.tolist()
    return json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n"


def dumps_csv(phi: SpreadingMatrix, normalization: str = "none") -> str:
    buf = _io.StringIO()
    buf.write("# " + json.dumps(metadata(phi, normalization), separators=(",", ":"), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"s{j}" for j in range(phi.N)])
    w.writerows(phi.phases.tolist())
    return buf.getvalue()


def save(phi: SpreadingMatrix, path, fmt: str | None = None, normalization: str = "none") -> Path:
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    text = dumps_json(phi, normalization) if fmt == "json" else dumps_csv(phi, normalization)
    path.write_text(text)
    return path


def _need(doc: dict, key: str, kind, where: str = "document"):
    if key not in doc:
        raise ParseError(f"{where}: missing field '{key}'")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"{where}: field '{key}' has the wrong type ({type(val).__name__})")
    return val


def _from_meta(meta: dict, phases: np.ndarray) -> SpreadingMatrix:
    p = _need(meta, "p", int)
    _need(meta, "m", int)
    h = _need(meta, "h", int)
    raw_blocks = _need(meta, "blocks", list)
    if not raw_blocks:
        raise ParseError("field 'blocks': no blocks listed")
    blocks = []
    for k, b in enumerate(raw_blocks):
        where = f"blocks[{k}]"
        if not isinstance(b, dict):
            raise ParseError(f"{where}: expected an object")
        mat = _need(b, "matrix", list, where)
        spec = None
        if all(key in b for key in ("pi", "a", "d")):
            spec = PsiSpec(tuple(b["pi"]), tuple(v % p for v in b["a"]), tuple(v % p for v in b["d"]))
        try:
            blocks.append(QuadMatrix(np.asarray(mat, dtype=np.int64), p, spec))
        except (SpreadSeqError, ValueError, TypeError) as exc:
            raise ParseError(f"{where}.matrix: {exc}") from None
    prov = dict(meta.get("params") or {})
    if meta.get("construction") is not None:
        prov["construction"] = meta["construction"]
    try:
        return SpreadingMatrix(tuple(blocks), h, phases, prov)
    except (SpreadSeqError, ValueError) as exc:
        raise ParseError(f"field 'phases': {exc}") from None


def loads_json(text: str) -> SpreadingMatrix:
    if not text.strip():
        raise ParseError("line 1: empty file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("line 1: top level must be a JSON object")
    raw = _need(doc, "phases", list)
    try:
        phases = np.asarray(raw, dtype=np.int64)
    except (ValueError, TypeError):
        raise ParseError("field 'phases': rows must be equal-length integer lists") from None
    if phases.ndim != 2:
        raise ParseError("field 'phases': expected a 2-D array")
    return _from_meta(doc, phases)


def loads_csv(text: str) -> SpreadingMatrix:
    lines = text.splitlines()
    if not lines or not text.strip():
        raise ParseError("line 1: empty file")
    if not lines[0].startswith("#"):
        raise ParseError("line 1: expected '# {metadata}' header")
    try:
        meta = json.loads(lines[0][1:])
    except json.JSONDecodeError as exc:
        raise ParseError(f"line 1, column {exc.colno + 1}: {exc.msg}") from None
    if not isinstance(meta, dict):
        raise ParseError("line 1: metadata must be a JSON object")
    if len(lines) < 2:
        raise ParseError("line 2: missing column header")
    header = next(csv.reader([lines[1]]))
    rows = []
    for lineno, row in enumerate(csv.reader(lines[2:]), start=3):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: {len(row)} fields, header has {len(header)}")
        try:
            rows.append([int(v) for v in row])
        except ValueError:
            bad = next(i for i, v in enumerate(row) if not v.strip().lstrip("-").isdigit())
            raise ParseError(f"line {lineno}, field {bad + 1} ({header[bad]}): not an integer: {row[bad]!r}") from None
    if not rows:
        raise ParseError("line 3: no phase rows")
    return _from_meta(meta, np.asarray(rows, dtype=np.int64))


def load(path, fmt: str | None = None) -> SpreadingMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except UnicodeDecodeError:
        raise ParseError(f"{path}: not a text file") from None
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" or text.startswith("#") else "json"
    return loads_csv(text) if fmt == "csv" else loads_json(text)
