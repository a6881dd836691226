"""JSON and CSV formats for states, channels and reports.

A matrix is a row-major list of rows whose entries are ``[re, im]`` pairs.
States are ``{"dim": n, "mat": matrix}``; channels are
``{"dim": n, "kraus": [matrix, ...]}``. Floats are written with 17
significant digits so that parsing and re-emitting is lossless.
"""

import csv
import enum
import io
import json
import math

import numpy as np

from .channels import KrausChannel


class SchemaError(ValueError):
    pass


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    if key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    return obj[key]


def parse_matrix(rows, where="matrix"):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a non-empty list of rows")
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise SchemaError(f"{where}: row {i} has {len(row)} entries, expected {width}")
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)):
                raise SchemaError(f"{where}[{i}][{j}]: entry must be a [re, im] pair of numbers")
            out[i, j] = complex(z[0], z[1])
    if not np.all(np.isfinite(out)):
        raise SchemaError(f"{where}: non-finite entry")
    return out


def emit_matrix(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def parse_state(obj, where="state"):
    """Square matrix from the state schema (no density-matrix checks here)."""
    dim = _require(obj, "dim", where)
    mat = parse_matrix(_require(obj, "mat", where), f"{where}.mat")
    if not isinstance(dim, int) or mat.shape != (dim, dim):
        raise SchemaError(f"{where}: 'dim' is {dim!r} but 'mat' has shape {mat.shape}")
    return mat


def emit_state(rho):
    rho = np.asarray(rho)
    return {"dim": int(rho.shape[0]), "mat": emit_matrix(rho)}


def parse_channel(obj, where="channel"):
    dim = _require(obj, "dim", where)
    kraus = _require(obj, "kraus", where)
    if not isinstance(kraus, list) or not kraus:
        raise SchemaError(f"{where}: 'kraus' must be a non-empty list of matrices")
    ops = [parse_matrix(k, f"{where}.kraus[{i}]") for i, k in enumerate(kraus)]
    for i, k in enumerate(ops):
        if k.shape != (dim, dim):
            raise SchemaError(f"{where}.kraus[{i}]: shape {k.shape} does not match dim {dim}")
    return KrausChannel(tuple(ops))


def emit_channel(ch):
    return {"dim": ch.dim, "kraus": [emit_matrix(k) for k in ch.kraus]}


def loads(text, where="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_json(path):
    with open(path) as fh:
        return loads(fh.read(), str(path))


def format_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        # not representable in JSON
        return "null"
    return format(x, ".17g")


def _plain(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return emit_matrix(obj) if obj.ndim == 2 else [[float(z.real), float(z.imag)] for z in obj]
        return obj.tolist()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _is_scalar(v):
    return not isinstance(_plain(v), (dict, list, tuple))


def _is_flat(v):
    # scalars and short lists of scalars (complex [re, im] pairs) stay on one line
    v = _plain(v)
    return _is_scalar(v) or (isinstance(v, (list, tuple)) and len(v) <= 3
                             and all(_is_scalar(x) for x in v))


def dumps(obj, indent=2, _level=0):
    """Deterministic JSON with every float written to 17 significant digits."""
    obj = _plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [dumps(v, indent, _level + 1) for v in obj]
        if all(_is_flat(v) for v in obj):
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


TRAJECTORY_COLUMNS = ("t", "deficit_bits", "discord_bits", "converged_flag")


def trajectory_csv(points):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRAJECTORY_COLUMNS)
    for p in points:
        w.writerow([format_float(p.t), format_float(p.deficit), format_float(p.discord),
                    int(p.converged)])
    return buf.getvalue()


def parse_trajectory_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return [(float(r["t"]), float(r["deficit_bits"]), float(r["discord_bits"]),
             bool(int(r["converged_flag"]))) for r in rows]
