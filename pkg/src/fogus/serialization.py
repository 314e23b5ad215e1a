"""JSON file formats.

Rationals are written as canonical strings ("3", "-1/2"); on input integers
and such strings are accepted, floats are rejected.  Every loader raises
:class:`FormatError` naming the offending field, e.g.
``object.exceptional[1].frobenius``.  References to other objects may be
inline, a path relative to the referring file, or ``@name`` for a bundled
example (see :func:`bundled_names`).
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import FogusError, FormatError
from .exactq import Matrix, format_rational, to_rational
from . import ogus_core as og
from . import weights as wt
from .complexes import FOgComplex, make_complex
from .homext import Cocycle, ExtensionTriple, make_cocycle
from .ogus_core import OgusMorphism, OgusObject
from .weights import FOgObject

__all__ = [
    "bundled_names",
    "read_json",
    "dumps",
    "matrix_to_json",
    "matrix_from_json",
    "object_to_json",
    "object_from_json",
    "load_object",
    "morphism_to_json",
    "morphism_from_json",
    "cocycle_to_json",
    "cocycle_from_json",
    "extension_to_json",
    "extension_from_json",
    "complex_to_json",
    "complex_from_json",
    "element_to_json",
    "element_from_json",
]


def bundled_names() -> list[str]:
    root = resources.files("fogus") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_json(ref: str | Path, base: Path | None = None) -> tuple[Any, Path]:
    """Parse a file (or ``@name`` bundled example); returns data and its directory."""
    ref = str(ref)
    if ref.startswith("@"):
        name = ref[1:]
        res = resources.files("fogus") / "data" / f"{name}.json"
        if not res.is_file():
            raise FormatError(f"no bundled example {ref!r}; available: {', '.join(bundled_names())}")
        text, where, folder = res.read_text(), ref, Path(".")
    else:
        path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
        try:
            text = path.read_text()
        except OSError as exc:
            raise FormatError(f"{ref}: cannot read ({exc.strerror})") from None
        where, folder = str(path), path.parent
    try:
        return json.loads(text), folder
    except json.JSONDecodeError as exc:
        raise FormatError(f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(data: Any) -> str:
    """Deterministic text: sorted keys, fixed indentation."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------ small pieces


def _field(data: dict, key: str, where: str, required: bool = True):
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected a JSON object")
    if key not in data:
        if required:
            raise FormatError(f"{where}: missing field {key!r}")
        return None
    return data[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def _rat(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: expected an integer or a rational string, got {x!r}")
    try:
        return to_rational(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise FormatError(f"{where}: not a rational: {x!r}") from None


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data, where: str, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise FormatError(f"{where}: expected a list of rows")
    widths = {len(r) for r in data}
    if len(widths) > 1:
        raise FormatError(f"{where}: rows have different lengths")
    cols = widths.pop() if widths else (shape[1] if shape else 0)
    rows = [[_rat(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(data)]
    m = Matrix(rows, cols)
    if shape is not None and m.shape != shape:
        raise FormatError(f"{where}: shape {m.shape}, expected {shape}")
    return m


def _wrap(where: str, fn, *args):
    """Run a constructor, re-raising its errors with field context."""
    try:
        return fn(*args)
    except FormatError:
        raise
    except (FogusError, ValueError) as exc:
        raise FormatError(f"{where}: {exc}") from None


# ----------------------------------------------------------------- objects


def object_to_json(X) -> dict:
    B = og.base_of(X)
    out: dict[str, Any] = {
        "dim": B.dim,
        "tail": list(B.tail),
        "exceptional": [{"p": p, "frobenius": matrix_to_json(phi)} for p, phi in B.exceptional],
    }
    if B.tail_basis is not None:
        out["tail_basis"] = matrix_to_json(B.tail_basis)
    if isinstance(X, FOgObject):
        out["weights"] = [{"index": i, "basis": matrix_to_json(b.T)} for i, b in X.weights.steps]
        if X.fog_prime:
            out["fog_prime"] = True
    return out


def object_from_json(data, where: str = "object", fog_prime: bool | None = None):
    """An :class:`OgusObject`, or a :class:`FOgObject` when weights are present."""
    dim = _int(_field(data, "dim", where), f"{where}.dim")
    if dim < 0:
        raise FormatError(f"{where}.dim: must be nonnegative")
    tail = _field(data, "tail", where, required=False)
    if tail is not None:
        if not isinstance(tail, list):
            raise FormatError(f"{where}.tail: expected a list of integers")
        tail = [_int(n, f"{where}.tail[{k}]") for k, n in enumerate(tail)]
        if len(tail) != dim:
            raise FormatError(f"{where}.tail: {len(tail)} twists for dimension {dim}")
    exc_data = _field(data, "exceptional", where, required=False) or []
    if not isinstance(exc_data, list):
        raise FormatError(f"{where}.exceptional: expected a list")
    exc, gauge = [], {}
    for k, item in enumerate(exc_data):
        w = f"{where}.exceptional[{k}]"
        p = _int(_field(item, "p", w), f"{w}.p")
        if not og.is_prime(p):
            raise FormatError(f"{w}.p: {p} is not a prime")
        exc.append((p, matrix_from_json(_field(item, "frobenius", w), f"{w}.frobenius", (dim, dim))))
        eps = _field(item, "epsilon", w, required=False)
        if eps is not None:
            gauge[p] = matrix_from_json(eps, f"{w}.epsilon", (dim, dim))
    tb = _field(data, "tail_basis", where, required=False)
    tb = None if tb is None else matrix_from_json(tb, f"{where}.tail_basis", (dim, dim))
    base = _wrap(where, og.make_object, dim, tail, exc, gauge, tb)
    steps = _field(data, "weights", where, required=False)
    if steps is None:
        return base
    if not isinstance(steps, list):
        raise FormatError(f"{where}.weights: expected a list")
    parsed = []
    for k, item in enumerate(steps):
        w = f"{where}.weights[{k}]"
        idx = _int(_field(item, "index", w), f"{w}.index")
        vecs = matrix_from_json(_field(item, "basis", w), f"{w}.basis")
        if vecs.rows and vecs.cols != dim:
            raise FormatError(f"{w}.basis: vectors must have length {dim}")
        parsed.append((idx, vecs.T if vecs.rows else Matrix.zeros(dim, 0)))
    indices = [i for i, _ in parsed]
    if indices != sorted(indices) or len(set(indices)) != len(indices):
        raise FormatError(f"{where}.weights: indices must be strictly increasing")
    if fog_prime is None:
        fp = _field(data, "fog_prime", where, required=False)
        if fp is not None and not isinstance(fp, bool):
            raise FormatError(f"{where}.fog_prime: expected a boolean")
        fog_prime = bool(fp)
    return _wrap(f"{where}.weights", wt.fog_object, base, parsed, None, fog_prime)


def load_object(ref, base: Path | None = None, where: str | None = None, fog_prime=None):
    """Inline object data, a path, or ``@name``."""
    if isinstance(ref, dict):
        return object_from_json(ref, where or "object", fog_prime)
    if not isinstance(ref, str):
        raise FormatError(f"{where or 'object'}: expected an inline object or a file reference")
    data, _ = read_json(ref, base)
    return object_from_json(data, where or str(ref), fog_prime)


# --------------------------------------------------------------- morphisms


def morphism_to_json(f: OgusMorphism) -> dict:
    return {"source": object_to_json(f.source), "target": object_to_json(f.target),
            "f_dR": matrix_to_json(f.f_dR)}


def morphism_from_json(data, where: str = "morphism", base: Path | None = None,
                       source=None, target=None) -> OgusMorphism:
    if source is None:
        source = load_object(_field(data, "source", where), base, f"{where}.source")
    if target is None:
        target = load_object(_field(data, "target", where), base, f"{where}.target")
    m = matrix_from_json(_field(data, "f_dR", where), f"{where}.f_dR", (target.dim, source.dim))
    return _wrap(where, OgusMorphism, source, target, m)


# ---------------------------------------------------------------- cocycles


def cocycle_to_json(x: Cocycle) -> dict:
    return {
        "tail_gen": matrix_to_json(x.tail_gen),
        "exceptional": [{"p": p, "value": matrix_to_json(v)} for p, v in x.exceptional],
    }


def cocycle_from_json(data, M, N, where: str = "cocycle", mode: str | None = None) -> Cocycle:
    shape = (N.dim, M.dim)
    g = _field(data, "tail_gen", where, required=False)
    g = Matrix.zeros(*shape) if g is None else matrix_from_json(g, f"{where}.tail_gen", shape)
    items = _field(data, "exceptional", where, required=False) or []
    if not isinstance(items, list):
        raise FormatError(f"{where}.exceptional: expected a list")
    exc = []
    for k, item in enumerate(items):
        w = f"{where}.exceptional[{k}]"
        exc.append((_int(_field(item, "p", w), f"{w}.p"),
                    matrix_from_json(_field(item, "value", w), f"{w}.value", shape)))
    return _wrap(where, make_cocycle, M, N, g, exc, mode)


# -------------------------------------------------------------- extensions


def extension_to_json(T: ExtensionTriple) -> dict:
    out = object_to_json(T.E)
    out["incl"] = {"source": object_to_json(T.incl.source), "f_dR": matrix_to_json(T.incl.f_dR)}
    out["proj"] = {"target": object_to_json(T.proj.target), "f_dR": matrix_to_json(T.proj.f_dR)}
    return out


def extension_from_json(data, where: str = "extension", base: Path | None = None,
                        sub=None, quotient=None) -> ExtensionTriple:
    E = object_from_json(data, where)
    inc = _field(data, "incl", where)
    prj = _field(data, "proj", where)
    if sub is None:
        sub = load_object(_field(inc, "source", f"{where}.incl"), base, f"{where}.incl.source")
    if quotient is None:
        quotient = load_object(_field(prj, "target", f"{where}.proj"), base, f"{where}.proj.target")
    i = morphism_from_json(inc, f"{where}.incl", base, sub, E)
    p = morphism_from_json(prj, f"{where}.proj", base, E, quotient)
    from .homext import check_extension
    T = ExtensionTriple(E, i, p)
    _wrap(where, check_extension, T)
    return T


# --------------------------------------------------------------- complexes


def complex_to_json(C: FOgComplex) -> dict:
    return {
        "terms": [{"degree": i, "object": object_to_json(X)} for i, X in C.terms],
        "differentials": [{"degree": i, "f_dR": matrix_to_json(m)} for i, m in C.differentials],
    }


def complex_from_json(data, where: str = "complex", base: Path | None = None) -> FOgComplex:
    items = _field(data, "terms", where)
    if not isinstance(items, list):
        raise FormatError(f"{where}.terms: expected a list")
    terms = {}
    for k, item in enumerate(items):
        w = f"{where}.terms[{k}]"
        i = _int(_field(item, "degree", w), f"{w}.degree")
        if i in terms:
            raise FormatError(f"{w}.degree: degree {i} listed twice")
        X = load_object(_field(item, "object", w), base, f"{w}.object")
        if not isinstance(X, FOgObject):
            raise FormatError(f"{w}.object: complex terms need a weights field")
        terms[i] = X
    diffs = {}
    d_items = _field(data, "differentials", where, required=False) or []
    if not isinstance(d_items, list):
        raise FormatError(f"{where}.differentials: expected a list")
    for k, item in enumerate(d_items):
        w = f"{where}.differentials[{k}]"
        i = _int(_field(item, "degree", w), f"{w}.degree")
        src = terms.get(i, wt.zero_fog())
        tgt = terms.get(i + 1, wt.zero_fog())
        diffs[i] = matrix_from_json(_field(item, "f_dR", w), f"{w}.f_dR", (tgt.dim, src.dim))
    return _wrap(where, make_complex, terms, diffs)


# --------------------------------------- degree-0 elements of the B complex


def element_to_json(b: dict[int, dict[int, Matrix]]) -> dict:
    return {"b": [{"p": p, "degree": i, "value": matrix_to_json(m)}
                  for p in sorted(b) for i, m in sorted(b[p].items())]}


def element_from_json(data, where: str = "element") -> dict[int, dict[int, Matrix]]:
    """``{"b": [{"p", "degree", "value"}, ...]}`` -> ``b[p][degree]``."""
    items = _field(data, "b", where)
    if not isinstance(items, list):
        raise FormatError(f"{where}.b: expected a list")
    out: dict[int, dict[int, Matrix]] = {}
    for k, item in enumerate(items):
        w = f"{where}.b[{k}]"
        p = _int(_field(item, "p", w), f"{w}.p")
        i = _int(_field(item, "degree", w), f"{w}.degree")
        if i in out.get(p, {}):
            raise FormatError(f"{w}: p={p}, degree {i} listed twice")
        out.setdefault(p, {})[i] = matrix_from_json(_field(item, "value", w), f"{w}.value")
    return out
