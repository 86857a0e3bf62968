"""JSON encoding of algebras, modules, coefficients and tables.

Rationals are strings ``"p/q"``; vectors are sorted lists of ``[index, value]``
pairs; matrices are ``{"rows", "cols", "entries": [[r, c, value], ...]}``.
Output is produced with sorted keys so equal objects give equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .exactlin import Mat, SparseVec, q, qstr
from .hopf import HopfAlgebra


class SchemaError(ValueError):
    """Input does not match the expected JSON layout."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    if not text.strip():
        raise SchemaError(f"{source}:1:1", "empty document")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{source}:{e.lineno}:{e.colno}", e.msg) from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SchemaError(path, e.strerror or str(e)) from None
    return loads(text, path)


# -- primitives ---------------------------------------------------------------------

def enc_vec(v: SparseVec) -> List[list]:
    return [[int(i), qstr(c)] for i, c in sorted(v.items()) if c]


def enc_mat(M: Mat) -> Dict[str, Any]:
    return {"rows": M.rows, "cols": M.cols, "entries": [[r, c, qstr(v)] for (r, c), v in M.items()]}


def _rational(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(where, "rationals must be strings 'p/q' or integers")
    try:
        return q(x)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(where, f"not a rational: {x!r}") from None


def _index(x, bound: int, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < bound:
        raise SchemaError(where, f"index must be an integer in [0, {bound})")
    return x


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    if key not in obj:
        raise SchemaError(f"{where}.{key}", "missing field")
    return obj[key]


def dec_vec(obj, length: int, where: str) -> SparseVec:
    if not isinstance(obj, list):
        raise SchemaError(where, "expected a list of [index, value] pairs")
    out: SparseVec = {}
    for n, pair in enumerate(obj):
        w = f"{where}[{n}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(w, "expected [index, value]")
        i = _index(pair[0], length, w + "[0]")
        if i in out:
            raise SchemaError(w, f"duplicate index {i}")
        v = _rational(pair[1], w + "[1]")
        if v:
            out[i] = v
    return out


def dec_mat(obj, where: str, shape: Optional[tuple] = None) -> Mat:
    rows = _field(obj, "rows", where)
    cols = _field(obj, "cols", where)
    for name, x in (("rows", rows), ("cols", cols)):
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise SchemaError(f"{where}.{name}", "expected a nonnegative integer")
    if shape is not None and (rows, cols) != shape:
        raise SchemaError(where, f"expected shape {shape}, got {(rows, cols)}")
    entries = {}
    raw = _field(obj, "entries", where)
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.entries", "expected a list")
    for n, t in enumerate(raw):
        w = f"{where}.entries[{n}]"
        if not isinstance(t, list) or len(t) != 3:
            raise SchemaError(w, "expected [row, col, value]")
        r = _index(t[0], rows, w + "[0]")
        c = _index(t[1], cols, w + "[1]")
        if (r, c) in entries:
            raise SchemaError(w, "duplicate entry")
        entries[(r, c)] = _rational(t[2], w + "[2]")
    return Mat(rows, cols, entries)


# -- Hopf algebras ---------------------------------------------------------------------

def hopf_to_json(H: HopfAlgebra) -> Dict[str, Any]:
    d = H.dim
    mult = []
    for i in range(d):
        for j in range(d):
            v = H.basis_product(i, j)
            if v:
                mult.append([i, j, enc_vec(v)])
    out = {
        "type": "hopf_algebra",
        "name": H.name,
        "dim": d,
        "basis": list(H.labels),
        "mult": mult,
        "unit": enc_vec(H.unit),
        "comult": [[i, enc_vec(H.comult.column(i))] for i in range(d) if H.comult.column(i)],
        "counit": enc_vec({i: c for i, c in enumerate(H.counit) if c}),
        "antipode": [[i, enc_vec(H.antipode.column(i))] for i in range(d) if H.antipode.column(i)],
    }
    if H._gens is not None:
        out["generators"] = [enc_vec(g) for g in H._gens]
    return out


def _columns(obj, d: int, length: int, where: str) -> Dict[int, SparseVec]:
    if not isinstance(obj, list):
        raise SchemaError(where, "expected a list of [index, vector]")
    out = {}
    for n, t in enumerate(obj):
        w = f"{where}[{n}]"
        if not isinstance(t, list) or len(t) != 2:
            raise SchemaError(w, "expected [index, vector]")
        i = _index(t[0], d, w + "[0]")
        if i in out:
            raise SchemaError(w, f"duplicate index {i}")
        out[i] = dec_vec(t[1], length, w + "[1]")
    return out


def hopf_from_json(obj) -> HopfAlgebra:
    where = "$"
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    d = _field(obj, "dim", where)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise SchemaError("$.dim", "expected a positive integer")
    basis = obj.get("basis", [f"e{i}" for i in range(d)])
    if not isinstance(basis, list) or len(basis) != d or not all(isinstance(s, str) for s in basis):
        raise SchemaError("$.basis", f"expected {d} strings")
    raw = _field(obj, "mult", where)
    if not isinstance(raw, list):
        raise SchemaError("$.mult", "expected a list of [i, j, vector]")
    entries = {}
    seen = set()
    for n, t in enumerate(raw):
        w = f"$.mult[{n}]"
        if not isinstance(t, list) or len(t) != 3:
            raise SchemaError(w, "expected [i, j, vector]")
        i = _index(t[0], d, w + "[0]")
        j = _index(t[1], d, w + "[1]")
        if (i, j) in seen:
            raise SchemaError(w, f"duplicate product ({i}, {j})")
        seen.add((i, j))
        for k, v in dec_vec(t[2], d, w + "[2]").items():
            entries[(k, i * d + j)] = v
    mult = Mat(d, d * d, entries)
    unit = dec_vec(_field(obj, "unit", where), d, "$.unit")
    cm = _columns(_field(obj, "comult", where), d, d * d, "$.comult")
    comult = Mat(d * d, d, {(k, i): v for i, vec in cm.items() for k, v in vec.items()})
    counit = dec_vec(_field(obj, "counit", where), d, "$.counit")
    sc = _columns(_field(obj, "antipode", where), d, d, "$.antipode")
    antipode = Mat(d, d, {(k, i): v for i, vec in sc.items() for k, v in vec.items()})
    gens = None
    if "generators" in obj:
        if not isinstance(obj["generators"], list):
            raise SchemaError("$.generators", "expected a list of vectors")
        gens = [dec_vec(g, d, f"$.generators[{n}]") for n, g in enumerate(obj["generators"])]
    name = obj.get("name", f"H[{d}]")
    if not isinstance(name, str):
        raise SchemaError("$.name", "expected a string")
    return HopfAlgebra(d, mult, unit, comult, [counit.get(i, 0) for i in range(d)], antipode,
                       labels=basis, generators=gens, name=name)


# -- modules and coefficients ---------------------------------------------------------

def rep_to_json(V) -> Dict[str, Any]:
    return {"type": "module", "name": V.name, "dim": V.dim,
            "actions": [enc_mat(V.action(i)) for i in range(V.algebra.dim)]}


def rep_from_json(obj, algebra, where: str = "$"):
    from .rep import Representation
    m = _field(obj, "dim", where)
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise SchemaError(f"{where}.dim", "expected a nonnegative integer")
    acts = _field(obj, "actions", where)
    if not isinstance(acts, list) or len(acts) != algebra.dim:
        raise SchemaError(f"{where}.actions", f"expected {algebra.dim} matrices")
    mats = [dec_mat(a, f"{where}.actions[{i}]", (m, m)) for i, a in enumerate(acts)]
    return Representation(algebra, m, mats, name=obj.get("name", "module"))


def zcoef_to_json(Z) -> Dict[str, Any]:
    return {"type": "zcoefficient", "name": Z.name, "module": rep_to_json(Z.module), "beta": enc_mat(Z.beta)}


def dmodule_to_json(M) -> Dict[str, Any]:
    return {"type": "dmodule", "name": M.name, "dim": M.dim,
            "h_actions": [enc_mat(M.hmod.action(i)) for i in range(M.hopf.dim)],
            "dual_actions": [enc_mat(M.dual_action(a)) for a in range(M.hopf.dim)]}


def coefficient_from_json(obj, H: HopfAlgebra, where: str = "$"):
    """A :class:`ZCoefficient` from either a ``zcoefficient`` or ``dmodule`` document."""
    from .double import ZCoefficient, dmodule_to_zmodule, DHModule
    from .rep import Representation
    kind = _field(obj, "type", where)
    name = obj.get("name")
    if kind == "zcoefficient":
        V = rep_from_json(_field(obj, "module", where), H, f"{where}.module")
        beta = dec_mat(_field(obj, "beta", where), f"{where}.beta", (V.dim, H.dim * V.dim))
        return ZCoefficient(V, beta, name=name)
    if kind == "dmodule":
        m = _field(obj, "dim", where)
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise SchemaError(f"{where}.dim", "expected a nonnegative integer")
        ha = _field(obj, "h_actions", where)
        da = _field(obj, "dual_actions", where)
        for key, lst in (("h_actions", ha), ("dual_actions", da)):
            if not isinstance(lst, list) or len(lst) != H.dim:
                raise SchemaError(f"{where}.{key}", f"expected {H.dim} matrices")
        hm = Representation(H, m, [dec_mat(a, f"{where}.h_actions[{i}]", (m, m)) for i, a in enumerate(ha)],
                            name=name)
        dm = [dec_mat(a, f"{where}.dual_actions[{i}]", (m, m)) for i, a in enumerate(da)]
        return dmodule_to_zmodule(DHModule(H, hm, dm, name=name))
    raise SchemaError(f"{where}.type", f"expected 'zcoefficient' or 'dmodule', got {kind!r}")


def table_to_json(table, timings: bool = False) -> Dict[str, Any]:
    out = table.to_dict()
    if not timings:
        out.pop("timings", None)
    return out
