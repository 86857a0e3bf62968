"""Exact sparse linear algebra over the rationals.

Scalars are Python ``int`` or :class:`fractions.Fraction`; a Fraction whose
denominator is 1 is always stored as an ``int`` so that the common case of
integer structure constants stays on the fast integer path.

Matrices are immutable, row-major dictionaries of nonzero entries.  Rank and
kernel computations run a fraction-free elimination over the integers (rows
are cleared of denominators and kept primitive).  A modular rank is available
as a lower bound; the exact path is always the reference.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
SparseVec = Dict[int, Scalar]


def q(x) -> Scalar:
    """Coerce ``x`` to an exact scalar (int when integral)."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        x = Fraction(x.strip())
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return int(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _norm(x: Scalar) -> Scalar:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def qstr(x: Scalar) -> str:
    """Serialize a scalar as ``"p/q"``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class DimensionError(ValueError):
    pass


class Mat:
    """Sparse exact matrix.

    ``Mat(rows, cols, entries)`` accepts a mapping ``(r, c) -> value``.
    Zero entries are dropped.  Instances must not be mutated.
    """

    __slots__ = ("rows", "cols", "_data", "_T")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative shape")
        self.rows = rows
        self.cols = cols
        self._T = None
        data: Dict[int, SparseVec] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionError(f"index {(r, c)} out of range for {rows}x{cols}")
                v = q(v)
                if v:
                    data.setdefault(r, {})[c] = v
        self._data = data

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, rows: int, cols: int, data: Dict[int, SparseVec]) -> "Mat":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        m._T = None
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Mat":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "Mat":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise DimensionError("ragged dense matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(nr, nc, entries)

    @classmethod
    def from_rows(cls, rows: int, cols: int, vecs: Iterable[Mapping[int, object]]) -> "Mat":
        data = {}
        for r, vec in enumerate(vecs):
            row = {c: q(v) for c, v in vec.items() if v}
            if row:
                if max(row) >= cols or min(row) < 0:
                    raise DimensionError("column index out of range")
                data[r] = row
        return cls._raw(rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, vecs: Sequence[Mapping[int, object]]) -> "Mat":
        return cls.from_rows(len(vecs), rows, vecs).T

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "Mat":
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def __getitem__(self, rc: Tuple[int, int]) -> Scalar:
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return self._data.get(r, {}).get(c, 0)

    def row(self, r: int) -> SparseVec:
        """Row ``r`` as a sparse dict.  Callers must not mutate it."""
        return self._data.get(r, {})

    def column(self, c: int) -> SparseVec:
        return self.T.row(c)

    def columns(self) -> List[SparseVec]:
        t = self.T
        return [t.row(c) for c in range(self.cols)]

    def nonzero_rows(self) -> Iterator[Tuple[int, SparseVec]]:
        return iter(sorted(self._data.items()))

    def items(self) -> Iterator[Tuple[Tuple[int, int], Scalar]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, nnz={self.nnz})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> "Mat":
        if self._T is None:
            data: Dict[int, SparseVec] = {}
            for r, row in self._data.items():
                for c, v in row.items():
                    data.setdefault(c, {})[r] = v
            t = Mat._raw(self.cols, self.rows, data)
            t._T = self
            self._T = t
        return self._T

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        data = {}
        for r, row in self._data.items():
            acc: SparseVec = {}
            for k, v in row.items():
                orow = odata.get(k)
                if orow is None:
                    continue
                for c, w in orow.items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: _norm(x) for c, x in acc.items() if x}
            if acc:
                data[r] = acc
        return Mat._raw(self.rows, other.cols, data)

    def _combine(self, other: "Mat", sign: int) -> "Mat":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            acc = data.setdefault(r, {})
            for c, v in row.items():
                x = acc.get(c, 0) + sign * v
                if x:
                    acc[c] = _norm(x)
                else:
                    acc.pop(c, None)
            if not acc:
                del data[r]
        return Mat._raw(self.rows, self.cols, data)

    def __add__(self, other: "Mat") -> "Mat":
        return self._combine(other, 1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._combine(other, -1)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, s) -> "Mat":
        s = q(s)
        if not s:
            return Mat.zero(self.rows, self.cols)
        return Mat._raw(self.rows, self.cols,
                        {r: {c: _norm(v * s) for c, v in row.items()} for r, row in self._data.items()})

    def __mul__(self, s) -> "Mat":
        return self.scale(s)

    __rmul__ = __mul__

    def apply(self, vec: Mapping[int, Scalar]) -> SparseVec:
        """Matrix-vector product with a sparse column vector."""
        t = self.T._data
        acc: SparseVec = {}
        for k, v in vec.items():
            col = t.get(k)
            if col is None:
                continue
            for r, w in col.items():
                acc[r] = acc.get(r, 0) + v * w
        return {r: _norm(x) for r, x in acc.items() if x}

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        cmap = {c: j for j, c in enumerate(cols)}
        data = {}
        for i, r in enumerate(rows):
            row = {cmap[c]: v for c, v in self._data.get(r, {}).items() if c in cmap}
            if row:
                data[i] = row
        return Mat._raw(len(rows), len(cols), data)


def lincomb(mats: Sequence[Mat], coeffs: Sequence[Scalar], rows: int, cols: int) -> Mat:
    """``sum(c * M)`` over paired coefficients and matrices."""
    data: Dict[int, SparseVec] = {}
    for m, s in zip(mats, coeffs):
        if not s:
            continue
        for r, row in m._data.items():
            acc = data.setdefault(r, {})
            for c, v in row.items():
                acc[c] = acc.get(c, 0) + s * v
    clean = {}
    for r, acc in data.items():
        acc = {c: _norm(x) for c, x in acc.items() if x}
        if acc:
            clean[r] = acc
    return Mat._raw(rows, cols, clean)


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product; composite index ``(i, j) -> i * rows(B) + j``."""
    br, bc = B.rows, B.cols
    bdata = B._data
    data = {}
    for ra, rowa in A._data.items():
        base_r = ra * br
        for rb, rowb in bdata.items():
            out = {}
            for ca, va in rowa.items():
                base_c = ca * bc
                for cb, vb in rowb.items():
                    out[base_c + cb] = _norm(va * vb)
            data[base_r + rb] = out
    return Mat._raw(A.rows * br, A.cols * bc, data)


def kron_all(mats: Sequence[Mat]) -> Mat:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def hstack(mats: Sequence[Mat]) -> Mat:
    rows = mats[0].rows
    data: Dict[int, SparseVec] = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise DimensionError("hstack row mismatch")
        for r, row in m._data.items():
            acc = data.setdefault(r, {})
            for c, v in row.items():
                acc[off + c] = v
        off += m.cols
    return Mat._raw(rows, off, data)


def vstack(mats: Sequence[Mat]) -> Mat:
    cols = mats[0].cols
    data = {}
    off = 0
    for m in mats:
        if m.cols != cols:
            raise DimensionError("vstack column mismatch")
        for r, row in m._data.items():
            data[off + r] = dict(row)
        off += m.rows
    return Mat._raw(off, cols, data)


def block_diag(mats: Sequence[Mat]) -> Mat:
    data = {}
    ro = co = 0
    for m in mats:
        for r, row in m._data.items():
            data[ro + r] = {co + c: v for c, v in row.items()}
        ro += m.rows
        co += m.cols
    return Mat._raw(ro, co, data)


def permutation_matrix(perm: Sequence[int]) -> Mat:
    """Matrix sending basis vector ``i`` to basis vector ``perm[i]``."""
    n = len(perm)
    return Mat._raw(n, n, {perm[i]: {i: 1} for i in range(n)})


def swap_matrix(m: int, n: int) -> Mat:
    """The flip ``V (x) W -> W (x) V`` for ``dim V = m``, ``dim W = n``."""
    return permutation_matrix([j * m + i for i in range(m) for j in range(n)])


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _primitive(row: Mapping[int, Scalar]) -> Dict[int, int]:
    """Scale a rational row to a primitive integer row (same sign)."""
    den = 1
    for v in row.values():
        if type(v) is not int:
            den = lcm(den, v.denominator)
    if den != 1:
        row = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return dict(row)


class Echelon:
    """Incremental row-echelon form.

    Rows are inserted one at a time and reduced against existing pivots in
    increasing column order; the first uncovered column becomes a new pivot.
    With ``modulus=None`` arithmetic is fraction-free over the integers,
    otherwise it is over GF(modulus) with monic pivots.
    """

    def __init__(self, ncols: int, modulus: Optional[int] = None):
        self.ncols = ncols
        self.modulus = modulus
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prep(self, row: Mapping[int, Scalar]) -> Dict[int, int]:
        p = self.modulus
        if p is None:
            return _primitive(row)
        out = {}
        for c, v in row.items():
            if type(v) is not int:
                v = v.numerator * pow(v.denominator, -1, p)
            v %= p
            if v:
                out[c] = v
        return out

    def add(self, row: Mapping[int, Scalar]) -> bool:
        """Insert a row; return True if it raised the rank."""
        if not row:
            return False
        r = self._prep(row)
        if not r:
            return False
        pivots = self.pivots
        p = self.modulus
        heap = list(r)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            rv = r.get(c)
            if rv is None:
                continue
            prow = pivots.get(c)
            if prow is None:
                if p is None:
                    r = _primitive(r)
                    if r[c] < 0:
                        r = {k: -v for k, v in r.items()}
                else:
                    inv = pow(rv, -1, p)
                    r = {k: v * inv % p for k, v in r.items()}
                pivots[c] = r
                return True
            if p is None:
                pv = prow[c]
                g = gcd(pv, rv)
                a, b = pv // g, rv // g
                if a != 1:
                    r = {k: v * a for k, v in r.items()}
                for k, v in prow.items():
                    x = r.get(k)
                    if x is None:
                        r[k] = -b * v
                        heapq.heappush(heap, k)
                    else:
                        x -= b * v
                        if x:
                            r[k] = x
                        else:
                            del r[k]
            else:
                for k, v in prow.items():
                    x = r.get(k)
                    if x is None:
                        r[k] = (-rv * v) % p
                        heapq.heappush(heap, k)
                    else:
                        x = (x - rv * v) % p
                        if x:
                            r[k] = x
                        else:
                            del r[k]
            if not r:
                return False
        return False

    def reduced(self) -> Dict[int, Dict[int, int]]:
        """Back-substitute to reduced echelon form (pivot columns cleared)."""
        p = self.modulus
        red: Dict[int, Dict[int, int]] = {}
        for c in sorted(self.pivots, reverse=True):
            r = dict(self.pivots[c])
            for k in sorted(k for k in r if k != c and k in red):
                rv = r.get(k)
                if not rv:
                    continue
                prow = red[k]
                if p is None:
                    pv = prow[k]
                    g = gcd(pv, rv)
                    a, b = pv // g, rv // g
                    if a != 1:
                        r = {j: v * a for j, v in r.items()}
                    for j, v in prow.items():
                        x = r.get(j, 0) - b * v
                        if x:
                            r[j] = x
                        else:
                            r.pop(j, None)
                else:
                    for j, v in prow.items():
                        x = (r.get(j, 0) - rv * v) % p
                        if x:
                            r[j] = x
                        else:
                            r.pop(j, None)
            if p is None:
                r = _primitive(r)
            red[c] = r
        return red


def _vectors_for_rank(M: Mat) -> Tuple[int, List[SparseVec]]:
    if M.rows <= M.cols:
        return M.cols, [M.row(r) for r in range(M.rows) if M.row(r)]
    t = M.T
    return M.rows, [t.row(c) for c in range(M.cols) if t.row(c)]


def rank(M: Mat, method: str = "exact", primes: int = 2, seed: int = 0) -> int:
    """Rank over Q.

    ``method="exact"`` runs integer elimination.  ``"modular"`` returns the
    largest rank seen over a few random word-sized primes, which is a lower
    bound and equals the exact rank unless every prime divides some minor.
    ``"auto"`` trusts the modular answer only when it is full rank (then it is
    certified) and otherwise falls back to exact elimination.
    """
    if method == "exact":
        n, vecs = _vectors_for_rank(M)
        ech = Echelon(n)
        for v in vecs:
            ech.add(v)
        return ech.rank
    if method in ("modular", "auto"):
        r = rank_mod_p(M, random_primes(primes, seed))
        if method == "auto" and r < min(M.rows, M.cols):
            return rank(M, "exact")
        return r
    raise ValueError(f"unknown rank method {method!r}")


def rank_of_vectors(vecs: Iterable[Mapping[int, Scalar]], length: int, modulus: Optional[int] = None) -> int:
    ech = Echelon(length, modulus)
    for v in vecs:
        ech.add(v)
    return ech.rank


def rank_mod_p(M: Mat, primes: Sequence[int]) -> int:
    n, vecs = _vectors_for_rank(M)
    best = 0
    for p in primes:
        ech = Echelon(n, p)
        for v in vecs:
            ech.add(v)
        best = max(best, ech.rank)
        if best == min(M.rows, M.cols):
            break
    return best


def random_primes(count: int, seed: int = 0, bits: int = 62) -> List[int]:
    """Deterministic pseudo-random primes just below ``2**bits``."""
    from sympy import nextprime

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = int(nextprime(rng.randrange(2 ** (bits - 1), 2 ** bits - 2 ** (bits - 8))))
        if p not in out:
            out.append(p)
    return out


def kernel_from_echelon(ech: Echelon) -> Tuple[Mat, List[int], List[int]]:
    """Kernel basis from an integer echelon form.

    Returns ``(K, free_columns, scales)``: column ``j`` of ``K`` is the unique
    primitive integer kernel vector that vanishes on every other free column
    and equals ``scales[j] > 0`` on ``free_columns[j]``.
    """
    if ech.modulus is not None:
        raise ValueError("kernel needs the exact echelon form")
    n = ech.ncols
    red = ech.reduced()
    free = [c for c in range(n) if c not in red]
    fidx = {c: j for j, c in enumerate(free)}
    cols: List[Dict[int, Tuple[int, int]]] = [dict() for _ in free]
    # cols[j][p] = (a_pj, c_p): entry of pivot row p in free column j
    for pc, row in red.items():
        cp = row[pc]
        for c, v in row.items():
            if c != pc:
                cols[fidx[c]][pc] = (v, cp)
    vecs = []
    scales = []
    for j, c in enumerate(free):
        entries = cols[j]
        L = 1
        for _, cp in entries.values():
            L = lcm(L, cp)
        vec = {c: L}
        for pc, (a, cp) in entries.items():
            vec[pc] = -a * (L // cp)
        g = 0
        for v in vec.values():
            g = gcd(g, v)
        if g > 1:
            vec = {k: v // g for k, v in vec.items()}
        vecs.append(vec)
        scales.append(vec[c])
    data: Dict[int, SparseVec] = {}
    for j, vec in enumerate(vecs):
        for r, v in vec.items():
            data.setdefault(r, {})[j] = v
    return Mat._raw(n, len(free), data), free, scales


def kernel_basis(M: Mat) -> Mat:
    """Columns form a basis of the right kernel of ``M`` (integer entries)."""
    ech = Echelon(M.cols)
    for r in range(M.rows):
        row = M.row(r)
        if row:
            ech.add(row)
    return kernel_from_echelon(ech)[0]


class NotInSpan(Exception):
    """Raised by :meth:`SpanSolver.coordinates_strict`."""


class SpanSolver:
    """Repeated coordinate solves against a fixed linearly independent basis.

    If ``unit_positions`` is given, basis vector ``j`` must be the only one
    nonzero at position ``unit_positions[j]`` (true for :func:`kernel_basis`
    output); coordinates are then read off directly.  Otherwise the basis is
    brought to reduced echelon form once, tracking the change of basis.
    Every answer is verified by reconstruction.
    """

    def __init__(self, basis: Sequence[Mapping[int, Scalar]], length: int,
                 unit_positions: Optional[Sequence[int]] = None):
        self.basis = [{k: q(v) for k, v in b.items() if v} for b in basis]
        self.length = length
        for b in self.basis:
            if b and (max(b) >= length or min(b) < 0):
                raise DimensionError("basis vector longer than declared length")
        if unit_positions is not None:
            self._units = list(unit_positions)
            self._rows = None
        else:
            self._units = None
            self._setup()

    def _setup(self) -> None:
        r = len(self.basis)
        n = self.length
        # augmented rows [b_j | e_j]; reduce the b-part
        ech = Echelon(n + r)
        for j, b in enumerate(self.basis):
            row = dict(b)
            row[n + j] = 1
            ech.add(row)
        red = ech.reduced()
        rows = []
        for pc in sorted(red):
            if pc >= n:
                raise ValueError("basis vectors are linearly dependent")
            row = red[pc]
            combo = {c - n: Fraction(v, row[pc]) for c, v in row.items() if c >= n}
            body = {c: Fraction(v, row[pc]) for c, v in row.items() if c < n}
            rows.append((pc, body, combo))
        self._rows = rows

    def coordinates(self, target: Mapping[int, Scalar]) -> Optional[List[Scalar]]:
        """Coordinates of ``target`` in the basis, or ``None`` if outside the span."""
        target = {k: q(v) for k, v in target.items() if v}
        if target and (max(target) >= self.length or min(target) < 0):
            raise DimensionError("target length does not match basis")
        r = len(self.basis)
        if self._units is not None:
            coords = [_norm(Fraction(target.get(u, 0)) / self.basis[j][u]) if target.get(u) else 0
                      for j, u in enumerate(self._units)]
        else:
            coords = [0] * r
            for pc, _body, combo in self._rows:
                t = target.get(pc)
                if t:
                    for j, v in combo.items():
                        coords[j] += t * v
            coords = [_norm(c) for c in coords]
        # verify
        resid = dict(target)
        for j, c in enumerate(coords):
            if c:
                for k, v in self.basis[j].items():
                    x = resid.get(k, 0) - c * v
                    if x:
                        resid[k] = x
                    else:
                        resid.pop(k, None)
        if resid:
            return None
        return coords

    def coordinates_strict(self, target: Mapping[int, Scalar]) -> List[Scalar]:
        c = self.coordinates(target)
        if c is None:
            raise NotInSpan("target is not in the span of the basis")
        return c


def solve_in_span(basis: Union[Mat, Sequence[Mapping[int, Scalar]]], target) -> Optional[List[Scalar]]:
    """Coordinates of ``target`` in the span of ``basis``; ``None`` if not in the span.

    ``basis`` is a matrix whose columns are the basis vectors, or a list of
    sparse vectors; ``target`` is a sparse dict or a dense list.
    """
    if isinstance(basis, Mat):
        length = basis.rows
        vecs = basis.columns()
    else:
        vecs = list(basis)
        length = None
    if isinstance(target, Mapping):
        tvec = dict(target)
        tlen = None
    else:
        tlen = len(target)
        tvec = {i: v for i, v in enumerate(target) if v}
    if length is None:
        length = tlen if tlen is not None else max([max(b) + 1 for b in vecs if b] + [max(tvec) + 1 if tvec else 0])
    if tlen is not None and tlen != length:
        raise DimensionError(f"target has length {tlen}, basis vectors have length {length}")
    return SpanSolver(vecs, length).coordinates(tvec)


def solve(A: Mat, b: Mapping[int, Scalar]) -> Optional[SparseVec]:
    """Some solution ``x`` of ``A x = b`` (free variables zero), or ``None``."""
    n = A.cols
    ech = Echelon(n + 1)
    for r in range(A.rows):
        row = dict(A.row(r))
        if r in b and b[r]:
            row[n] = q(b[r])
        if row:
            ech.add(row)
    if n in ech.pivots:
        return None
    red = ech.reduced()
    x = {}
    for pc, row in red.items():
        rhs = row.get(n, 0)
        if rhs:
            x[pc] = _norm(Fraction(rhs, row[pc]))
    return x


def inverse(M: Mat) -> Mat:
    """Exact inverse of a square matrix; raises ``ValueError`` if singular."""
    if M.rows != M.cols:
        raise DimensionError("inverse of a non-square matrix")
    n = M.rows
    ech = Echelon(2 * n)
    for r in range(n):
        row = dict(M.row(r))
        row[n + r] = 1
        ech.add(row)
    red = ech.reduced()
    if any(pc >= n for pc in red) or len([pc for pc in red if pc < n]) != n:
        raise ValueError("matrix is singular")
    entries = {}
    for pc, row in red.items():
        for c, v in row.items():
            if c >= n:
                entries[(pc, c - n)] = Fraction(v, row[pc])
    return Mat(n, n, entries)


def vec_to_dense(vec: Mapping[int, Scalar], length: int) -> List[Scalar]:
    out = [0] * length
    for k, v in vec.items():
        out[k] = v
    return out


def vec_sub(a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> SparseVec:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) - v
        if x:
            out[k] = _norm(x)
        else:
            out.pop(k, None)
    return out


def vec_add_scaled(acc: Dict[int, Scalar], vec: Mapping[int, Scalar], s: Scalar) -> None:
    """In place ``acc += s * vec``."""
    for k, v in vec.items():
        x = acc.get(k, 0) + s * v
        if x:
            acc[k] = _norm(x)
        else:
            acc.pop(k, None)


def kernel_data(M: Mat) -> Tuple[Mat, List[int], List[int]]:
    """Like :func:`kernel_basis` but also returns free columns and scales."""
    ech = Echelon(M.cols)
    for r in range(M.rows):
        row = M.row(r)
        if row:
            ech.add(row)
    return kernel_from_echelon(ech)
