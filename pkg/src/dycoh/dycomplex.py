"""Davydov-Yetter cochain complexes, Hochschild complexes of ``(H*, *)``, bar
resolutions in ``D(H)``-mod, and cohomology dimensions.

DY cochains ``C^n = Hom_H((H*^{(x)n} (x) X)_coad, Y)`` live inside the
ambient space of all linear maps.  A map ``f`` is flattened row-major:
``f[y, c]`` sits at ``y * D_n + c`` with ``D_n = d^n m_X``.  The differential
is assembled there from Kronecker operators and then written in the
coordinates of the intertwiner bases.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .double import (
    DHModule,
    ZCoefficient,
    as_zcoefficient,
    check_zmodule,
    induced_module,
    InducedModule,
)
from .exactlin import Mat, kron, kron_all, rank
from .hopf import HopfAlgebra, HopfAxiomError
from .rep import HomBasis, Representation, coadjoint_power_module, hom_space


class ComplexError(RuntimeError):
    """Internal consistency failure (``d o d != 0`` or a differential
    leaving the intertwiner subspace)."""


@dataclass
class CochainComplex:
    """Cochain dimensions and coordinate differentials ``d^n: C^n -> C^{n+1}``.

    ``differentials`` holds ``d^0 .. d^{n_max-1}``.  ``top_rank`` is the rank
    of ``d^{n_max}`` when it was resolved (otherwise ``None``).
    """

    dims: List[int]
    differentials: List[Mat]
    bases: List[Optional[HomBasis]] = field(default_factory=list)
    top_rank: Optional[int] = None
    top_differential: Optional[Mat] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.dims) - 1

    def validate_shapes(self) -> None:
        for n, dn in enumerate(self.differentials):
            if dn.shape != (self.dims[n + 1], self.dims[n]):
                raise ComplexError(f"d^{n} has shape {dn.shape}, expected {(self.dims[n + 1], self.dims[n])}")

    def dd_zero(self) -> bool:
        ds = list(self.differentials)
        if self.top_differential is not None:
            ds.append(self.top_differential)
        return all((ds[n + 1] @ ds[n]).is_zero() for n in range(len(ds) - 1))


@dataclass
class CohomologyTable:
    dims: List[int]
    truncated_top: bool
    cochain_dims: List[int]
    ranks: List[Optional[int]]
    metadata: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = dict(self.metadata)
        out.update({
            "dims": list(self.dims),
            "cochain_dims": list(self.cochain_dims),
            "ranks": list(self.ranks),
            "truncated_top": self.truncated_top,
        })
        return out


def cohomology_dims(C: CochainComplex, method: str = "exact", check: bool = True) -> CohomologyTable:
    """``dim H^n = dim C^n - rank d^n - rank d^{n-1}``.

    When the top differential was not resolved the top value is only the
    upper bound ``dim C^n - rank d^{n-1}`` and ``truncated_top`` is set.
    """
    C.validate_shapes()
    if check and not C.dd_zero():
        raise ComplexError("d o d != 0")
    ranks: List[Optional[int]] = [rank(dn, method=method) for dn in C.differentials]
    ranks.append(C.top_rank)
    out = []
    for n, c in enumerate(C.dims):
        r_out = ranks[n] or 0
        r_in = ranks[n - 1] if n > 0 else 0
        out.append(c - r_out - r_in)
    return CohomologyTable(out, C.top_rank is None, list(C.dims), ranks, dict(C.metadata))


# -- the DY complex -------------------------------------------------------------

def dy_ambient_differential(H: HopfAlgebra, X: ZCoefficient, Y: ZCoefficient, n: int,
                            sign_twist: bool = False) -> Mat:
    """``Hom_k(H*^n X, Y) -> Hom_k(H*^{n+1} X, Y)`` on flattened maps."""
    d = H.dim
    mX, mY = X.module.dim, Y.module.dim
    Dn = d ** n * mX
    Dn1 = d * Dn
    entries: Dict[tuple, object] = {}

    def add(r, c, v):
        key = (r, c)
        entries[key] = entries.get(key, 0) + v

    # a_0 . f(a_1 ... x)
    for a, B in enumerate(Y.blocks()):
        for (y, y2), v in B.items():
            for c in range(Dn):
                add(y * Dn1 + a * Dn + c, y2 * Dn + c, v)
    IY = Mat.identity(mY)
    mu = H.dual.mult
    for i in range(1, n + 1):
        P = kron_all([Mat.identity(d ** (i - 1)), mu, Mat.identity(d ** (n - i) * mX)])
        s = -1 if i % 2 else 1
        for (r, c), v in kron(IY, P.T).items():
            add(r, c, s * v)
    Q = kron(Mat.identity(d ** n), X.beta)
    s = -1 if (n + 1) % 2 else 1
    for (r, c), v in kron(IY, Q.T).items():
        add(r, c, s * v)
    M = Mat(mY * Dn1, mY * Dn, entries)
    if sign_twist and n % 2 == 0:
        M = -M
    return M


def _coordinates_matrix(image: Mat, target: HomBasis, n: int) -> Mat:
    cols = []
    for j in range(image.cols):
        w = image.column(j)
        c = target.coordinates(w)
        if c is None:
            raise ComplexError(f"differential leaves intertwiner subspace in degree {n}")
        cols.append({i: v for i, v in enumerate(c) if v})
    return Mat.from_columns(target.dim, cols)


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def dy_complex(H: HopfAlgebra, X, Y, n_max: int, sign_twist: bool = False,
               resolve_top: bool = True, rank_method: str = "exact", workers: int = 1,
               validate: bool = True) -> CochainComplex:
    """The DY complex with coefficients ``X, Y`` (Z-coefficients or D-modules)
    in degrees ``0..n_max``.

    With ``resolve_top`` the rank of ``d^{n_max}`` is taken in the ambient
    space (the kernel basis embedding is injective, so it equals the
    coordinate rank) and ``C^{n_max+1}`` is never built.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    X = as_zcoefficient(X)
    Y = as_zcoefficient(Y)
    if validate:
        for Z in (X, Y):
            rep = check_zmodule(H, Z.module, Z.beta)
            if not rep.passed:
                raise HopfAxiomError(rep, "coefficient")
    t0 = time.perf_counter()
    mods = [coadjoint_power_module(H, X.module, n) for n in range(n_max + 1)]
    bases = _map(lambda M: hom_space(M, Y.module), mods, workers)
    t1 = time.perf_counter()

    def differential(n):
        A = dy_ambient_differential(H, X, Y, n, sign_twist)
        image = A @ bases[n].kernel
        if n == n_max:
            return None, image
        return _coordinates_matrix(image, bases[n + 1], n), None

    results = _map(differential, range(n_max + 1 if resolve_top else n_max), workers)
    diffs = [r[0] for r in results[:n_max]]
    top_rank = None
    if resolve_top:
        top_rank = rank(results[n_max][1], method=rank_method)
    t2 = time.perf_counter()
    return CochainComplex(
        dims=[b.dim for b in bases],
        differentials=diffs,
        bases=bases,
        top_rank=top_rank,
        metadata={
            "method": "bar",
            "algebra": H.name,
            "coefficients": [X.name or "X", Y.name or "Y"],
            "sign_convention": "twisted" if sign_twist else "standard",
            "ambient_dims": [m.dim * Y.module.dim for m in mods],
            "timings": {"cochains": t1 - t0, "differentials": t2 - t1},
        },
    )


def postcompose_chain_map(H: HopfAlgebra, C1: CochainComplex, C2: CochainComplex, phi: Mat) -> List[Mat]:
    """Coordinate matrices of ``f -> phi o f`` between two DY complexes with the
    same source coefficient."""
    out = []
    for n, (b1, b2) in enumerate(zip(C1.bases, C2.bases)):
        Dn = b1.source.dim
        image = kron(phi, Mat.identity(Dn)) @ b1.kernel
        out.append(_coordinates_matrix(image, b2, n))
    return out


# -- Hochschild ------------------------------------------------------------------

def hochschild_operator(A, augmentation: Sequence, n: int) -> Mat:
    """``A^{(x)(n+1)} -> A^{(x)n}`` whose transpose is the Hochschild
    differential on cochains with trivial coefficients."""
    d = A.dim
    aug = Mat(1, d, {(0, i): v for i, v in enumerate(augmentation) if v})
    M = kron(aug, Mat.identity(d ** n))
    for i in range(1, n + 1):
        term = kron_all([Mat.identity(d ** (i - 1)), A.mult, Mat.identity(d ** (n - i))])
        M = M - term if i % 2 else M + term
    last = kron(Mat.identity(d ** n), aug)
    M = M + last if (n + 1) % 2 == 0 else M - last
    return M


def hochschild_complex(A, augmentation: Sequence, n_max: int, resolve_top: bool = True,
                       rank_method: str = "exact", name: Optional[str] = None) -> CochainComplex:
    """Cochains ``Hom(A^{(x)n}, k)`` (``C^0 = k``) with trivial coefficients."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    t0 = time.perf_counter()
    diffs = [hochschild_operator(A, augmentation, n).T for n in range(n_max)]
    top = hochschild_operator(A, augmentation, n_max).T if resolve_top else None
    top_rank = rank(top, method=rank_method) if top is not None else None
    return CochainComplex(
        dims=[A.dim ** n for n in range(n_max + 1)],
        differentials=diffs,
        top_rank=top_rank,
        top_differential=top,
        metadata={"method": "hochschild", "algebra": name or A.name,
                  "timings": {"total": time.perf_counter() - t0}},
    )


def dual_hochschild(H: HopfAlgebra, n_max: int, **kw) -> CochainComplex:
    """Hochschild complex of ``(H*, *)`` augmented by ``f -> f(1)``."""
    aug = [H.unit.get(i, 0) for i in range(H.dim)]
    return hochschild_complex(H.dual, aug, n_max, name=f"{H.name}*", **kw)


# -- complexes of modules ----------------------------------------------------------

@dataclass
class ModuleComplex:
    """``... -> terms[2] -> terms[1] -> terms[0] -> 0`` with ``maps[n]: terms[n+1] -> terms[n]``."""

    terms: List[Representation]
    maps: List[Mat]

    def dd_zero(self) -> bool:
        return all((self.maps[n] @ self.maps[n + 1]).is_zero() for n in range(len(self.maps) - 1))

    def equivariant(self) -> bool:
        from .rep import is_intertwiner
        return all(is_intertwiner(f, self.terms[n + 1], self.terms[n])
                   for n, f in enumerate(self.maps))

    def exact_positions(self) -> List[bool]:
        """Exactness of the underlying vector spaces at ``terms[0..len-2]``
        (``terms[0] -> 0`` counts as the outgoing map)."""
        ranks = [rank(f) for f in self.maps]
        out = []
        for n in range(len(self.terms) - 1):
            r_out = ranks[n - 1] if n > 0 else 0
            out.append(ranks[n] + r_out == self.terms[n].dim)
        return out


def bar_complex(H: HopfAlgebra, X, n_max: int) -> ModuleComplex:
    """Augmented bar resolution ``G^{n}X -> ... -> G X -> X`` for ``n <= n_max``."""
    from .double import as_dmodule
    Xd = as_dmodule(H, X)
    Z = as_zcoefficient(X)
    d = H.dim
    m = Xd.dim
    terms: List[Representation] = [Xd] + [induced_module(H, Xd.hmod, n) for n in range(1, n_max + 1)]
    maps = [Z.beta]
    mu = H.dual.mult
    for n in range(1, n_max):
        M = kron(Mat.identity(d ** n), Z.beta)
        for i in range(1, n + 1):
            term = kron_all([Mat.identity(d ** (n - i)), mu, Mat.identity(d ** (i - 1) * m)])
            M = M - term if i % 2 else M + term
        maps.append(M)
    return ModuleComplex(terms, maps)


@dataclass
class ProbeResult:
    probe: str
    position: int
    hom_dim: int
    rank_in: int
    rank_out: int
    exact: bool


@dataclass
class ProbeReport:
    results: List[ProbeResult]

    @property
    def passed(self) -> bool:
        return all(r.exact for r in self.results)


def g_exactness_probe(H: HopfAlgebra, cx: ModuleComplex, probes: Sequence) -> ProbeReport:
    """Apply ``Hom(G(A), -)`` to ``cx`` for each probe ``A`` and test exactness."""
    results = []
    for A in probes:
        base = A.hmod if isinstance(A, DHModule) else A
        GA = induced_module(H, base)
        homs = [hom_space(GA, T) for T in cx.terms]
        ranks = []
        for n, f in enumerate(cx.maps):
            src, tgt = homs[n + 1], homs[n]
            image = kron(f, Mat.identity(GA.dim)) @ src.kernel
            ranks.append(rank(_coordinates_matrix(image, tgt, n)) if src.dim and tgt.dim else 0)
        for n in range(len(cx.terms) - 1):
            r_in = ranks[n]
            r_out = ranks[n - 1] if n > 0 else 0
            results.append(ProbeResult(getattr(A, "name", "probe"), n, homs[n].dim, r_in, r_out,
                                       r_in + r_out == homs[n].dim))
    return ProbeReport(results)
