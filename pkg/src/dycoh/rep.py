"""Finite-dimensional modules given by action matrices.

A :class:`Representation` stores (or lazily builds) one ``m x m`` matrix per
basis vector of the acting algebra.  Linear maps ``f: V -> W`` are
``m_W x m_V`` matrices; flattened, ``f[y, c]`` sits at ``y * m_V + c``.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .exactlin import (
    Mat,
    Scalar,
    SparseVec,
    SpanSolver,
    _norm,
    hstack,
    kernel_data,
    kron,
    kron_all,
    lincomb,
    rank,
    solve_in_span,
    vstack,
)
from .hopf import AxiomReport, HopfAlgebra


class Representation:
    """Module over ``algebra`` of dimension ``dim``.

    ``actions`` may be omitted by subclasses that override :meth:`_build`.
    """

    def __init__(self, algebra, dim: int, actions: Optional[Sequence[Mat]] = None,
                 name: Optional[str] = None):
        self.algebra = algebra
        self.dim = dim
        self.name = name or f"module[{dim}]"
        self._actions: Dict[int, Mat] = {}
        if actions is not None:
            if len(actions) != algebra.dim:
                raise ValueError(f"need {algebra.dim} action matrices, got {len(actions)}")
            for i, a in enumerate(actions):
                if a.shape != (dim, dim):
                    raise ValueError(f"action {i} has shape {a.shape}, expected {(dim, dim)}")
                self._actions[i] = a
        self._gen = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} dim={self.dim}>"

    def _build(self, i: int) -> Mat:
        raise KeyError(i)

    def action(self, i: int) -> Mat:
        m = self._actions.get(i)
        if m is None:
            m = self._build(i)
            self._actions[i] = m
        return m

    @property
    def actions(self) -> List[Mat]:
        return [self.action(i) for i in range(self.algebra.dim)]

    def act(self, u: SparseVec) -> Mat:
        """Action of an arbitrary algebra element given by coordinates."""
        items = sorted(u.items())
        return lincomb([self.action(i) for i, _ in items], [c for _, c in items], self.dim, self.dim)

    def generator_actions(self) -> List[Mat]:
        if self._gen is None:
            self._gen = [self.act(g) for g in self.algebra.generators]
        return self._gen

    def check(self) -> AxiomReport:
        """Unit and multiplicativity identities on all basis pairs."""
        rep = AxiomReport()
        A = self.algebra
        rep.check("module unit")
        u = self.act(A.unit)
        if u != Mat.identity(self.dim):
            rep.fail("module unit", (), u, Mat.identity(self.dim))
        rep.check("module multiplicativity")
        for i in range(A.dim):
            ai = self.action(i)
            for j in range(A.dim):
                left = ai @ self.action(j)
                right = self.act(A.basis_product(i, j))
                if left != right:
                    rep.fail("module multiplicativity", (i, j), left, right)
        return rep


# -- standard modules ---------------------------------------------------------

def trivial_module(H: HopfAlgebra, n: int = 1) -> Representation:
    I = Mat.identity(n)
    return Representation(H, n, [I.scale(H.counit[i]) for i in range(H.dim)], name=f"trivial({n})")


def regular_module(H) -> Representation:
    return Representation(H, H.dim, [H.left_matrix(i) for i in range(H.dim)], name="regular")


def coregular_module(H) -> Representation:
    """``h.f = f(? h)``."""
    return Representation(H, H.dim, [H.right_matrix(i).T for i in range(H.dim)], name="coregular")


def coadjoint_module(H: HopfAlgebra) -> Representation:
    return Representation(H, H.dim, [H.coadjoint_matrix(i) for i in range(H.dim)], name="coadjoint")


def standard_module(H: HopfAlgebra, kind: str, n: int = 1) -> Representation:
    if kind == "trivial":
        return trivial_module(H, n)
    if kind == "regular":
        return regular_module(H)
    if kind == "coregular":
        return coregular_module(H)
    if kind == "coadjoint":
        return coadjoint_module(H)
    raise ValueError(f"unknown module kind {kind!r}")


def dual_module(V: Representation) -> Representation:
    """Right dual: ``(h.f)(x) = f(S(h) x)``."""
    H = V.algebra
    acts = [V.act(H.antipode_of(i)).T for i in range(H.dim)]
    return Representation(H, V.dim, acts, name=f"dual({V.name})")


class TensorModule(Representation):
    def __init__(self, V: Representation, W: Representation):
        if V.algebra is not W.algebra:
            raise ValueError("tensor factors must be modules over the same algebra")
        super().__init__(V.algebra, V.dim * W.dim, name=f"{V.name}(x){W.name}")
        self.left, self.right = V, W

    def _build(self, i: int) -> Mat:
        terms = sorted(self.algebra.coproduct(i).items())
        return lincomb([kron(self.left.action(p), self.right.action(r)) for (p, r), _ in terms],
                       [c for _, c in terms], self.dim, self.dim)


def tensor_module(V: Representation, W: Representation) -> Representation:
    return TensorModule(V, W)


class CoadjointPowerModule(Representation):
    """``(H*^{(x)n} (x) V)_coad`` built one dual factor at a time.

    The outermost factor is acted on by ``f -> f(S(h_(1)) ? h_(3))`` and the
    rest by ``h_(2)``, which by coassociativity reproduces the nested
    ``2n+1``-leg action.
    """

    def __init__(self, H: HopfAlgebra, V: Representation, n: int):
        if n < 1:
            raise ValueError("use the module itself for n = 0")
        self.hopf = H
        self.base = V
        self.n = n
        self.inner = V if n == 1 else CoadjointPowerModule(H, V, n - 1)
        super().__init__(H, H.dim * self.inner.dim, name=f"coad^{n}({V.name})")

    def _build(self, i: int) -> Mat:
        H = self.hopf
        terms = sorted(H.coproduct3(i).items())
        mats = [kron(H.conj_matrix(p, r), self.inner.action(qq)) for (p, qq, r), _ in terms]
        return lincomb(mats, [c for _, c in terms], self.dim, self.dim)


def coadjoint_power_module(H: HopfAlgebra, V: Representation, n: int) -> Representation:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return V
    return CoadjointPowerModule(H, V, n)


def coadjoint_power_module_direct(H: HopfAlgebra, V: Representation, n: int) -> Representation:
    """Same module, assembled from ``Delta^(2n+1)`` in one go (slow; for cross-checks)."""
    if n == 0:
        return V
    d = H.dim
    dim = d ** n * V.dim
    acts = []
    for i in range(d):
        terms = sorted(H.iterated_terms(i, 2 * n + 1).items())
        mats = []
        for legs, _ in terms:
            factors = [H.conj_matrix(legs[j], legs[2 * n - j]) for j in range(n)]
            factors.append(V.action(legs[n]))
            mats.append(kron_all(factors))
        acts.append(lincomb(mats, [c for _, c in terms], dim, dim))
    return Representation(H, dim, acts, name=f"coad^{n}({V.name})")


# -- homomorphisms -------------------------------------------------------------

class HomBasis:
    """Basis of the intertwiners ``V -> W``, stored as kernel columns.

    Column ``j`` of ``kernel`` is ``vec(f_j)``; it is the only basis vector
    nonzero at ``free[j]``, which makes coordinates cheap to read off.
    """

    def __init__(self, source: Representation, target: Representation, kernel: Mat,
                 free: Sequence[int], scales: Sequence[int]):
        self.source = source
        self.target = target
        self.kernel = kernel
        self.free = list(free)
        self.scales = list(scales)
        self._solver = None
        self._basis = None

    @property
    def dim(self) -> int:
        return self.kernel.cols

    def __len__(self) -> int:
        return self.dim

    @property
    def ambient_dim(self) -> int:
        return self.source.dim * self.target.dim

    def vector(self, j: int) -> SparseVec:
        return self.kernel.column(j)

    def matrix(self, j: int) -> Mat:
        return unvec(self.kernel.column(j), self.target.dim, self.source.dim)

    @property
    def basis(self) -> List[Mat]:
        if self._basis is None:
            self._basis = [self.matrix(j) for j in range(self.dim)]
        return self._basis

    def coordinates(self, vec_f: SparseVec) -> Optional[List[Scalar]]:
        """Coordinates of a flattened map, or ``None`` if it is not an intertwiner."""
        if self._solver is None:
            self._solver = SpanSolver(self.kernel.columns(), self.ambient_dim, unit_positions=self.free)
        return self._solver.coordinates(vec_f)

    def combination(self, coeffs: Sequence[Scalar]) -> Mat:
        return lincomb(self.basis, coeffs, self.target.dim, self.source.dim)


def vec(f: Mat) -> SparseVec:
    n = f.cols
    return {r * n + c: v for (r, c), v in f.items()}


def unvec(v: SparseVec, rows: int, cols: int) -> Mat:
    return Mat(rows, cols, {divmod(k, cols): x for k, x in v.items()})


def intertwiner_constraints(V: Representation, W: Representation) -> Mat:
    """Stacked ``f rho_V(e) - rho_W(e) f`` over the algebra's generators."""
    if V.algebra is not W.algebra and V.algebra.dim != W.algebra.dim:
        raise ValueError("modules over different algebras")
    IW = Mat.identity(W.dim)
    IV = Mat.identity(V.dim)
    blocks = []
    for a, b in zip(V.generator_actions(), W.generator_actions()):
        blocks.append(kron(IW, a.T) - kron(b, IV))
    if not blocks:
        return Mat.zero(0, V.dim * W.dim)
    return vstack(blocks)


def hom_space(V: Representation, W: Representation) -> HomBasis:
    K, free, scales = kernel_data(intertwiner_constraints(V, W))
    return HomBasis(V, W, K, free, scales)


def is_intertwiner(f: Mat, V: Representation, W: Representation, all_basis: bool = False) -> bool:
    if f.shape != (W.dim, V.dim):
        return False
    if all_basis:
        pairs = [(V.action(i), W.action(i)) for i in range(V.algebra.dim)]
    else:
        pairs = list(zip(V.generator_actions(), W.generator_actions()))
    return all(f @ a == b @ f for a, b in pairs)


def submodule(V: Representation, vectors: Sequence[SparseVec], name: Optional[str] = None) -> Optional[Representation]:
    """Restriction of ``V`` to the span of ``vectors`` (a basis), or ``None``
    if the span is not invariant."""
    m = len(vectors)
    acts = []
    for i in range(V.algebra.dim):
        cols = []
        A = V.action(i)
        for v in vectors:
            c = solve_in_span(list(vectors), A.apply(v)) if m else []
            if c is None:
                return None
            cols.append({j: x for j, x in enumerate(c) if x})
        acts.append(Mat.from_columns(m, cols))
    return Representation(V.algebra, m, acts, name=name or f"sub({V.name})")


def find_isomorphism(V: Representation, W: Representation) -> Optional[Mat]:
    """An invertible intertwiner ``V -> W`` if one is found, else ``None``.

    Tries each basis element of ``Hom(V, W)`` and then a fixed generic
    combination.
    """
    if V.dim != W.dim:
        return None
    hb = hom_space(V, W)
    for f in hb.basis:
        if rank(f) == V.dim:
            return f
    if hb.dim > 1:
        f = hb.combination([j + 1 for j in range(hb.dim)])
        if rank(f) == V.dim:
            return f
    return None


def dinat_component(H: HopfAlgebra, X: Representation, V: Representation) -> Mat:
    """``i_X(V): X^v (x) V (x) X -> (H* (x) V)_coad``, ``f (x) v (x) x -> f(?.x) (x) v``."""
    m, n, d = X.dim, V.dim, H.dim
    entries = {}
    for a in range(d):
        for (j, x), val in X.action(a).items():
            for v in range(n):
                entries[(a * n + v, (j * n + v) * m + x)] = val
    return Mat(d * n, m * n * m, entries)


def dinat_source(H: HopfAlgebra, X: Representation, V: Representation) -> Representation:
    return tensor_module(tensor_module(dual_module(X), V), X)
