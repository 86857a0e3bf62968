"""The Drinfeld double ``D(H)`` and modules over it.

Basis of ``D(H)``: ``e^a (x) e_i -> a*d + i`` (dual index slow).  Products
are computed by straightening ``h . psi = psi(S(h_(1)) ? h_(3)) (x) h_(2)``.

A ``D(H)``-module is the same thing as an ``H``-module ``V`` together with
``beta: H* (x) V -> V``; the block ``B_a = beta(e^a (x) -)`` is the action of
``e^a``.  :class:`ZCoefficient` stores ``beta`` as one ``m x dm`` matrix whose
column ``a*m + v`` is ``beta(e^a (x) v)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Mat, Scalar, SparseVec, _norm, hstack, kron, lincomb, rank, swap_matrix
from .hopf import Algebra, AxiomReport, HopfAlgebra, HopfAxiomError, check_algebra_axioms, require_hopf
from .rep import (
    CoadjointPowerModule,
    Representation,
    coadjoint_power_module,
    coregular_module,
    dinat_component,
    tensor_module,
    trivial_module,
)


class DoubleAlgebra(Algebra):
    """``D(H)`` as an algebra; structure constants are built on first use."""

    def __init__(self, H: HopfAlgebra):
        self.base = H
        self.dual = H.dual
        d = H.dim
        self.d = d
        self.dim = d * d
        self.labels = [f"{a}|{b}" for a in self.dual.labels for b in H.labels]
        self.name = f"D({H.name})"
        self.unit = {a * d + i: c * u for a, c in enumerate(H.counit) if c for i, u in H.unit.items()}
        self._gens = None
        self._lcache = {}
        self._rcache = {}
        self._cols = None
        self._m = None
        self._straight: Dict[Tuple[int, int], Dict[Tuple[int, int], Scalar]] = {}

    def embed_dual(self, psi: SparseVec) -> SparseVec:
        """``psi (x) 1``."""
        d = self.d
        return {a * d + i: c * u for a, c in psi.items() for i, u in self.base.unit.items()}

    def embed_base(self, h: SparseVec) -> SparseVec:
        """``eps (x) h``."""
        d = self.d
        return {a * d + i: c * u for a, c in enumerate(self.base.counit) if c for i, u in h.items()}

    @property
    def generators(self) -> List[SparseVec]:
        if self._gens is None:
            self._gens = ([self.embed_base(g) for g in self.base.generators]
                          + [self.embed_dual(f) for f in self.dual.generators])
        return self._gens

    def straighten(self, i: int, b: int) -> Dict[Tuple[int, int], Scalar]:
        """``e_i . e^b`` as ``{(b', q): coeff}`` meaning ``sum coeff e^b' (x) e_q``."""
        key = (i, b)
        t = self._straight.get(key)
        if t is None:
            H = self.base
            acc: Dict[Tuple[int, int], Scalar] = {}
            for (p, qq, r), c in H.coproduct3(i).items():
                for b2, v in H.conj_matrix(p, r).column(b).items():
                    acc[(b2, qq)] = acc.get((b2, qq), 0) + c * v
            t = {kk: _norm(v) for kk, v in acc.items() if v}
            self._straight[key] = t
        return t

    @property
    def mult(self) -> Mat:
        if self._m is None:
            H, Hd, d = self.base, self.dual, self.d
            D = self.dim
            entries: Dict[Tuple[int, int], Scalar] = {}
            for i in range(d):
                for b in range(d):
                    st = self.straighten(i, b)
                    for a in range(d):
                        for j in range(d):
                            col = (a * d + i) * D + b * d + j
                            for (b2, qq), c in st.items():
                                left = Hd.basis_product(a, b2)
                                right = H.basis_product(qq, j)
                                for x, u in left.items():
                                    for y, w in right.items():
                                        key = (x * d + y, col)
                                        entries[key] = entries.get(key, 0) + c * u * w
            self._m = Mat(D, D * D, entries)
        return self._m


def check_double(D: DoubleAlgebra, sample_above: int = 8, samples: int = 4096) -> AxiomReport:
    """Associativity (exhaustive for ``d <= sample_above``), unit, embeddings
    and the straightening identity."""
    d = D.d
    rep = check_algebra_axioms(D, sample=None if d <= sample_above else samples)
    H, Hd = D.base, D.dual
    rep.check("dual embedding")
    for a in range(d):
        for b in range(d):
            l = D.product(D.embed_dual({a: 1}), D.embed_dual({b: 1}))
            r = D.embed_dual(Hd.basis_product(a, b))
            if l != r:
                rep.fail("dual embedding", (a, b), l, r)
    rep.check("base embedding")
    for i in range(d):
        for j in range(d):
            l = D.product(D.embed_base({i: 1}), D.embed_base({j: 1}))
            r = D.embed_base(H.basis_product(i, j))
            if l != r:
                rep.fail("base embedding", (i, j), l, r)
    rep.check("straightening")
    for i in range(d):
        for b in range(d):
            l = D.product(D.embed_base({i: 1}), D.embed_dual({b: 1}))
            r = {b2 * d + qq: c for (b2, qq), c in D.straighten(i, b).items()}
            if l != r:
                rep.fail("straightening", (i, b), l, r)
            # psi . h needs no straightening
            l2 = D.product(D.embed_dual({b: 1}), D.embed_base({i: 1}))
            if l2 != {b * d + i: 1}:
                rep.fail("straightening", (b, i), l2, {b * d + i: 1})
    return rep


def drinfeld_double(H: HopfAlgebra, validate: bool = True) -> DoubleAlgebra:
    if validate:
        require_hopf(H)
    D = DoubleAlgebra(H)
    if validate:
        rep = check_double(D)
        if not rep.passed:
            raise HopfAxiomError(rep, "Drinfeld double")
    return D


_doubles: Dict[int, DoubleAlgebra] = {}


def double_of(H: HopfAlgebra) -> DoubleAlgebra:
    """Shared (unvalidated) double used as the acting algebra of modules."""
    D = _doubles.get(id(H))
    if D is None or D.base is not H:
        D = DoubleAlgebra(H)
        _doubles[id(H)] = D
    return D


class DHModule(Representation):
    """A ``D(H)``-module given by its ``H``-module and the ``H*``-actions."""

    def __init__(self, H: HopfAlgebra, hmod: Representation, dual_actions: Optional[Sequence[Mat]] = None,
                 name: Optional[str] = None):
        self.hopf = H
        self.hmod = hmod
        self._dual: Dict[int, Mat] = {}
        if dual_actions is not None:
            if len(dual_actions) != H.dim:
                raise ValueError("need one action per dual basis vector")
            for a, m in enumerate(dual_actions):
                if m.shape != (hmod.dim, hmod.dim):
                    raise ValueError("dual action has the wrong shape")
                self._dual[a] = m
        super().__init__(double_of(H), hmod.dim, name=name or hmod.name)
        self._dualrep = None

    def _dual_build(self, a: int) -> Mat:
        raise KeyError(a)

    def dual_action(self, a: int) -> Mat:
        m = self._dual.get(a)
        if m is None:
            m = self._dual_build(a)
            self._dual[a] = m
        return m

    def dual_act(self, psi: SparseVec) -> Mat:
        items = sorted(psi.items())
        return lincomb([self.dual_action(a) for a, _ in items], [c for _, c in items], self.dim, self.dim)

    def _build(self, I: int) -> Mat:
        a, i = divmod(I, self.hopf.dim)
        return self.dual_action(a) @ self.hmod.action(i)

    def generator_actions(self) -> List[Mat]:
        if self._gen is None:
            H = self.hopf
            self._gen = ([self.hmod.act(g) for g in H.generators]
                         + [self.dual_act(f) for f in H.dual.generators])
        return self._gen

    @property
    def dual_restriction(self) -> Representation:
        if self._dualrep is None:
            Hd = self.hopf.dual
            self._dualrep = Representation(Hd, self.dim, [self.dual_action(a) for a in range(Hd.dim)],
                                           name=f"{self.name}|H*")
        return self._dualrep

    def beta(self) -> Mat:
        return hstack([self.dual_action(a) for a in range(self.hopf.dim)])

    def check(self, full: bool = False) -> AxiomReport:
        """Module identities for ``H`` and ``H*`` plus the straightening
        relation on all basis pairs; ``full`` adds the check over every pair
        of ``D(H)`` basis vectors."""
        rep = AxiomReport()
        rep.merge(self.hmod.check(), "H: ")
        rep.merge(self.dual_restriction.check(), "H*: ")
        rep.check("straightening")
        H = self.hopf
        D = self.algebra
        for i in range(H.dim):
            hi = self.hmod.action(i)
            for b in range(H.dim):
                left = hi @ self.dual_action(b)
                st = sorted(D.straighten(i, b).items())
                right = lincomb([self.dual_action(b2) @ self.hmod.action(qq) for (b2, qq), _ in st],
                                [c for _, c in st], self.dim, self.dim)
                if left != right:
                    rep.fail("straightening", (i, b), left, right)
        if full:
            rep.merge(Representation.check(self), "D(H): ")
        return rep


@dataclass
class ZCoefficient:
    """``(V, beta)`` with ``beta: H* (x) V -> V`` as an ``m x (d m)`` matrix."""

    module: Representation
    beta: Mat
    name: Optional[str] = None

    def block(self, a: int) -> Mat:
        m = self.module.dim
        return self.beta.submatrix(range(m), range(a * m, (a + 1) * m))

    def blocks(self) -> List[Mat]:
        return [self.block(a) for a in range(self.module.algebra.dim)]


def check_zmodule(H: HopfAlgebra, V: Representation, beta: Mat) -> AxiomReport:
    """Unit, associativity and ``H``-linearity of ``beta``."""
    rep = AxiomReport()
    d, m = H.dim, V.dim
    if beta.shape != (m, d * m):
        rep.check("shape")
        rep.fail("shape", (), beta.shape, (m, d * m))
        return rep
    Z = ZCoefficient(V, beta)
    B = Z.blocks()
    rep.check("unit")
    eta = lincomb(B, H.counit, m, m)
    if eta != Mat.identity(m):
        rep.fail("unit", (), eta, Mat.identity(m))
    rep.check("associativity")
    Hd = H.dual
    for a in range(d):
        for b in range(d):
            prod = sorted(Hd.basis_product(a, b).items())
            left = lincomb([B[c] for c, _ in prod], [v for _, v in prod], m, m)
            right = B[a] @ B[b]
            if left != right:
                rep.fail("associativity", (a, b), left, right)
    rep.check("H-linearity")
    src = coadjoint_power_module(H, V, 1)
    for i in range(d):
        left = beta @ src.action(i)
        right = V.action(i) @ beta
        if left != right:
            rep.fail("H-linearity", (i,), left, right)
    return rep


def trivial_coefficient(H: HopfAlgebra) -> ZCoefficient:
    """``(I, alpha)`` with ``alpha(f) = f(1)``."""
    beta = Mat(1, H.dim, {(0, a): u for a, u in H.unit.items()})
    return ZCoefficient(trivial_module(H), beta, name="trivial")


def coreg_coefficient(H: HopfAlgebra) -> ZCoefficient:
    """``(H*_coreg, beta_c)``, ``beta_c(f (x) g)(h) = f(S(h_(1)) h_(3)) g(h_(2))``."""
    d = H.dim
    entries: Dict[Tuple[int, int], Scalar] = {}
    for c in range(d):
        for (p, qq, r), t in H.coproduct3(c).items():
            for a, v in H.product(H.antipode_of(p), {r: 1}).items():
                key = (c, a * d + qq)
                entries[key] = entries.get(key, 0) + t * v
    return ZCoefficient(coregular_module(H), Mat(d, d * d, entries), name="coregular")


def zmodule_to_dmodule(H: HopfAlgebra, Z: ZCoefficient, validate: bool = True) -> DHModule:
    if validate:
        rep = check_zmodule(H, Z.module, Z.beta)
        if not rep.passed:
            raise HopfAxiomError(rep, "Z-module")
    return DHModule(H, Z.module, Z.blocks(), name=Z.name or Z.module.name)


def dmodule_to_zmodule(M: DHModule) -> ZCoefficient:
    return ZCoefficient(M.hmod, M.beta(), name=M.name)


def as_zcoefficient(X) -> ZCoefficient:
    return dmodule_to_zmodule(X) if isinstance(X, DHModule) else X


def as_dmodule(H: HopfAlgebra, X) -> DHModule:
    return X if isinstance(X, DHModule) else zmodule_to_dmodule(H, X)


class InducedModule(DHModule):
    """``G^n(V) = (H*^{(x)n} (x) V)_coad`` with ``H*`` acting by ``*`` on the
    first factor.  For ``n = 1`` this is the free ``D(H)``-module on ``V``."""

    def __init__(self, H: HopfAlgebra, V: Representation, n: int = 1):
        if n < 1:
            raise ValueError("n must be positive")
        self.power = n
        self.base_module = V
        super().__init__(H, CoadjointPowerModule(H, V, n), name=f"G^{n}({V.name})")

    def _dual_build(self, a: int) -> Mat:
        H = self.hopf
        inner = self.dim // H.dim
        return kron(H.dual.left_matrix(a), Mat.identity(inner))


def induced_module(H: HopfAlgebra, V: Representation, n: int = 1) -> DHModule:
    return InducedModule(H, V, n)


def halfbraiding_from_beta(H: HopfAlgebra, Z: ZCoefficient, X: Representation) -> Mat:
    """``rho_X: M (x) X -> X (x) M`` from coevaluation, the dinatural map
    ``i_X`` and ``beta``."""
    M = Z.module
    m, n = X.dim, M.dim
    coev = Mat(m * m, 1, {(j * m + j, 0): 1 for j in range(m)})
    step1 = kron(coev, Mat.identity(n * m))                      # M X -> X X^v M X
    step2 = kron(Mat.identity(m), dinat_component(H, X, M))       # -> X (H* M)
    step3 = kron(Mat.identity(m), Z.beta)                         # -> X M
    return step3 @ step2 @ step1


def halfbraiding_closed_form(H: HopfAlgebra, Z: ZCoefficient, X: Representation) -> Mat:
    """``m (x) x -> sum_a e_a.x (x) B_a m``."""
    M = Z.module
    d = H.dim
    mats = [kron(X.action(a), Z.block(a)) for a in range(d)]
    S = lincomb(mats, [1] * d, X.dim * M.dim, X.dim * M.dim)
    return S @ swap_matrix(M.dim, X.dim)


def check_halfbraiding(H: HopfAlgebra, Z: ZCoefficient, X: Representation) -> AxiomReport:
    rep = AxiomReport()
    rho = halfbraiding_from_beta(H, Z, X)
    rep.check("invertible")
    if rank(rho) != rho.rows:
        rep.fail("invertible", (), rank(rho), rho.rows)
    rep.check("H-linear")
    src = tensor_module(Z.module, X)
    tgt = tensor_module(X, Z.module)
    for i in range(H.dim):
        l = rho @ src.action(i)
        r = tgt.action(i) @ rho
        if l != r:
            rep.fail("H-linear", (i,), l, r)
    return rep


def check_hexagon(H: HopfAlgebra, Z: ZCoefficient, V: Representation, W: Representation) -> bool:
    """``rho_{V(x)W} = (id_V (x) rho_W)(rho_V (x) id_W)``."""
    m = Z.module.dim
    left = halfbraiding_from_beta(H, Z, tensor_module(V, W))
    right = (kron(Mat.identity(V.dim), halfbraiding_from_beta(H, Z, W))
             @ kron(halfbraiding_from_beta(H, Z, V), Mat.identity(W.dim)))
    return left == right and left.shape == (V.dim * W.dim * m, m * V.dim * W.dim)


def check_halfbraiding_naturality(H: HopfAlgebra, Z: ZCoefficient, X: Representation,
                                  X2: Representation, phi: Mat) -> bool:
    """``(phi (x) id_M) rho_X = rho_X' (id_M (x) phi)``."""
    IM = Mat.identity(Z.module.dim)
    return kron(phi, IM) @ halfbraiding_from_beta(H, Z, X) == halfbraiding_from_beta(H, Z, X2) @ kron(IM, phi)
