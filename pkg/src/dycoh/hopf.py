"""Finite-dimensional algebras and Hopf algebras given by structure constants.

Conventions
-----------
An algebra of dimension ``d`` stores its multiplication as a ``d x d^2``
matrix: column ``i*d + j`` holds the coordinates of ``e_i e_j``.  A
coproduct is a ``d^2 x d`` matrix whose column ``i`` holds ``Delta(e_i)`` in
the Kronecker basis ``e_p (x) e_q -> p*d + q``.

Functionals are coordinate vectors in the dual basis.  The map
``f -> f(A ? B)`` therefore has matrix ``(L_A R_B)^T``.

The dual ``H*`` carries the product ``(f*g)(h) = f(h_(2)) g(h_(1))``, i.e.
the transpose of the *opposite* coproduct.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import (
    Mat,
    Scalar,
    SparseVec,
    _norm,
    inverse,
    kernel_basis,
    q,
    vec_add_scaled,
    vstack,
)


class HopfAxiomError(ValueError):
    """A derived structure was requested from data that fails the axioms."""

    def __init__(self, report: "AxiomReport", what: str = "Hopf algebra"):
        self.report = report
        first = report.failures[0] if report.failures else None
        msg = f"{what} fails axiom checks"
        if first is not None:
            msg += f": {first[0]} at witness {first[1]}"
        super().__init__(msg)


@dataclass
class AxiomReport:
    """Outcome of a battery of exact identity checks.

    ``failures`` holds tuples ``(name, witness, left, right)``; at most
    ``limit`` witnesses are kept per identity, in deterministic order.
    """

    failures: List[tuple] = field(default_factory=list)
    checked: List[str] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)
    limit: int = 3

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, name: str) -> None:
        if name not in self.checked:
            self.checked.append(name)

    def fail(self, name: str, witness, left, right) -> None:
        if sum(1 for f in self.failures if f[0] == name) < self.limit:
            self.failures.append((name, tuple(witness) if isinstance(witness, (list, tuple)) else (witness,),
                                  left, right))

    def failed_names(self) -> List[str]:
        seen = []
        for f in self.failures:
            if f[0] not in seen:
                seen.append(f[0])
        return seen

    def merge(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for name in other.checked:
            self.check(prefix + name)
        for name, w, l, r in other.failures:
            self.failures.append((prefix + name, w, l, r))
        for k, v in other.notes.items():
            self.notes[prefix + k] = v
        return self

    def to_dict(self) -> dict:
        from .exactlin import qstr

        def enc(v):
            if isinstance(v, dict):
                return {str(k): enc(x) for k, x in sorted(v.items())}
            if isinstance(v, Mat):
                return [[r, c, qstr(x)] for (r, c), x in v.items()]
            if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
                return qstr(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return {
            "passed": self.passed,
            "checked": list(self.checked),
            "failures": [{"axiom": n, "witness": list(w), "left": enc(l), "right": enc(r)}
                         for n, w, l, r in self.failures],
            "notes": {k: enc(v) for k, v in self.notes.items()},
        }


def _clean(vec: Dict[int, Scalar]) -> SparseVec:
    return {k: _norm(v) for k, v in vec.items() if v}


def _vec_from(x, d: int) -> SparseVec:
    if isinstance(x, dict):
        return _clean({int(k): q(v) for k, v in x.items()})
    if len(x) != d:
        raise ValueError(f"expected a vector of length {d}")
    return _clean({i: q(v) for i, v in enumerate(x)})


class Algebra:
    """Associative unital algebra with a fixed basis."""

    def __init__(self, dim: int, mult: Mat, unit, labels: Optional[Sequence[str]] = None,
                 generators: Optional[Sequence[SparseVec]] = None, name: Optional[str] = None):
        if mult.shape != (dim, dim * dim):
            raise ValueError(f"multiplication must be {dim}x{dim * dim}, got {mult.shape}")
        self.dim = dim
        self._mult = mult
        self.unit = _vec_from(unit, dim)
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("wrong number of basis labels")
        self.name = name or f"algebra[{dim}]"
        self._gens = [dict(g) for g in generators] if generators is not None else None
        self._lcache: Dict[int, Mat] = {}
        self._rcache: Dict[int, Mat] = {}
        self._cols = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} dim={self.dim}>"

    @property
    def mult(self) -> Mat:
        return self._mult

    # -- products ---------------------------------------------------------

    def basis_product(self, i: int, j: int) -> SparseVec:
        if self._cols is None:
            self._cols = self.mult.columns()
        return self._cols[i * self.dim + j]

    def product(self, u: SparseVec, v: SparseVec) -> SparseVec:
        acc: Dict[int, Scalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_add_scaled(acc, self.basis_product(i, j), a * b)
        return _clean(acc)

    def left_matrix(self, i: int) -> Mat:
        """Matrix of ``x -> e_i x``."""
        m = self._lcache.get(i)
        if m is None:
            d = self.dim
            m = Mat.from_columns(d, [self.basis_product(i, j) for j in range(d)])
            self._lcache[i] = m
        return m

    def right_matrix(self, i: int) -> Mat:
        """Matrix of ``x -> x e_i``."""
        m = self._rcache.get(i)
        if m is None:
            d = self.dim
            m = Mat.from_columns(d, [self.basis_product(j, i) for j in range(d)])
            self._rcache[i] = m
        return m

    def left_matrix_of(self, u: SparseVec) -> Mat:
        d = self.dim
        return Mat.from_columns(d, [self.product(u, {j: 1}) for j in range(d)])

    def right_matrix_of(self, u: SparseVec) -> Mat:
        d = self.dim
        return Mat.from_columns(d, [self.product({j: 1}, u) for j in range(d)])

    # -- generators -------------------------------------------------------

    @property
    def generators(self) -> List[SparseVec]:
        """A generating set as coordinate vectors (greedy over the basis unless given)."""
        if self._gens is None:
            self._gens = greedy_generators(self)
        return self._gens

    def generated_subalgebra_dim(self, gens: Sequence[SparseVec]) -> int:
        return len(_closure(self, gens))


def _closure(A: Algebra, gens: Sequence[SparseVec]) -> List[SparseVec]:
    from .exactlin import Echelon
    d = A.dim
    ech = Echelon(d)
    basis: List[SparseVec] = []
    frontier = [A.unit]
    while frontier:
        new = []
        for v in frontier:
            if v and ech.add(v):
                basis.append(v)
                new.append(v)
        frontier = [A.product(v, g) for v in new for g in gens]
    return basis


def greedy_generators(A: Algebra) -> List[SparseVec]:
    gens: List[SparseVec] = []
    span = len(_closure(A, gens))
    for i in range(A.dim):
        if span == A.dim:
            break
        trial = gens + [{i: 1}]
        s = len(_closure(A, trial))
        if s > span:
            gens, span = trial, s
    return gens


class HopfAlgebra(Algebra):
    """A Hopf algebra ``(H, mu, 1, Delta, eps, S)`` on a fixed basis."""

    def __init__(self, dim: int, mult: Mat, unit, comult: Mat, counit, antipode: Mat,
                 labels: Optional[Sequence[str]] = None, generators=None, name: Optional[str] = None):
        super().__init__(dim, mult, unit, labels, generators, name)
        if comult.shape != (dim * dim, dim):
            raise ValueError(f"coproduct must be {dim * dim}x{dim}, got {comult.shape}")
        if antipode.shape != (dim, dim):
            raise ValueError(f"antipode must be {dim}x{dim}")
        self.comult = comult
        cu = _vec_from(counit, dim)
        self.counit = [cu.get(i, 0) for i in range(dim)]
        self.antipode = antipode
        self._dcols = None
        self._scols = None
        self._d3: Dict[int, Dict[Tuple[int, int, int], Scalar]] = {}
        self._tcache: Dict[Tuple[int, int], Mat] = {}
        self._coad: Dict[int, Mat] = {}
        self._dual = None

    def replace(self, **kw) -> "HopfAlgebra":
        """Copy with some structure maps swapped out (no validation)."""
        args = dict(dim=self.dim, mult=self.mult, unit=self.unit, comult=self.comult,
                    counit=self.counit, antipode=self.antipode, labels=self.labels,
                    generators=self._gens, name=self.name)
        args.update(kw)
        return HopfAlgebra(**args)

    # -- coalgebra data ---------------------------------------------------

    def coproduct(self, i: int) -> Dict[Tuple[int, int], Scalar]:
        if self._dcols is None:
            self._dcols = self.comult.columns()
        d = self.dim
        return {divmod(k, d): v for k, v in self._dcols[i].items()}

    def coproduct3(self, i: int) -> Dict[Tuple[int, int, int], Scalar]:
        """``Delta^(3)(e_i)`` as ``{(p, q, r): coeff}``."""
        t = self._d3.get(i)
        if t is None:
            acc: Dict[Tuple[int, int, int], Scalar] = {}
            for (a, r), c in self.coproduct(i).items():
                for (p, qq), c2 in self.coproduct(a).items():
                    key = (p, qq, r)
                    acc[key] = acc.get(key, 0) + c * c2
            t = {k: _norm(v) for k, v in acc.items() if v}
            self._d3[i] = t
        return t

    def iterated_terms(self, i: int, n: int) -> Dict[Tuple[int, ...], Scalar]:
        """``Delta^(n)(e_i)``, left-nested, as ``{(i_1, ..., i_n): coeff}``."""
        if n < 1:
            raise ValueError("iterated coproduct needs n >= 1")
        terms: Dict[Tuple[int, ...], Scalar] = {(i,): 1}
        for _ in range(n - 1):
            nxt: Dict[Tuple[int, ...], Scalar] = {}
            for key, c in terms.items():
                for (p, r), c2 in self.coproduct(key[0]).items():
                    k2 = (p, r) + key[1:]
                    nxt[k2] = nxt.get(k2, 0) + c * c2
            terms = {k: _norm(v) for k, v in nxt.items() if v}
        return terms

    def antipode_of(self, i: int) -> SparseVec:
        if self._scols is None:
            self._scols = self.antipode.columns()
        return self._scols[i]

    def apply_counit(self, u: SparseVec) -> Scalar:
        return _norm(sum(self.counit[i] * c for i, c in u.items()))

    def conj_matrix(self, p: int, r: int) -> Mat:
        """Matrix of ``f -> f(S(e_p) ? e_r)`` on functional coordinates."""
        key = (p, r)
        m = self._tcache.get(key)
        if m is None:
            d = self.dim
            sp = self.antipode_of(p)
            cols = []
            for j in range(d):
                cols.append(self.product(self.product(sp, {j: 1}), {r: 1}))
            m = Mat.from_columns(d, cols).T
            self._tcache[key] = m
        return m

    def coadjoint_matrix(self, i: int) -> Mat:
        """Action of ``e_i`` on the coadjoint module ``f -> f(S(h_(1)) ? h_(2))``."""
        m = self._coad.get(i)
        if m is None:
            d = self.dim
            acc: Dict[int, Dict[int, Scalar]] = {}
            for (p, r), c in self.coproduct(i).items():
                for (a, b), v in self.conj_matrix(p, r).items():
                    row = acc.setdefault(a, {})
                    row[b] = row.get(b, 0) + c * v
            m = Mat._raw(d, d, {a: _clean(row) for a, row in acc.items() if _clean(row)})
            self._coad[i] = m
        return m

    @property
    def dual(self) -> "HopfAlgebra":
        if self._dual is None:
            self._dual = dual_hopf(self)
        return self._dual


# -- axiom checks -------------------------------------------------------------

def _kron_vec(u: SparseVec, v: SparseVec, dv: int) -> SparseVec:
    return {i * dv + j: a * b for i, a in u.items() for j, b in v.items()}


def check_algebra_axioms(A: Algebra, sample: Optional[int] = None, seed: int = 0) -> AxiomReport:
    """Associativity and unit laws; ``sample`` limits the number of triples."""
    rep = AxiomReport()
    d = A.dim
    rep.check("associativity")
    if sample is None or sample >= d ** 3:
        triples = ((i, j, k) for i in range(d) for j in range(d) for k in range(d))
    else:
        rng = random.Random(seed)
        triples = sorted(tuple(rng.randrange(d) for _ in range(3)) for _ in range(sample))
        rep.notes["associativity_sampled"] = sample
    for i, j, k in triples:
        left = A.product(A.basis_product(i, j), {k: 1})
        right = A.product({i: 1}, A.basis_product(j, k))
        if left != right:
            rep.fail("associativity", (i, j, k), left, right)
    rep.check("unit")
    for i in range(d):
        e = {i: 1}
        if A.product(A.unit, e) != e:
            rep.fail("unit", (i,), A.product(A.unit, e), e)
        if A.product(e, A.unit) != e:
            rep.fail("unit", (i,), A.product(e, A.unit), e)
    return rep


def check_hopf_axioms(H: HopfAlgebra) -> AxiomReport:
    """Exhaustive exact check of every Hopf algebra identity on basis tuples."""
    rep = check_algebra_axioms(H)
    d = H.dim

    rep.check("coassociativity")
    for i in range(d):
        left: Dict[Tuple[int, int, int], Scalar] = {}
        right: Dict[Tuple[int, int, int], Scalar] = {}
        for (a, r), c in H.coproduct(i).items():
            for (p, qq), c2 in H.coproduct(a).items():
                left[(p, qq, r)] = left.get((p, qq, r), 0) + c * c2
        for (p, b), c in H.coproduct(i).items():
            for (qq, r), c2 in H.coproduct(b).items():
                right[(p, qq, r)] = right.get((p, qq, r), 0) + c * c2
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != right:
            rep.fail("coassociativity", (i,), left, right)

    rep.check("counit")
    for i in range(d):
        l: Dict[int, Scalar] = {}
        r: Dict[int, Scalar] = {}
        for (p, qq), c in H.coproduct(i).items():
            if H.counit[p]:
                l[qq] = l.get(qq, 0) + c * H.counit[p]
            if H.counit[qq]:
                r[p] = r.get(p, 0) + c * H.counit[qq]
        e = {i: 1}
        if _clean(l) != e:
            rep.fail("counit", (i,), _clean(l), e)
        if _clean(r) != e:
            rep.fail("counit", (i,), _clean(r), e)

    rep.check("bialgebra")
    unit2 = _clean(_kron_vec(H.unit, H.unit, d))
    d1: Dict[int, Scalar] = {}
    for i, c in H.unit.items():
        vec_add_scaled(d1, {p * d + qq: v for (p, qq), v in H.coproduct(i).items()}, c)
    if _clean(d1) != unit2:
        rep.fail("bialgebra", ("unit",), _clean(d1), unit2)
    if H.apply_counit(H.unit) != 1:
        rep.fail("bialgebra", ("unit",), H.apply_counit(H.unit), 1)
    for i in range(d):
        for j in range(d):
            prod = H.basis_product(i, j)
            left: Dict[int, Scalar] = {}
            for k, c in prod.items():
                for (p, qq), v in H.coproduct(k).items():
                    left[p * d + qq] = left.get(p * d + qq, 0) + c * v
            right: Dict[int, Scalar] = {}
            for (p, qq), c in H.coproduct(i).items():
                for (p2, q2), c2 in H.coproduct(j).items():
                    a = H.basis_product(p, p2)
                    b = H.basis_product(qq, q2)
                    vec_add_scaled(right, _kron_vec(a, b, d), c * c2)
            left, right = _clean(left), _clean(right)
            if left != right:
                rep.fail("bialgebra", (i, j), left, right)
            el = H.apply_counit(prod)
            er = H.counit[i] * H.counit[j]
            if el != er:
                rep.fail("bialgebra", (i, j), el, er)

    rep.check("antipode")
    for i in range(d):
        target = {k: H.counit[i] * v for k, v in H.unit.items()} if H.counit[i] else {}
        target = _clean(target)
        l: Dict[int, Scalar] = {}
        r: Dict[int, Scalar] = {}
        for (p, qq), c in H.coproduct(i).items():
            vec_add_scaled(l, H.product(H.antipode_of(p), {qq: 1}), c)
            vec_add_scaled(r, H.product({p: 1}, H.antipode_of(qq)), c)
        if _clean(l) != target:
            rep.fail("antipode", (i,), _clean(l), target)
        if _clean(r) != target:
            rep.fail("antipode", (i,), _clean(r), target)
    return rep


def require_hopf(H: HopfAlgebra) -> None:
    rep = check_hopf_axioms(H)
    if not rep.passed:
        raise HopfAxiomError(rep)


# -- derived structures -------------------------------------------------------

def dual_hopf(H: HopfAlgebra, validate: bool = True, generators=None) -> HopfAlgebra:
    """The dual Hopf algebra ``(H*, *)`` on the dual basis.

    Both ``(S^-1)^T`` and ``S^T`` are tried as antipode; the first one that
    satisfies the antipode identities is kept and recorded in
    ``dual.antipode_choice``.
    """
    if validate:
        require_hopf(H)
    d = H.dim
    # (e^a * e^b)(e_c) = coefficient of e_b (x) e_a in Delta(e_c)
    entries = {}
    for (k, c), v in H.comult.items():
        b, a = divmod(k, d)
        entries[(c, a * d + b)] = v
    mult = Mat(d, d * d, entries)
    comult = H.mult.T
    counit = [H.unit.get(i, 0) for i in range(d)]
    unit = {i: v for i, v in enumerate(H.counit) if v}
    labels = [f"{lab}*" for lab in H.labels]
    candidates = []
    try:
        candidates.append(("transpose of inverse antipode", inverse(H.antipode).T))
    except ValueError:
        pass
    candidates.append(("transpose of antipode", H.antipode.T))
    chosen = None
    tried = {}
    for name, S in candidates:
        D = HopfAlgebra(d, mult, unit, comult, counit, S, labels=labels, generators=generators,
                        name=f"{H.name}*")
        rep = check_hopf_axioms(D)
        tried[name] = rep.passed
        if chosen is None and (rep.passed or not validate):
            chosen = (name, D, rep)
    if chosen is None:
        name, S = candidates[0]
        D = HopfAlgebra(d, mult, unit, comult, counit, S, labels=labels, generators=generators,
                        name=f"{H.name}*")
        rep = check_hopf_axioms(D)
        raise HopfAxiomError(rep, "dual Hopf algebra")
    name, D, rep = chosen
    D.antipode_choice = name
    D.antipode_candidates = tried
    D._dual = None
    return D


def iterated_coproduct(H: HopfAlgebra, n: int) -> Mat:
    """Matrix of ``Delta^(n): H -> H^{(x)n}`` (left-nested)."""
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    d = H.dim
    entries = {}
    for i in range(d):
        for key, c in H.iterated_terms(i, n).items():
            idx = 0
            for t in key:
                idx = idx * d + t
            entries[(idx, i)] = c
    return Mat(d ** n, d, entries)


def star_left_matrix(H: HopfAlgebra, a: int) -> Mat:
    """Left multiplication by ``e^a`` in ``(H*, *)``."""
    return H.dual.left_matrix(a)


def cointegral_search(H: HopfAlgebra) -> Optional[List[Scalar]]:
    """A normalized cointegral ``lambda`` in ``H*``, or ``None`` if none exists.

    Solves ``f * lambda = f(1) lambda`` for every dual basis ``f`` together
    with coadjoint invariance, then normalizes ``lambda(1) = 1``.
    """
    d = H.dim
    Hd = H.dual
    blocks = []
    for a in range(d):
        blocks.append(Hd.left_matrix(a) - Mat.identity(d).scale(H.unit.get(a, 0)))
    for i in range(d):
        blocks.append(H.coadjoint_matrix(i) - Mat.identity(d).scale(H.counit[i]))
    K = kernel_basis(vstack(blocks))
    for j in range(K.cols):
        lam = K.column(j)
        val = sum(lam.get(i, 0) * c for i, c in H.unit.items())
        if val:
            return [_norm(Fraction(lam.get(i, 0)) / val) for i in range(d)]
    return None


def cyclic_group_algebra(n: int) -> HopfAlgebra:
    """``Q[Z_n]`` on the basis ``g^0, ..., g^(n-1)``."""
    if n < 1:
        raise ValueError("group order must be positive")
    mult = Mat(n, n * n, {((i + j) % n, i * n + j): 1 for i in range(n) for j in range(n)})
    comult = Mat(n * n, n, {(i * n + i, i): 1 for i in range(n)})
    antipode = Mat(n, n, {((-i) % n, i): 1 for i in range(n)})
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    gens = [{1: 1}] if n > 1 else []
    return HopfAlgebra(n, mult, {0: 1}, comult, [1] * n, antipode, labels=labels,
                       generators=gens, name=f"Q[Z{n}]")
