"""The family ``B_k = Lambda(Q^k) x| Q[Z_2]``, its double, named modules and
the Koszul resolution of the trivial module.

Monomial basis ``x_S g^r``: subsets ``S`` of ``{1..k}`` in lexicographic order
of their sorted tuples, ``r`` the fastest bit.  Generators are indexed from
zero internally (``x_0`` is printed as ``x1``).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Mat, Scalar, SparseVec, _norm, inverse, vec_add_scaled
from .hopf import HopfAlgebra, dual_hopf


@lru_cache(maxsize=None)
def subsets(k: int) -> Tuple[Tuple[int, ...], ...]:
    allsets = [c for m in range(k + 1) for c in combinations(range(k), m)]
    return tuple(sorted(allsets))


@lru_cache(maxsize=None)
def subset_index(k: int) -> Dict[Tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subsets(k))}


def monomial_index(k: int, S: Sequence[int], r: int) -> int:
    return 2 * subset_index(k)[tuple(sorted(S))] + (r % 2)


def monomial(k: int, idx: int) -> Tuple[Tuple[int, ...], int]:
    return subsets(k)[idx // 2], idx % 2


def wedge_sign(S: Sequence[int], T: Sequence[int]) -> int:
    """Sign of ``x_S x_T = sign * x_{S u T}`` for disjoint sorted ``S, T``."""
    inv = sum(1 for s in S for t in T if s > t)
    return -1 if inv % 2 else 1


def monomial_label(S: Sequence[int], r: int) -> str:
    s = "".join(f"x{i + 1}" for i in S)
    if r:
        s += "g"
    return s or "1"


def _bk_product(k: int, a: int, b: int) -> Tuple[int, int]:
    """``(index, sign)`` of the monomial product, sign 0 when it vanishes."""
    S, r = monomial(k, a)
    T, s = monomial(k, b)
    if set(S) & set(T):
        return 0, 0
    sign = wedge_sign(S, T)
    if r and len(T) % 2:
        sign = -sign
    return monomial_index(k, tuple(S) + tuple(T), r + s), sign


def build_bk(k: int) -> HopfAlgebra:
    """The Hopf algebra ``B_k`` (``B_0 = Q[Z_2]``, ``B_1`` Sweedler's algebra)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    d = 2 ** (k + 1)
    entries = {}
    for a in range(d):
        for b in range(d):
            c, sign = _bk_product(k, a, b)
            if sign:
                entries[(c, a * d + b)] = sign
    mult = Mat(d, d * d, entries)
    labels = [monomial_label(*monomial(k, i)) for i in range(d)]
    g = monomial_index(k, (), 1)
    xs = [monomial_index(k, (i,), 0) for i in range(k)]
    gens = [{g: 1}] + [{x: 1} for x in xs]

    def prod(u: SparseVec, v: SparseVec) -> SparseVec:
        acc: Dict[int, Scalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                c, sign = _bk_product(k, i, j)
                if sign:
                    acc[c] = acc.get(c, 0) + sign * a * b
        return {i: v for i, v in acc.items() if v}

    # closed formula for the coproduct of x_{i1}..x_{im} g^r
    cm = {}
    for idx in range(d):
        S, r = monomial(k, idx)
        for bits in product((0, 1), repeat=len(S)):
            left = monomial_index(k, [s for s, b in zip(S, bits) if b], r)
            right = {monomial_index(k, (), 0): 1}
            for s, b in zip(S, bits):
                right = prod(right, {monomial_index(k, () if b else (s,), b): 1})
            right = prod(right, {monomial_index(k, (), r): 1})
            for j, c in right.items():
                key = (left * d + j, idx)
                cm[key] = cm.get(key, 0) + c
    comult = Mat(d * d, d, cm)
    counit = [1 if not monomial(k, i)[0] else 0 for i in range(d)]

    # S is an anti-homomorphism with S(g) = g, S(x_i) = g x_i
    ant = {}
    for idx in range(d):
        S, r = monomial(k, idx)
        v = {monomial_index(k, (), r): 1}
        for s in reversed(S):
            v = prod(prod(v, {monomial_index(k, (), 1): 1}), {monomial_index(k, (s,), 0): 1})
        for j, c in v.items():
            ant[(j, idx)] = c
    antipode = Mat(d, d, ant)
    return HopfAlgebra(d, mult, {0: 1}, comult, counit, antipode, labels=labels,
                       generators=gens, name=f"B{k}")


def dual_generators(k: int) -> List[SparseVec]:
    """``h = 1* - g*`` followed by ``y_i = x_i* - (x_i g)*`` in dual coordinates."""
    one = monomial_index(k, (), 0)
    g = monomial_index(k, (), 1)
    gens = [{one: 1, g: -1}]
    for i in range(k):
        gens.append({monomial_index(k, (i,), 0): 1, monomial_index(k, (i,), 1): -1})
    return gens


@lru_cache(maxsize=None)
def bk(k: int) -> HopfAlgebra:
    """Cached ``B_k`` whose dual carries the ``h, y_i`` generating set."""
    H = build_bk(k)
    H._dual = dual_hopf(H, generators=dual_generators(k))
    return H


def predicted_dim(k: int, n: int) -> int:
    """Closed form ``binom(k+n-1, n)`` for even ``n`` and 0 for odd ``n``."""
    if n % 2:
        return 0
    if k == 0:
        return 1 if n == 0 else 0
    return comb(k + n - 1, n)


# -- the double and its named modules -------------------------------------------

def _dual_monomial_matrix(k: int) -> Mat:
    """Columns: dual coordinates of ``y_{s1} * ... * y_{sm} * h^r``."""
    H = bk(k)
    Hd = H.dual
    gens = dual_generators(k)
    d = H.dim
    one = {i: v for i, v in enumerate(H.counit) if v}
    cols = []
    for idx in range(d):
        S, r = monomial(k, idx)
        v = dict(one)
        for s in S:
            v = Hd.product(v, gens[1 + s])
        if r:
            v = Hd.product(v, gens[0])
        cols.append(v)
    return Mat.from_columns(d, cols)


@lru_cache(maxsize=None)
def dual_monomial_inverse(k: int) -> Mat:
    """Row ``(S, r)``, column ``a``: coefficient of ``y_S h^r`` in ``e^a``."""
    return inverse(_dual_monomial_matrix(k))


def module_from_generators(k: int, g: Mat, xs: Sequence[Mat], h: Mat, ys: Sequence[Mat],
                           name: str = "module", validate: bool = True):
    """Assemble a ``D(B_k)``-module from the actions of ``g, x_i, h, y_i``."""
    from .double import DHModule
    from .rep import Representation

    H = bk(k)
    d = H.dim
    m = g.rows
    I = Mat.identity(m)

    def word(mats, S, r, last):
        M = I
        for s in S:
            M = M @ mats[s]
        if r:
            M = M @ last
        return M

    hacts = []
    for idx in range(d):
        S, r = monomial(k, idx)
        hacts.append(word(xs, S, r, g))
    monos = [word(ys, *monomial(k, idx), h) for idx in range(d)]
    Qi = dual_monomial_inverse(k)
    dacts = []
    for a in range(d):
        col = sorted(Qi.column(a).items())
        M = Mat.zero(m, m)
        for j, c in col:
            M = M + monos[j].scale(c)
        dacts.append(M)
    M = DHModule(H, Representation(H, m, hacts, name=name), dacts, name=name)
    if validate:
        rep = M.check()
        if not rep.passed:
            from .hopf import HopfAxiomError
            raise HopfAxiomError(rep, f"module {name}")
    return M


def exterior_left(k: int, i: int) -> Mat:
    """``b_S -> x_i b_S`` on the exterior basis (zero when ``i`` in ``S``)."""
    idx = subset_index(k)
    entries = {}
    for S, j in idx.items():
        if i in S:
            continue
        sign = -1 if sum(1 for s in S if s < i) % 2 else 1
        entries[(idx[tuple(sorted(S + (i,)))], j)] = sign
    n = len(idx)
    return Mat(n, n, entries)


def exterior_right(k: int, i: int) -> Mat:
    """``b_S -> b_S x_i``."""
    idx = subset_index(k)
    entries = {}
    for S, j in idx.items():
        if i in S:
            continue
        sign = -1 if sum(1 for s in S if s > i) % 2 else 1
        entries[(idx[tuple(sorted(S + (i,)))], j)] = sign
    n = len(idx)
    return Mat(n, n, entries)


def contraction(k: int, j: int) -> Mat:
    """Left contraction ``x_{s1}..x_{sm} -> sum_l (-1)^(l-1) [s_l = j] x_{S - s_l}``."""
    idx = subset_index(k)
    entries = {}
    for S, c in idx.items():
        if j not in S:
            continue
        l = S.index(j)
        T = S[:l] + S[l + 1:]
        entries[(idx[T], c)] = -1 if l % 2 else 1
    n = len(idx)
    return Mat(n, n, entries)


def parity(k: int) -> Mat:
    return Mat.diagonal([(-1) ** len(S) for S in subsets(k)])


NAMED_MODULES = ("Iplus", "Iminus", "Aplus", "Aminus", "Bplus", "Bminus", "Cplus", "Cminus")


@lru_cache(maxsize=None)
def named_module(k: int, name: str):
    """One of the ``D(B_k)``-modules ``I_pm, A_pm, B_pm, C_pm``.

    ``A``, ``B`` use the basis ``x_S v``; ``C`` uses ``y_S f``.
    """
    if name not in NAMED_MODULES:
        raise ValueError(f"unknown module {name!r}; expected one of {', '.join(NAMED_MODULES)}")
    if k < 1:
        raise ValueError("named modules need k >= 1")
    s = 1 if name.endswith("plus") else -1
    kind = name[0]
    if kind == "I":
        one = Mat.identity(1).scale(s)
        z = Mat.zero(1, 1)
        return module_from_generators(k, one, [z] * k, one, [z] * k, name)
    n = 2 ** k
    P = parity(k)
    zero = Mat.zero(n, n)
    if kind == "A":
        return module_from_generators(k, P.scale(s), [exterior_left(k, i) for i in range(k)],
                                      P.scale(-s), [contraction(k, j).scale(2) for j in range(k)], name)
    if kind == "B":
        return module_from_generators(k, P.scale(s), [exterior_left(k, i) for i in range(k)],
                                      P.scale(s), [zero] * k, name)
    return module_from_generators(k, P.scale(s), [zero] * k, P.scale(s),
                                  [exterior_left(k, i) for i in range(k)], name)


def projective_cover(k: int, sign: int):
    """``P_pm = B_k e_pm`` as a ``B_k``-module on the basis ``x_S e_pm``."""
    return named_module(k, "Bplus" if sign > 0 else "Bminus").hmod


def dbk_relations(k: int):
    """Check the defining relations of ``D(B_k)`` among ``g, x_i, h, y_i``."""
    from .double import drinfeld_double
    from .hopf import AxiomReport

    H = bk(k)
    D = drinfeld_double(H)
    d = H.dim
    gens = dual_generators(k)
    g = D.embed_base({monomial_index(k, (), 1): 1})
    x = [D.embed_base({monomial_index(k, (i,), 0): 1}) for i in range(k)]
    h = D.embed_dual(gens[0])
    y = [D.embed_dual(v) for v in gens[1:]]
    one = D.unit
    P = D.product

    def add(u, v, s=1):
        out = dict(u)
        for kk, c in v.items():
            out[kk] = out.get(kk, 0) + s * c
        return {kk: c for kk, c in out.items() if c}

    def anti(a, b):
        return add(P(a, b), P(b, a))

    def comm(a, b):
        return add(P(a, b), P(b, a), -1)

    rep = AxiomReport()

    def expect(name, witness, left, right):
        rep.check(name)
        if left != right:
            rep.fail(name, witness, left, right)

    expect("g^2 = 1", (), P(g, g), one)
    expect("h^2 = 1", (), P(h, h), one)
    expect("[g,h] = 0", (), comm(g, h), {})
    one_minus_hg = add(one, P(h, g), -1)
    for i in range(k):
        expect("{g,x_i} = 0", (i + 1,), anti(g, x[i]), {})
        expect("{y_i,h} = 0", (i + 1,), anti(y[i], h), {})
        expect("{y_i,g} = 0", (i + 1,), anti(y[i], g), {})
        expect("{x_i,h} = 0", (i + 1,), anti(x[i], h), {})
        for j in range(k):
            expect("{x_i,x_j} = 0", (i + 1, j + 1), anti(x[i], x[j]), {})
            expect("{y_i,y_j} = 0", (i + 1, j + 1), anti(y[i], y[j]), {})
            expect("{x_i,y_j} = delta_ij (1 - hg)", (i + 1, j + 1), anti(x[i], y[j]),
                   one_minus_hg if i == j else {})
    return rep


class DecompositionReport:
    """Per-summand results of :func:`verify_decompositions`."""

    def __init__(self):
        self.entries: List[dict] = []

    @property
    def passed(self) -> bool:
        return all(e["passed"] for e in self.entries)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "entries": self.entries}


def _dsubmodule(M, vectors, name):
    """Restriction of a ``D``-module to an invariant span (``None`` otherwise)."""
    from .double import DHModule
    from .rep import submodule

    hs = submodule(M.hmod, vectors, name)
    if hs is None:
        return None
    ds = submodule(M.dual_restriction, vectors, name)
    if ds is None:
        return None
    return DHModule(M.hopf, hs, ds.actions, name=name)


def _hcyclic(V, v: SparseVec) -> List[SparseVec]:
    """Basis of ``H.v`` (closure under the generators)."""
    from .exactlin import Echelon

    ech = Echelon(V.dim)
    out = []
    frontier = [v]
    gens = V.generator_actions()
    while frontier:
        new = []
        for u in frontier:
            if u and ech.add(u):
                out.append(u)
                new.append(u)
        frontier = [G.apply(u) for u in new for G in gens]
    return out


def _direct_sum_check(report, label, M, parts):
    from .exactlin import rank_of_vectors
    from .rep import find_isomorphism

    allvecs = [v for _, vecs, _ in parts for v in vecs]
    total = sum(len(vecs) for _, vecs, _ in parts)
    spans_all = rank_of_vectors(allvecs, M.dim) == M.dim and total == M.dim
    for summand, vecs, target in parts:
        sub = _dsubmodule(M, vecs, f"{label}:{summand}")
        invariant = sub is not None
        iso = invariant and find_isomorphism(sub, target) is not None
        report.entries.append({
            "module": label, "summand": summand, "dim": len(vecs),
            "invariant": invariant, "isomorphic": bool(iso), "direct_sum": spans_all,
            "passed": bool(invariant and iso and spans_all),
        })


def verify_decompositions(k: int) -> DecompositionReport:
    """``G(I) = A_{(-)^k} + C_+`` and ``(B_k*_coreg, beta_c) = A_{(-)^(k+1)} + B_{(-)^k}``."""
    from .double import coreg_coefficient, induced_module, zmodule_to_dmodule
    from .rep import trivial_module

    H = bk(k)
    d = H.dim
    sgn = "plus" if k % 2 == 0 else "minus"
    osgn = "minus" if k % 2 == 0 else "plus"
    rep = DecompositionReport()

    G = induced_module(H, trivial_module(H))
    with_g = [{monomial_index(k, S, 1): 1} for S in subsets(k)]
    without_g = [{monomial_index(k, S, 0): 1} for S in subsets(k)]
    _direct_sum_check(rep, "G(I)", G, [
        ("A" + sgn, with_g, named_module(k, "A" + sgn)),
        ("Cplus", without_g, named_module(k, "Cplus")),
    ])

    C = zmodule_to_dmodule(H, coreg_coefficient(H))
    top = tuple(range(k))
    e = monomial_index(k, top, 0)
    eg = monomial_index(k, top, 1)
    s_a = -1 if k % 2 == 0 else 1          # (-1)^(k+1)
    va = {e: 1, eg: s_a}
    vb = {e: 1, eg: -s_a}
    _direct_sum_check(rep, "coregular", C, [
        ("A" + osgn, _hcyclic(C.hmod, va), named_module(k, "A" + osgn)),
        ("B" + sgn, _hcyclic(C.hmod, vb), named_module(k, "B" + sgn)),
    ])
    return rep


# -- Koszul resolution ----------------------------------------------------------

def sym_monomials(k: int, n: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of degree ``n`` in ``k`` variables (deterministic order)."""
    from itertools import combinations_with_replacement

    out = []
    for combo in combinations_with_replacement(range(k), n):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class KoszulResolution:
    """``... -> S^n (x) C_{(-)^n} -> ... -> S^0 (x) C_+ -> I -> 0``.

    ``terms[n]`` is ``P_n``; ``maps[0]`` is the augmentation ``P_0 -> I`` and
    ``maps[n]`` is ``f_n: P_n -> P_{n-1}``.  One extra degree is built so that
    exactness at ``P_{n_max}`` can be certified.
    """

    def __init__(self, k: int, n_max: int):
        from .double import DHModule
        from .exactlin import kron
        from .rep import Representation

        if k < 1:
            raise ValueError("the Koszul resolution needs k >= 1")
        self.k = k
        self.n_max = n_max
        H = bk(k)
        self.hopf = H
        self.target = named_module(k, "Iplus")
        self.monomials = [sym_monomials(k, n) for n in range(n_max + 2)]
        self.multiplicities = [len(m) for m in self.monomials]
        self.terms = []
        for n, monos in enumerate(self.monomials):
            C = named_module(k, "Cplus" if n % 2 == 0 else "Cminus")
            I = Mat.identity(len(monos))
            hm = Representation(H, I.rows * C.dim, [kron(I, a) for a in C.hmod.actions],
                                name=f"S^{n}(x){C.name}")
            self.terms.append(DHModule(H, hm, [kron(I, C.dual_action(a)) for a in range(H.dim)],
                                       name=hm.name))
        n_ext = 2 ** k
        aug = Mat(1, n_ext, {(0, subset_index(k)[()]): 1})
        self.maps = [aug]
        R = [exterior_right(k, i) for i in range(k)]
        for n in range(1, n_max + 2):
            src = self.monomials[n]
            tgt = {m: j for j, m in enumerate(self.monomials[n - 1])}
            entries = {}
            for j, alpha in enumerate(src):
                for i in range(k):
                    if not alpha[i]:
                        continue
                    beta = list(alpha)
                    beta[i] -= 1
                    row = tgt[tuple(beta)]
                    for (r, c), v in R[i].items():
                        key = (row * n_ext + r, j * n_ext + c)
                        entries[key] = entries.get(key, 0) + alpha[i] * v
            self.maps.append(Mat(len(tgt) * n_ext, len(src) * n_ext, entries))

    def module_complex(self, upto: Optional[int] = None):
        """The augmented complex ``I <- P_0 <- ... <- P_upto`` as a module complex."""
        from .dycomplex import ModuleComplex
        upto = self.n_max if upto is None else upto
        return ModuleComplex([self.target] + self.terms[:upto + 1], self.maps[:upto + 1])

    def check(self) -> dict:
        k = self.k
        binom_ok = all(self.multiplicities[n] == comb(k + n - 1, n) for n in range(self.n_max + 2))
        full = self.module_complex(self.n_max + 1)
        exact = full.exact_positions()        # positions I, P_0, ..., P_n_max
        return {
            "multiplicities": self.multiplicities[: self.n_max + 1],
            "binomial": binom_ok,
            "dd_zero": full.dd_zero(),
            "equivariant": full.equivariant(),
            "exact": all(exact),
            "exact_positions": exact,
        }


def koszul_resolution(k: int, n_max: int) -> KoszulResolution:
    return KoszulResolution(k, n_max)


def _resolve_module(k: int, Y):
    from .double import ZCoefficient, zmodule_to_dmodule
    if isinstance(Y, str):
        return named_module(k, Y)
    if isinstance(Y, ZCoefficient):
        return zmodule_to_dmodule(bk(k), Y)
    return Y


def resolution_cohomology(k: int, Y, n_max: int, resolution: Optional[KoszulResolution] = None):
    """Cohomology of ``Hom_D(P_*, Y)`` for the Koszul resolution ``P_*``."""
    import time

    from .dycomplex import CochainComplex, _coordinates_matrix, cohomology_dims
    from .exactlin import kron, rank
    from .rep import hom_space

    t0 = time.perf_counter()
    Yd = _resolve_module(k, Y)
    R = resolution or koszul_resolution(k, n_max)
    if R.n_max < n_max:
        raise ValueError("resolution is too short")
    homs = [hom_space(R.terms[n], Yd) for n in range(n_max + 2)]
    IY = Mat.identity(Yd.dim)
    coords = []
    for n in range(n_max + 1):
        image = kron(IY, R.maps[n + 1].T) @ homs[n].kernel
        coords.append(_coordinates_matrix(image, homs[n + 1], n))
    C = CochainComplex(
        dims=[h.dim for h in homs[: n_max + 1]],
        differentials=coords[:n_max],
        bases=homs[: n_max + 1],
        top_rank=rank(coords[n_max]),
        top_differential=coords[n_max],
        metadata={"method": "resolution", "algebra": f"B{k}", "k": k,
                  "coefficients": [getattr(Yd, "name", "Y")],
                  "timings": {"total": time.perf_counter() - t0}},
    )
    return cohomology_dims(C)


def g_projective_split(H: HopfAlgebra, M) -> Optional[Mat]:
    """A ``D(H)``-map ``s: M -> G(U M)`` with ``eps_M s = id``, or ``None``."""
    from .double import induced_module
    from .exactlin import solve
    from .rep import hom_space, vec

    G = induced_module(H, M.hmod)
    eps = M.beta()
    hb = hom_space(M, G)
    cols = [vec(eps @ s) for s in hb.basis]
    A = Mat.from_columns(M.dim * M.dim, cols) if cols else Mat.zero(M.dim * M.dim, 0)
    x = solve(A, vec(Mat.identity(M.dim)))
    if x is None:
        return None
    return hb.combination([x.get(j, 0) for j in range(hb.dim)])


def g_projectivity_check(k: int, M) -> bool:
    """Is the named module (or ``D(B_k)``-module) a retract of its induced module?"""
    return g_projective_split(bk(k), _resolve_module(k, M)) is not None
