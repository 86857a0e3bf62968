import pytest

from dycoh.bk import bk, dual_generators, monomial_index, named_module, projective_cover
from dycoh.double import (
    ZCoefficient,
    check_double,
    check_halfbraiding,
    check_halfbraiding_naturality,
    check_hexagon,
    coreg_coefficient,
    dmodule_to_zmodule,
    double_of,
    halfbraiding_closed_form,
    halfbraiding_from_beta,
    induced_module,
    trivial_coefficient,
    zmodule_to_dmodule,
)
from dycoh.exactlin import Mat, rank, swap_matrix
from dycoh.hopf import HopfAxiomError, cyclic_group_algebra
from dycoh.rep import find_isomorphism, hom_space, regular_module, trivial_module


@pytest.mark.parametrize("k", [0, 1])
def test_double_is_associative(k):
    assert check_double(double_of(bk(k))).passed


def test_double_sampled_for_larger_k():
    assert check_double(double_of(bk(3)), samples=256).passed


def test_h_squared_is_one():
    H = bk(1)
    D = double_of(H)
    h = D.embed_dual(dual_generators(1)[0])
    assert D.product(h, h) == D.unit


def test_x_y_anticommutator():
    k = 2
    H = bk(k)
    D = double_of(H)
    gens = dual_generators(k)
    h = D.embed_dual(gens[0])
    g = D.embed_base({monomial_index(k, (), 1): 1})
    hg = D.product(h, g)
    one_minus_hg = dict(D.unit)
    for key, v in hg.items():
        one_minus_hg[key] = one_minus_hg.get(key, 0) - v
    one_minus_hg = {key: v for key, v in one_minus_hg.items() if v}
    for i in range(k):
        x = D.embed_base({monomial_index(k, (i,), 0): 1})
        for j in range(k):
            y = D.embed_dual(gens[1 + j])
            a, b = D.product(x, y), D.product(y, x)
            s = {key: a.get(key, 0) + b.get(key, 0) for key in set(a) | set(b)}
            s = {key: v for key, v in s.items() if v}
            assert s == (one_minus_hg if i == j else {})


@pytest.mark.parametrize("k", [0, 1, 2])
def test_standard_coefficients_are_zmodules(k):
    H = bk(k)
    for Z in (trivial_coefficient(H), coreg_coefficient(H)):
        M = zmodule_to_dmodule(H, Z)
        assert M.check(full=k < 2).passed


def test_zero_beta_fails_unit():
    H = bk(1)
    with pytest.raises(HopfAxiomError):
        zmodule_to_dmodule(H, ZCoefficient(trivial_module(H), Mat.zero(1, 4)))


def test_trivial_coefficient_is_I():
    H = bk(1)
    M = zmodule_to_dmodule(H, trivial_coefficient(H))
    assert find_isomorphism(M, named_module(1, "Iplus")) is not None
    for y in dual_generators(1)[1:]:
        assert M.dual_act(y).is_zero()


def test_round_trip():
    H = bk(1)
    Z = coreg_coefficient(H)
    Z2 = dmodule_to_zmodule(zmodule_to_dmodule(H, Z))
    assert Z2.beta == Z.beta
    A = named_module(1, "Aplus")
    A2 = zmodule_to_dmodule(H, dmodule_to_zmodule(A))
    for a in range(H.dim):
        assert A2.dual_action(a) == A.dual_action(a)


def test_coregular_b1_decomposes():
    from dycoh.bk import verify_decompositions
    rep = verify_decompositions(1)
    coreg = [e for e in rep.entries if e["module"] == "coregular"]
    assert {e["summand"] for e in coreg} == {"Aplus", "Bminus"}
    assert all(e["passed"] for e in coreg)


def test_induced_module_is_dmodule():
    H = bk(1)
    G = induced_module(H, projective_cover(1, 1))
    assert G.dim == 8
    assert G.check(full=True).passed


def test_halfbraiding_of_trivial_is_flip():
    H = bk(1)
    Z = trivial_coefficient(H)
    X = projective_cover(1, 1)
    assert halfbraiding_from_beta(H, Z, X) == swap_matrix(1, X.dim)


@pytest.mark.parametrize("coef", ["trivial", "coregular"])
def test_halfbraiding_properties(coef):
    H = bk(1)
    Z = trivial_coefficient(H) if coef == "trivial" else coreg_coefficient(H)
    X = projective_cover(1, 1)
    rho = halfbraiding_from_beta(H, Z, X)
    assert rho == halfbraiding_closed_form(H, Z, X)
    assert check_halfbraiding(H, Z, X).passed
    assert rank(rho) == rho.rows


def test_hexagon():
    H = bk(1)
    P = projective_cover(1, 1)
    assert check_hexagon(H, coreg_coefficient(H), P, P)
    assert check_hexagon(H, trivial_coefficient(H), P, regular_module(H))


def test_halfbraiding_naturality():
    H = bk(1)
    X = projective_cover(1, 1)
    X2 = projective_cover(1, -1)
    phi = hom_space(X, X2).basis[0]
    assert check_halfbraiding_naturality(H, coreg_coefficient(H), X, X2, phi)


def test_group_algebra_double():
    H = cyclic_group_algebra(3)
    D = double_of(H)
    assert D.dim == 9
    assert check_double(D).passed
