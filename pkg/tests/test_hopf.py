import random

import pytest
from hypothesis import given, settings, strategies as st

from dycoh.bk import bk, build_bk, monomial_index
from dycoh.exactlin import Mat, kron_all
from dycoh.hopf import (
    HopfAxiomError,
    check_hopf_axioms,
    cointegral_search,
    cyclic_group_algebra,
    dual_hopf,
    iterated_coproduct,
    require_hopf,
)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_bk_axioms(k):
    H = build_bk(k)
    assert H.dim == 2 ** (k + 1)
    rep = check_hopf_axioms(H)
    assert rep.passed, rep.failed_names()


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_dual_axioms(k):
    D = dual_hopf(build_bk(k))
    assert check_hopf_axioms(D).passed


@pytest.mark.parametrize("n", [2, 3, 5])
def test_group_algebra_axioms(n):
    assert check_hopf_axioms(cyclic_group_algebra(n)).passed


def test_dual_antipode_choice():
    # S has order 4 on B_k for k >= 1, so only the inverse-transpose works
    D = dual_hopf(build_bk(1))
    assert D.antipode_choice == "transpose of inverse antipode"
    assert D.antipode_candidates["transpose of antipode"] is False
    D0 = dual_hopf(build_bk(0))
    assert all(D0.antipode_candidates.values())


def test_mutated_antipode_is_rejected_with_witness_x():
    H = build_bk(1)
    x = monomial_index(1, (0,), 0)
    xg = monomial_index(1, (0,), 1)
    S = dict(H.antipode.items())
    # S(x) = -g x = x g instead of g x = -x g
    S[(xg, x)] = 1
    bad = H.replace(antipode=Mat(4, 4, S))
    rep = check_hopf_axioms(bad)
    assert not rep.passed
    assert any(f["axiom"].startswith("antipode") and tuple(f["witness"]) == (x,)
               for f in rep.to_dict()["failures"])
    with pytest.raises(HopfAxiomError):
        require_hopf(bad)


def test_dual_of_z2_is_pointwise():
    D = dual_hopf(cyclic_group_algebra(2))
    # delta_e * delta_e = delta_e, delta_g * delta_g = delta_g, cross terms vanish
    assert D.basis_product(0, 0) == {0: 1}
    assert D.basis_product(1, 1) == {1: 1}
    assert D.basis_product(0, 1) == {} and D.basis_product(1, 0) == {}
    assert D.unit == {0: 1, 1: 1}


@pytest.mark.parametrize("k", [1, 2])
def test_grouplike_iterated_coproduct(k):
    H = bk(k)
    g = monomial_index(k, (), 1)
    D3 = iterated_coproduct(H, 3)
    d = H.dim
    assert D3.column(g) == {(g * d + g) * d + g: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_iterated_coproduct_counit_contraction(n):
    H = bk(1)
    d = H.dim
    eps = Mat(1, d, {(0, i): c for i, c in enumerate(H.counit) if c})
    Dn = iterated_coproduct(H, n)
    if n == 1:
        assert Dn == Mat.identity(d)
        return
    for leg in range(n):
        factors = [Mat.identity(d)] * n
        factors[leg] = eps
        assert kron_all(factors) @ Dn == iterated_coproduct(H, n - 1)


def test_iterated_coproduct_rejects_zero():
    with pytest.raises(ValueError):
        iterated_coproduct(bk(1), 0)


def test_cointegral():
    lam = cointegral_search(cyclic_group_algebra(2))
    # lambda = delta_e in the group basis
    assert lam == [1, 0]
    assert cointegral_search(cyclic_group_algebra(3)) == [1, 0, 0]
    assert cointegral_search(build_bk(0)) is not None
    assert cointegral_search(bk(1)) is None
    assert cointegral_search(bk(2)) is None


def _random_elem(d, rnd):
    return {i: rnd.randint(-3, 3) for i in rnd.sample(range(d), rnd.randint(1, 4))}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_antipode_is_antimultiplicative(seed):
    rnd = random.Random(seed)
    H = bk(2)
    a, b = _random_elem(H.dim, rnd), _random_elem(H.dim, rnd)
    S = H.antipode
    assert S.apply(H.product(a, b)) == H.product(S.apply(b), S.apply(a))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_product_associative_on_random_elements(seed):
    rnd = random.Random(seed)
    H = bk(3)
    a, b, c = (_random_elem(H.dim, rnd) for _ in range(3))
    assert H.product(H.product(a, b), c) == H.product(a, H.product(b, c))
