import random

import pytest

from conftest import dihedral, dual, fixture
from oracles import combine_bar, cross_engine, is_zero_bar, random_bar_cochain
from hochschild.algebra import dual_numbers
from hochschild.fields import Field
from hochschild.gerstenhaber import (LeftCalculus, bar_cup, bar_delta, bracket_contracting,
                                     cup_via_diagonal, goodcond, homotopy_lifting, mu_homotopy, side_homotopy)
from hochschild.resolutions import Cochain, Cohomology, cochain_combine


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("p", [0, 2])
def test_left_calculus_identities(k, p):
    res, c = dihedral(k, p)
    L = LeftCalculus(res, c)
    assert L.check_zz(res.depth)
    assert L.check_comm(3)
    assert L.check_diagonal(res.depth - 1)
    assert goodcond(L, res.depth - 1)


@pytest.mark.parametrize("p", [0, 2])
def test_solvers_satisfy_boundary_equation(p):
    res, c = dihedral(2, p)
    L = LeftCalculus(res, c)
    assert mu_homotopy(res).check(3)
    assert side_homotopy(res, L.delta_image).check(3)
    for f in Cohomology(res, 1).basis[:3]:
        assert homotopy_lifting(res, f, L.delta_image).check(3)


@pytest.mark.parametrize("which", ["dual", "dihedral:2"])
@pytest.mark.parametrize("p", [0, 2])
def test_all_bracket_formulas_agree_with_bar(which, p):
    res, c = fixture(which, p)
    bad, nonzero, total = cross_engine(res, c, [(0, 1), (1, 1), (1, 2)], extra=True)
    assert not bad
    assert nonzero > 0


def test_bracket_with_unit_is_zero():
    res, c = dihedral(2, 0)
    L = LeftCalculus(res, c)
    one = Cochain(0, {res.P.gens(0)[0]: dict(res.algebra.unit)})
    H1 = Cohomology(res, 1)
    for n in (1, 2):
        for f in Cohomology(res, n).basis:
            b = bracket_contracting(L, one, f)
            assert Cohomology(res, n - 1).is_coboundary(b) if n > 1 else not b.flat()
    assert H1.dim > 0


@pytest.mark.parametrize("p", [0, 2])
def test_cup_graded_commutative_on_classes(p):
    res, c = dihedral(2, p)
    L = LeftCalculus(res, c)
    H = {n: Cohomology(res, n) for n in range(4)}
    for n, m in [(1, 1), (1, 2)]:
        for f in H[n].basis:
            for g in H[m].basis:
                s = -1 if (n * m) % 2 else 1
                fg = cup_via_diagonal(res, f, g, L.delta_image)
                gf = cup_via_diagonal(res, g, f, L.delta_image)
                assert H[n + m].is_coboundary(cochain_combine(res.field, n + m, (1, fg), (-s, gf)))


@pytest.mark.parametrize("p", [0, 3])
def test_bar_delta_leibniz(p):
    A = dual_numbers(Field(p))
    rng = random.Random(7)
    for n, m in [(0, 1), (1, 1), (1, 2), (2, 1)]:
        f, g = random_bar_cochain(A, n, rng), random_bar_cochain(A, m, rng)
        assert is_zero_bar(bar_delta(bar_delta(f)))
        s = -1 if n % 2 else 1
        lhs = bar_delta(bar_cup(f, g))
        rhs = combine_bar(A, n + m + 1, (1, bar_cup(bar_delta(f), g)), (s, bar_cup(f, bar_delta(g))))
        assert is_zero_bar(combine_bar(A, n + m + 1, (1, lhs), (-1, rhs)))


def test_bracket_is_derivation_of_cup_on_dual_numbers():
    res, c = dual(0)
    L = LeftCalculus(res, c)
    H = {n: Cohomology(res, n) for n in range(5)}
    f, g, h = H[1].basis[0], H[2].basis[0], H[1].basis[0]
    # [f, g h] = [f, g] h + (-1)^{(|f|-1)|g|} g [f, h]
    gh = cup_via_diagonal(res, g, h, L.delta_image)
    lhs = bracket_contracting(L, f, gh)
    t1 = cup_via_diagonal(res, bracket_contracting(L, f, g), h, L.delta_image)
    t2 = cup_via_diagonal(res, g, bracket_contracting(L, f, h), L.delta_image)
    s = -1 if ((f.degree - 1) * g.degree) % 2 else 1
    assert H[3].is_coboundary(cochain_combine(res.field, 3, (1, lhs), (-1, t1), (-s, t2)))


def test_dual_numbers_bracket_oracle():
    # HH^1 is spanned by the derivation x -> x; the bracket with the HH^0 class x is x, and [x, D] = -x
    res, c = dual(0)
    L = LeftCalculus(res, c)
    e0, e1 = res.P.gens(0)[0], res.P.gens(1)[0]
    x = Cochain(0, {e0: {1: 1}})
    (d,) = Cohomology(res, 1).basis
    assert d.value(e1) == {1: 1}
    assert bracket_contracting(L, d, x).value(e0) == {1: 1}
    assert bracket_contracting(L, x, d).value(e0) == {1: -1}
