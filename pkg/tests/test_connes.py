import pytest

from conftest import dihedral, dual, fixture
from oracles import connes_agreement, connes_routes
from hochschild.algebra import Algebra
from hochschild.connes import ConnesContraction, bar_connes, bv_operator, theta_trace
from hochschild.errors import UnsupportedOperation
from hochschild.fields import Field, add_into
from hochschild.gerstenhaber import LeftCalculus
from hochschild.resolutions import Cochain, Cohomology, TraceHomology, bar_resolution, compute_contraction


@pytest.mark.parametrize("which", ["dual", "dihedral:2", "dihedral:3"])
@pytest.mark.parametrize("p", [0, 2])
def test_contraction_route_anticommutes_with_b(which, p):
    res, c = fixture(which, p)
    P = res.P
    B = ConnesContraction(LeftCalculus(res, c))
    for n in range(1, 4):
        for g in P.gens(n):
            for v in range(res.algebra.dim):
                te = {(v, g): 1}
                lhs = add_into(dict(P.trace_differential(B(te))), B(P.trace_differential(te)))
                assert not P.clean(lhs)


@pytest.mark.parametrize("which", ["dual", "dihedral:2"])
@pytest.mark.parametrize("p", [0, 2])
def test_routes_agree_and_square_to_zero(which, p):
    res, c = fixture(which, p)
    bad, nonzero, square = connes_agreement(res, c, 2)
    assert not bad and not square
    assert nonzero > 0


def test_dual_numbers_values():
    res, c = dual(0)
    B = connes_routes(res, c)["contraction"]
    e0 = res.P.gens(0)[0]
    H1 = TraceHomology(res, 1)
    assert H1.is_boundary(B({(0, e0): 1}))
    assert not H1.is_boundary(B({(1, e0): 1}))


def test_bar_formula_on_bar_complex():
    res, _ = dual(2)
    A = res.algebra
    bar = bar_resolution(A, 4)
    H1, H2 = TraceHomology(bar, 1), TraceHomology(bar, 2)
    # the bar formula sends cycles to cycles and squares to zero on classes
    for z in TraceHomology(bar, 0).basis:
        y = bar_connes(A, z)
        assert H1.is_cycle(y)
        yy = bar_connes(A, y)
        assert H2.is_cycle(yy) and H2.is_boundary(yy)


@pytest.mark.parametrize("which", ["dual", "dihedral:2"])
@pytest.mark.parametrize("p", [0, 2])
def test_bv_operator_is_dual_to_connes(which, p):
    res, c = fixture(which, p)
    A, P = res.algebra, res.P
    B = ConnesContraction(LeftCalculus(res, c))
    for n in (1, 2):
        for f in Cohomology(res, n).basis:
            Df = bv_operator(res, B, f)
            for g in P.gens(n - 1):
                for v in range(A.dim):
                    te = {(v, g): 1}
                    assert theta_trace(A, Df, te) == theta_trace(A, f, B(te))


@pytest.mark.parametrize("p", [0, 2])
def test_bv_squares_to_zero(p):
    res, c = dihedral(2, p)
    B = ConnesContraction(LeftCalculus(res, c))
    for n in (2, 3):
        H = Cohomology(res, n - 2)
        for f in Cohomology(res, n).basis:
            DDf = bv_operator(res, B, bv_operator(res, B, f))
            assert H.is_coboundary(DDf)


def test_bv_needs_symmetric_algebra():
    F = Field(0)
    # upper triangular 2x2 matrices with basis 1, e = e11, a = e12: not symmetric
    mult = [
        [((0, 1),), ((1, 1),), ((2, 1),)],
        [((1, 1),), ((1, 1),), ((2, 1),)],
        [((2, 1),), (), ()],
    ]
    A = Algebra(F, ["1", "e", "a"], mult, {0: 1})
    res = bar_resolution(A, 3)
    assert [Cohomology(res, n).dim for n in range(3)] == [1, 0, 0]
    with pytest.raises(UnsupportedOperation):
        bv_operator(res, None, Cochain(1, {}))


def test_computed_contraction_supports_bv():
    res, _ = dual(3)
    c = compute_contraction(res)
    B = ConnesContraction(LeftCalculus(res, c))
    for f in Cohomology(res, 1).basis:
        assert Cohomology(res, 0).is_cocycle(bv_operator(res, B, f))
