import json

import pytest

from conftest import dihedral, dual
from hochschild.algebra import dihedral_algebra, ground_field
from hochschild.errors import TruncationError, ValidationError
from hochschild.fields import Field, add_into
from hochschild.resolutions import (Cochain, Cohomology, TraceHomology, bar_contraction, bar_resolution, coboundary,
                                    lift_chain_map, pullback, resolution_from_json, resolution_to_json)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("p", [0, 2])
def test_dihedral_resolution_and_contraction(k, p):
    res, c = dihedral(k, p)
    assert res.check()
    assert c.check()


@pytest.mark.parametrize("p,dims", [(0, [2, 1, 1, 1, 1]), (2, [2, 2, 2, 2, 2]), (3, [2, 1, 1, 1, 1])])
def test_dual_numbers_dimensions(p, dims):
    res, c = dual(p)
    assert c.check()
    assert [Cohomology(res, n).dim for n in range(5)] == dims
    assert [TraceHomology(res, n).dim for n in range(5)] == dims


def test_ground_field():
    res = bar_resolution(ground_field(Field(0)), 3)
    assert [Cohomology(res, n).dim for n in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("p", [0, 2])
def test_dihedral_dimensions_match_bar(p):
    res, _ = dihedral(2, p)
    bar = bar_resolution(res.algebra, 3)
    for n in range(3):
        assert Cohomology(res, n).dim == Cohomology(bar, n).dim
        assert TraceHomology(res, n).dim == TraceHomology(bar, n).dim


def test_dihedral_char2_dimensions():
    res, _ = dihedral(2, 2)
    assert [Cohomology(res, n).dim for n in range(5)] == [5, 9, 13, 17, 21]


def test_bar_contraction_identities():
    res = bar_resolution(dihedral_algebra(2, Field(2)), 3)
    assert bar_contraction(res).check()


@pytest.mark.parametrize("which", ["dihedral", "dual"])
def test_comparison_maps(which):
    res, c = dihedral(2, 0) if which == "dihedral" else dual(0)
    P = res.P
    bar = bar_resolution(res.algebra, 3)
    toB = lift_chain_map(res, bar, bar_contraction(bar))
    toP = lift_chain_map(bar, res, c)
    for n in range(1, 3):
        for g in P.gens(n):
            lhs = bar.P.differential(toB.image(g))
            rhs = bar.P.apply_slot(P.d(g), 0, toB.image)
            assert not bar.P.clean(add_into(lhs, rhs, -1))
    # transferring a basis of HH^n to the bar side and back is the identity on classes
    for n in range(3):
        H = Cohomology(res, n)
        for f in H.basis:
            back = pullback(pullback(f, toP), toB)
            assert H.is_cocycle(back)
            assert not H.is_coboundary(back)
            diff = add_into(back.flat(), f.flat(), -1)
            assert H.is_coboundary(Cochain.from_flat(n, res.field.clean(diff)))


def test_coboundary_squares_to_zero():
    res, _ = dihedral(3, 0)
    P = res.P
    for g in P.gens(2):
        for l in range(res.algebra.dim):
            f = Cochain(2, {g: {l: 1}})
            assert not coboundary(res, coboundary(res, f)).flat()


def test_truncation():
    res, _ = dual(0, 3)
    with pytest.raises(TruncationError):
        Cohomology(res, 3)


def test_resolution_json_round_trip():
    res, c = dihedral(2, 2, 4)
    obj = json.loads(json.dumps(resolution_to_json(res, c)))
    res2, c2 = resolution_from_json(obj)
    assert [Cohomology(res2, n).dim for n in range(3)] == [Cohomology(res, n).dim for n in range(3)]
    assert c2.check()


def test_corrupted_resolution_names_identity():
    res, c = dihedral(2, 2, 4)
    obj = resolution_to_json(res, c)
    entry = obj["differential"][3]
    entry["image"] = entry["image"][1:]
    with pytest.raises(ValidationError) as e:
        resolution_from_json(obj)
    assert e.value.identity in ("d^2=0", "mu d=0", "exactness")
