from fractions import Fraction

import pytest

from hochschild.errors import UsageError
from hochschild.fields import Field, add_into
from hochschild.linalg import Echelon, LinearMap, kernel, rank


def test_rationals_reduce_and_format():
    Q = Field(0)
    assert Q.reduce(Fraction(4, 2)) == 2 and isinstance(Q.reduce(Fraction(4, 2)), int)
    assert Q.format(Fraction(-3, 6)) == "-1/2"
    assert Q.parse("-1/2") == Fraction(-1, 2)
    assert Q.div(1, 3) * 3 == 1


def test_prime_field():
    F = Field(5)
    assert F.reduce(-1) == 4
    assert F.parse("1/2") == 3
    assert F.inv(2) == 3
    assert F.clean({"a": 5, "b": 6}) == {"b": 1}
    with pytest.raises(ZeroDivisionError):
        F.inv(10)
    with pytest.raises(UsageError):
        Field(4)


def test_add_into_scales():
    acc = {"a": 1}
    add_into(acc, {"a": 2, "b": 1}, -1)
    assert acc == {"a": -1, "b": -1}


def test_rank_and_kernel_small_oracle():
    Q = Field(0)
    # columns of [[1, 2, 3], [2, 4, 6], [1, 0, 1]]: rank 2, kernel spanned by (1, 1, -1)
    cols = [("c0", {0: 1, 1: 2, 2: 1}), ("c1", {0: 2, 1: 4}), ("c2", {0: 3, 1: 6, 2: 1})]
    assert LinearMap(Q, cols).rank == 2
    ker = LinearMap(Q, cols).kernel
    assert len(ker) == 1
    (v,) = ker
    ratio = {k: Fraction(c, v["c0"]) for k, c in v.items()}
    assert ratio == {"c0": 1, "c1": 1, "c2": -1}
    assert rank(Field(2), [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]) == 2
    assert rank(Q, [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]) == 3
    assert len(kernel(Field(2), cols)) == 2


def test_solve_and_membership():
    Q = Field(0)
    M = LinearMap(Q, [("x", {0: 1, 1: 1}), ("y", {1: 1})])
    sol = M.solve({0: 2, 1: 5})
    assert sol == {"x": 2, "y": 3}
    E = Echelon(Q)
    E.add({0: 1, 1: 1})
    assert E.contains({0: 3, 1: 3}) and not E.contains({0: 1})
