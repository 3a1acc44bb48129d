from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from divsets.simplex import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    LpProblem,
    check_farkas,
    solve,
    to_fraction,
)


def test_negative_rhs_infeasible():
    p = LpProblem(["x"], [[1]], [-1])
    out = solve(p)
    assert out.status == INFEASIBLE
    assert check_farkas(p, out.farkas)


def test_single_equality():
    out = solve(LpProblem(["x"], [[1]], [3]))
    assert out.status == OPTIMAL and out.x == [3]


def test_two_variable_optimum():
    # min -x - 3y st x + y <= 4, -x + y <= 1; optimum at (3/2, 5/2)
    p = LpProblem(["x", "y"], [[1, 1], [-1, 1]], [4, 1], [LE, LE], objective=[-1, -3])
    out = solve(p)
    assert out.status == OPTIMAL
    assert out.x == [mpq(3, 2), mpq(5, 2)]
    assert out.value == mpq(-9)
    # strong duality
    assert sum(y * b for y, b in zip(out.duals, p.rhs)) == out.value


def test_unbounded():
    out = solve(LpProblem(["x"], [[1]], [1], [GE], objective=[-1]))
    assert out.status == UNBOUNDED


def test_free_variable():
    p = LpProblem(["x", "y"], [[1, 1]], [-2], free=frozenset({0}))
    out = solve(p)
    assert out.status == OPTIMAL
    assert p.is_feasible_point(out.x)


def test_validation():
    with pytest.raises(ValueError):
        LpProblem(["x"], [[1, 2]], [1])
    with pytest.raises(ValueError):
        LpProblem(["x"], [[1]], [1], ["<"])


def test_dump():
    p = LpProblem(["a", "b"], [[1, 0]], [2], [GE], objective=[0, 1])
    text = p.dump()
    assert "minimize 1*b" in text and "r0: 1*a >= 2" in text


def test_farkas_checker_rejects_bad_vectors():
    p = LpProblem(["x"], [[1]], [-1])
    assert not check_farkas(p, [1])
    assert not check_farkas(p, [])
    assert check_farkas(p, [-1])


def test_to_fraction():
    assert to_fraction(mpq(3, 6)) == Fraction(1, 2)


small = st.integers(-4, 4)


@st.composite
def lps(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    rhs = [draw(small) for _ in range(m)]
    senses = [draw(st.sampled_from([EQ, LE, GE])) for _ in range(m)]
    free = frozenset(j for j in range(n) if draw(st.booleans()) and draw(st.booleans()))
    obj = [draw(small) for _ in range(n)] if draw(st.booleans()) else None
    return LpProblem([f"x{j}" for j in range(n)], rows, rhs, senses, free, obj)


@settings(max_examples=300)
@given(lps())
def test_outcomes_certified(p):
    out = solve(p)
    if out.status == INFEASIBLE:
        assert check_farkas(p, out.farkas)
    else:
        assert p.is_feasible_point(out.x)
    if out.status == OPTIMAL and p.objective is not None:
        assert out.value == sum(mpq(c) * v for c, v in zip(p.objective, out.x))


@settings(max_examples=100)
@given(lps())
def test_deterministic(p):
    a, b = solve(p), solve(p)
    assert (a.status, a.x, a.farkas, a.pivots) == (b.status, b.x, b.farkas, b.pivots)
