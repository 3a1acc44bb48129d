import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from divsets import gfcode
from divsets.gfcode import GeneratorMatrix, weight_distribution
from divsets.macwilliams import (
    WeightDistribution,
    dual_as_primal,
    format_distribution,
    krawtchouk,
    krawtchouk_column,
    macwilliams_krawtchouk,
    macwilliams_transform,
    parse_distribution,
    spectrum_to_distribution,
    standard_equations,
)


def test_hamming_dual_of_simplex():
    w = WeightDistribution.from_mapping(7, {0: 1, 4: 7}, 3)
    d = macwilliams_transform(w, 3, 2)
    assert d.is_genuine
    assert d.support == {0: 1, 3: 7, 4: 7, 7: 1}


def test_ternary_golay_dual():
    # [11,5] dual Golay is 2-weight with weights 6, 9; its dual has minimum distance 5
    w = WeightDistribution.from_mapping(11, {0: 1, 6: 132, 9: 110}, 5)
    d = macwilliams_transform(w, 5, 3)
    assert d.is_genuine
    assert min(i for i in d.support if i) == 5
    assert sum(d.A) == 3**6


def test_non_code_flagged():
    w = WeightDistribution.from_mapping(4, {0: 1, 2: 2}, 1)
    d = macwilliams_transform(w, 1, 2)
    assert not d.is_genuine
    with pytest.raises(ValueError):
        d.as_ints()


def test_requires_a0():
    with pytest.raises(ValueError):
        macwilliams_transform(WeightDistribution(2, (0, 1, 0)), 1, 2)
    with pytest.raises(ValueError):
        WeightDistribution(2, (1, 0))


def test_format_round_trip():
    s = {0: 1, 112: 30, 119: 1692}
    assert parse_distribution(format_distribution(s)) == s
    assert parse_distribution("0^1 112^{30} 119^{1692}") == s


@pytest.mark.parametrize("n,q", [(5, 2), (6, 3), (7, 4)])
def test_krawtchouk_recurrence_matches_sum(n, q):
    for x in range(n + 1):
        assert krawtchouk_column(n, q, x) == [krawtchouk(n, q, k, x) for k in range(n + 1)]


@st.composite
def random_codes(draw):
    q = draw(st.sampled_from([2, 3, 4]))
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k, 9))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    return GeneratorMatrix.from_rows(rows, q)


@settings(max_examples=100)
@given(random_codes())
def test_transform_is_involution(g):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        w = weight_distribution(g)
    k, q, n = w.k, g.q, g.n
    d = macwilliams_transform(w, k, q)
    assert d.is_genuine
    assert d == macwilliams_krawtchouk(w, k, q)
    back = macwilliams_transform(dual_as_primal(d, n - k), n - k, q)
    assert back.as_ints() == w.A


@st.composite
def random_pointsets(draw):
    q = draw(st.sampled_from([2, 3, 4]))
    v = draw(st.integers(2, 6 if q == 2 else 4 if q == 3 else 3))
    pts = gfcode.all_points(v, q)
    idx = draw(st.sets(st.integers(0, len(pts) - 1), min_size=1, max_size=min(len(pts), 40)))
    return gfcode.pointset_from_points([tuple(int(x) for x in pts[i]) for i in sorted(idx)], q, v)


@settings(max_examples=100)
@given(random_pointsets())
def test_standard_equations_on_hole_spectra(s):
    h = gfcode.hole_spectrum(s)
    for eq in standard_equations(s.n, s.v, s.q):
        assert eq.holds(h.a)


@settings(max_examples=50)
@given(random_pointsets())
def test_spectrum_matches_code_weights(s):
    # for a spanning set the hole spectrum is the weight distribution read backwards
    g = gfcode.pointset_matrix(s)
    if gfcode.rank(g) < s.v:
        return
    h = gfcode.hole_spectrum(s)
    assert spectrum_to_distribution(h.a, s.q).A == weight_distribution(g).A


def test_standard_equations_validate():
    with pytest.raises(ValueError):
        standard_equations(3, 1, 2)
    eqs = standard_equations(7, 3, 2)
    fano = [0] * 8
    fano[3] = 7
    assert all(e.holds(fano) for e in eqs)
