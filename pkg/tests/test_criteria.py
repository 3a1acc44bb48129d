from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from divsets import criteria
from divsets.criteria import ExclusionCertificate, replay
from divsets.qbase import DivisibilityParams, theta

P = DivisibilityParams


def test_cardinality_one():
    c = criteria.exclude_cardinality_one(P(2, 1))
    assert c.kind == criteria.CARDINALITY_ONE and replay(c)
    assert criteria.exclude_cardinality_one(P(2, 1), 2) is None


def test_representable():
    assert criteria.representable(7, P(2, 2)) == (1, 0)
    assert criteria.representable(8, P(2, 2)) == (0, 1)
    assert criteria.representable(9, P(2, 2)) is None


def test_small_intervals_q2r2():
    # gaps below 2*8 = 16 between sums of 7s and 8s
    iv = [(lo, hi) for _, _, lo, hi in criteria.excluded_intervals_small(P(2, 2))]
    assert iv == [(1, 6), (9, 13)]


@pytest.mark.parametrize("q,r", [(2, 2), (2, 3), (3, 2), (4, 1), (5, 2)])
def test_interval_theorem_complements_sums(q, r):
    p = P(q, r)
    for n in range(1, r * q ** (r + 1) + 1):
        cert = criteria.interval_theorem(p, n)
        assert (cert is None) == (criteria.representable(n, p) is not None)
        if cert:
            assert replay(cert)


def test_tau_values():
    assert criteria.tau(2, 0, 2, 1) == -2
    assert criteria.tau(2, 7, 8, 1) == 0


def test_tau_excludes_q2r3():
    p = P(2, 3)
    for n in range(53, 59):
        c = criteria.tau_criterion(p, n)
        assert c is not None and c.data["m"] == 4 and replay(c)
    c = criteria.tau_criterion(p, 53)
    assert c.data == {"u": 21, "m": 4, "tau": -2}


def test_tau_q4r1_n18():
    c = criteria.tau_criterion(P(4, 1), 18)
    assert c is not None and c.data["m"] == 4


def test_fourth_identity_named():
    h, g2 = criteria.fourth_identity_terms(2, 8, 52, 3)
    assert (h, g2) == (4, -4)
    assert criteria.fourth_identity_terms(2, 16, 235, 7) == (4, -6)
    assert criteria.fourth_identity_terms(3, 9, 71, 5) == (2, -12)
    c = criteria.fourth_identity(P(2, 3), 52, 3)
    assert c is not None and replay(c)


def test_fourth_identity_unique_n_per_t():
    # for q=2, delta=16 exactly one n fires for each t
    p = P(2, 4)
    hits = {t: [n for n in range(1, 300) if criteria.fourth_identity(p, n, t)] for t in range(8)}
    assert [hits[t] for t in range(1, 8)] == [[33], [66], [99], [132], [166], [200], [235]]
    assert criteria.fourth_identity_t_max(p) == 7


def test_fourth_identity_rejects_negative_t():
    with pytest.raises(ValueError):
        criteria.fourth_identity(P(2, 3), 52, -1)


def test_residual_candidates():
    assert criteria.residual_candidates(P(2, 3), 33) == [1, 9]
    assert criteria.residual_candidates(P(2, 5), 324) == [4, 36, 68, 100, 132]


def test_average_residual_structure():
    c = criteria.average_residual(P(2, 3), 33, lambda c: c in (1, 9))
    assert c is not None and c.data["candidates"] == [1, 9]
    assert replay(c, lambda c: c in (1, 9))
    assert not replay(c, lambda c: c == 1)
    assert criteria.average_residual(P(2, 3), 33, lambda c: c == 1) is None


def test_replay_rejects_tampering():
    c = criteria.tau_criterion(P(2, 3), 53)
    bad = ExclusionCertificate(c.kind, c.params, c.n, {"u": 21, "m": 3, "tau": -2})
    assert not replay(bad)
    c = criteria.interval_theorem(P(2, 2), 10)
    bad = ExclusionCertificate(c.kind, c.params, 14, c.data)
    assert not replay(bad)


def test_certificate_json_round_trip():
    c = ExclusionCertificate(criteria.LP_INFEASIBLE, P(2, 3), 52, {"farkas": [Fraction(1, 3), Fraction(-2)]})
    d = c.to_dict()
    assert d["data"]["farkas"][0] == {"frac": "1/3"}
    assert ExclusionCertificate.from_dict(d) == c
    with pytest.raises(ValueError):
        ExclusionCertificate("Bogus", P(2, 3), 1)


@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)]), st.integers(1, 400))
def test_cascade_never_excludes_sums_of_flats_and_affines(qr, n):
    q, r = qr
    p = P(q, r)
    a, b = theta(r + 1, q), q ** (r + 1)
    sums = {i * a + j * b for i in range(n // a + 1) for j in range(n // b + 1)}
    if n in sums:
        assert criteria.analytic_cascade(p, n) is None


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (4, 2), (5, 1)]), st.integers(1, 600))
def test_every_certificate_replays(qr, n):
    p = P(*qr)
    for c in criteria.iter_criteria(p, n):
        assert replay(c)
