import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from divsets import criteria, lengths
from divsets.lengths import (
    EXCLUDED,
    OPEN,
    REALIZABLE,
    ClassifyOptions,
    base_generators,
    classify,
    exclusion_intervals,
    frobenius_number,
    is_multiset_length,
    semigroup_closure,
    witness_cardinality,
)
from divsets.qbase import DivisibilityParams, theta

P = DivisibilityParams


def _gens(q, r, limit=200):
    p = P(q, r)
    low = classify(p.lower()) if r > 1 else None
    real = [c for c in range(limit // q + 1) if low is None or low.status(c) == REALIZABLE]
    return dict(base_generators(p, limit, real, None, lengths.load_sporadic_db()))


def test_generators_q2r2():
    g = _gens(2, 2)
    assert g[7].kind == lengths.FLAT and g[8].kind == lengths.AFFINE
    assert all(n in g for n in range(15, 21))
    assert g[16].kind == lengths.SURGERY_2


def test_generators_q3r1():
    g = _gens(3, 1)
    assert g[4].kind == lengths.FLAT and g[9].kind == lengths.AFFINE
    assert g[10].kind == lengths.OVOID and g[11].kind == lengths.SPORADIC


def test_generators_q2r1():
    g = _gens(2, 1, 6)
    assert sorted(g) == [3, 4, 5, 6]
    assert g[5].kind == lengths.PROJECTIVE_BASIS


def test_generators_q4r2_surgery_and_constructions():
    g = _gens(4, 2, 900)
    for j in range(18):
        assert 85 + 43 * j in g
    # 171 also arises from surgery; the cubic construction gives the same number
    w = lengths.RealizabilityWitness(lengths.THREE_Q_CUBED, 171)
    assert witness_cardinality(w, P(4, 2)) == 3 * 4**3 - 4**2 - 4 - 1 == 171
    assert witness_cardinality(g[257], P(4, 2)) == 257


def test_cone_lift_congruences():
    # level-1 sets of size 3 mod 4 lift to q*n+1, sizes 0 mod 4 lift to q*n
    g = _gens(2, 2, 100)
    for n, w in g.items():
        if w.kind == lengths.CONE_LIFT_1:
            assert w.meta["base"] % 4 == 3 and n == 2 * w.meta["base"] + 1
        if w.kind == lengths.CONE_LIFT_0:
            assert w.meta["base"] % 4 == 0 and n == 2 * w.meta["base"]


def test_closure_coin_problem():
    c = semigroup_closure([3, 4], 10)
    assert c.members == [0, 3, 4, 6, 7, 8, 9, 10]
    w = c.witness(10)
    assert w.kind == lengths.DIRECT_SUM and sorted(ch.n for ch in w.children) == [3, 3, 4]
    with pytest.raises(ValueError):
        semigroup_closure([0, 3], 5)


@given(st.integers(2, 20), st.integers(2, 20))
def test_closure_two_coprime_generators(a, b):
    if math.gcd(a, b) != 1:
        return
    c = semigroup_closure([a, b], a * b)
    gaps = [n for n in range(a * b + 1) if n not in c]
    assert max(gaps) == (a - 1) * (b - 1) - 1


def test_multiset_examples():
    assert not is_multiset_length(P(2, 1), 1)
    assert is_multiset_length(P(2, 1), 2)
    assert lengths.multiset_generators(P(2, 2)) == [7, 6, 4]
    assert not is_multiset_length(P(2, 2), 5)
    for q, r in [(2, 3), (3, 2), (5, 1)]:
        assert is_multiset_length(P(q, r), theta(r + 1, q))
    assert lengths.multiset_representation(P(2, 2), 13) == [1, 1, 0]


def test_classify_q2r2():
    led = classify(P(2, 2), 41)
    assert exclusion_intervals(led) == "[1,6], [9,13]"
    assert led.open == []
    assert led.realizable[:4] == [0, 7, 8, 14]


def test_classify_q2r3_with_external():
    led = classify(P(2, 3), 100)
    assert exclusion_intervals(led) == "[1,14], [17,29], [33,44], [52,59]"
    assert led[59].certificate.kind == criteria.EXTERNAL
    assert led[52].certificate.kind == criteria.FOURTH_IDENTITY
    assert all(led.status(n) == REALIZABLE for n in [15, 16, 30, 31, 32] + list(range(45, 52)) + list(range(60, 101)))


def test_classify_q2r3_without_external():
    led = classify(P(2, 3), options=ClassifyOptions(use_external=False))
    assert led.status(59) == OPEN
    res = frobenius_number(led)
    assert res.value is None and res.open_values == (59,)


def test_classify_q3r2_n89():
    led = classify(P(3, 2), 89)
    assert led[89].certificate.kind == criteria.Q_POWER
    assert led[89].certificate.data["x"] == 189


def test_frobenius_numbers():
    expect = {(2, 1): 2, (2, 2): 13, (2, 3): 59, (3, 1): 7, (4, 1): 19}
    for qr, f in expect.items():
        assert frobenius_number(classify(P(*qr))).value == f


def test_frobenius_blocked_by_open():
    res = frobenius_number(classify(P(5, 1)))
    assert res.value is None and 40 in res.open_values
    res = frobenius_number(classify(P(2, 2), 20))
    assert res.value is None and "below the bound" in res.reason


def test_open_values_match_known_unknowns():
    led = classify(P(2, 4))
    assert led.open == [129, 130, 131, 163, 164, 165, 185, 215, 216, 232, 233, 244, 245, 246, 247, 274, 275, 277, 278, 306, 309]
    led = classify(P(7, 1))
    assert led.open == [75, 83, 91, 92, 95, 101, 102, 103, 109, 110, 111, 117, 118, 119, 125, 126, 127, 133, 134, 135, 142, 143, 151, 159, 167]


def test_exclusion_intervals_break_at_open():
    led = classify(P(5, 1))
    assert exclusion_intervals(led) == "[1,5], [7,11], [13,17], [19,23], [27,29], [33,35]"
    assert "open: 40" in lengths.summary(led)


def test_partial_spread_bounds():
    assert lengths.partial_spread_bound(2, 11, 4) == 132
    assert lengths.partial_spread_bound(2, 15, 4) == 2180
    assert lengths.partial_spread_bound(2, 19, 4) == 34948
    # t | v: a spread exists
    assert lengths.partial_spread_bound(2, 8, 4) == (2**8 - 1) // (2**4 - 1)
    with pytest.raises(ValueError):
        lengths.partial_spread_bound(2, 4, 4)


def _df_oracle(q, v, t):
    r = v % t
    # floor of theta by bracketing with exact squares
    D = 1 + 4 * q**t * (q**t - q**r)
    c = 2 * q**t - 2 * q**r + 1
    th = 0
    while (2 * (th + 1) + c) ** 2 <= D:
        th += 1
    while th > 0 and (2 * th + c) ** 2 > D:
        th -= 1
    return (q**v - q**r) // (q**t - 1) - th - 1


@pytest.mark.parametrize("q,v,t", [(2, 8, 3), (2, 11, 4), (3, 7, 3), (2, 13, 5), (4, 7, 3)])
def test_drake_freeman(q, v, t):
    assert lengths.drake_freeman_bound(q, v, t) == _df_oracle(q, v, t)


def test_drake_freeman_compared():
    # the divisibility bound is at least as tight at (2, 11, 4)
    assert lengths.partial_spread_bound(2, 11, 4) <= lengths.drake_freeman_bound(2, 11, 4)
    with pytest.raises(ValueError):
        lengths.drake_freeman_bound(2, 8, 4)


def test_ledger_round_trips(tmp_path):
    led = classify(P(2, 3), 100)
    again = lengths.ledger_from_json(lengths.ledger_to_json(led))
    assert exclusion_intervals(again) == exclusion_intervals(led)
    assert all(again[n].certificate == led[n].certificate for n in led.excluded)
    assert all(criteria.replay(again[n].certificate) for n in again.excluded if again[n].certificate.kind != "AverageResidual")
    tsv = lengths.ledger_from_tsv(lengths.ledger_to_tsv(led))
    assert lengths.summary(tsv) == lengths.summary(led)
    assert [tsv.status(n) for n in range(101)] == [led.status(n) for n in range(101)]


def test_sporadic_db_override(tmp_path, monkeypatch):
    db = tmp_path / "db.tsv"
    db.write_text("2\t2\t9\t-\trealizable\ttest entry\t\n")
    assert [e.n for e in lengths.load_sporadic_db(db)] == [9]
    monkeypatch.setenv(lengths.SPORADIC_DB_ENV, str(db))
    assert [e.n for e in lengths.load_sporadic_db()] == [9]
    bad = tmp_path / "bad.tsv"
    bad.write_text("2\t2\t9\t-\tmaybe\tx\n")
    with pytest.raises(ValueError):
        lengths.load_sporadic_db(bad)


def test_false_database_entry_trips_soundness(tmp_path):
    db = tmp_path / "db.tsv"
    db.write_text("2\t2\t9\t-\trealizable\tbogus\t\n")
    with pytest.raises(AssertionError):
        classify(P(2, 2), 41, ClassifyOptions(db_path=str(db)))


def test_no_sporadic_entry_is_bold_open():
    # values only conjectured realizable must stay out of the database
    unknown = {(2, 4): {129, 130, 131, 163, 164, 165, 185, 215, 216, 232, 233, 244, 245, 246, 247, 274, 275, 277, 278, 306, 309},
               (5, 1): {40}, (3, 2): {70, 77, 99, 100, 101, 102, 113, 114, 115, 128}}
    for e in lengths.load_sporadic_db():
        assert e.n not in unknown.get((e.q, e.r), set())


def _brute_force_pg32():
    pts = lengths_points = [tuple(int(x) for x in p) for p in __import__("divsets.gfcode", fromlist=["x"]).all_points(4, 2)]
    masks = []
    for h in pts:
        masks.append(sum(1 << i for i, p in enumerate(pts) if sum(a * b for a, b in zip(p, h)) % 2 == 0))
    subsets = np.arange(1 << 15, dtype=np.int64)

    def popcount(x):
        c = np.zeros_like(x)
        for i in range(15):
            c += (x >> i) & 1
        return c

    size = popcount(subsets)
    ok = np.ones(len(subsets), dtype=bool)
    for m in masks:
        ok &= (size - popcount(subsets & m)) % 2 == 0
    return {int(s) for s in np.unique(size[ok])}


def test_pg32_brute_force_matches_profile():
    brute = _brute_force_pg32()
    assert brute == {0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15}
    assert lengths.dimension_profile(P(2, 1), 4) == brute


@pytest.mark.parametrize("qr", [(2, 1), (2, 2), (2, 3), (3, 1), (4, 1), (5, 1), (3, 2), (7, 1)])
def test_ledger_invariants(small_ledgers, qr):
    led = small_ledgers[qr]
    p = led.params
    assert not set(led.realizable) & set(led.excluded)
    for n in led.realizable:
        assert is_multiset_length(p, n)
        assert witness_cardinality(led[n].witness, p) == n
    top = p.r * p.q ** (p.r + 1)
    for n in range(top + 1):
        rep = n == 0 or criteria.representable(n, p) is not None
        assert (led.status(n) == REALIZABLE) == rep
