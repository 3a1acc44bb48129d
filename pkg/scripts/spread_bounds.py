"""Divisibility upper bounds for partial t-spreads next to the Drake-Freeman bound."""

from divsets.lengths import drake_freeman_bound, partial_spread_bound

for q, t, vs in [(2, 4, range(8, 20)), (2, 3, range(6, 16)), (3, 3, range(6, 13))]:
    for v in vs:
        try:
            df = drake_freeman_bound(q, v, t)
        except ValueError:
            df = None
        print(f"A_{q}({v},{2 * t};{t}) <= {partial_spread_bound(q, v, t)}  (Drake-Freeman {df})")
