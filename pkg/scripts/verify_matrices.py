"""Weight distributions of all packaged generator matrices."""

import time

from divsets import gfcode
from divsets.lengths import load_sporadic_db, matrix_path
from divsets.macwilliams import format_distribution

for ex in load_sporadic_db():
    if not ex.matrix_file:
        continue
    t = time.perf_counter()
    g = gfcode.parse_matrix(matrix_path(ex.matrix_file).read_text(), ex.q)
    s = gfcode.columns_to_pointset(g)
    w = gfcode.weight_distribution(g)
    e = gfcode.divisibility_exponent(w, ex.q)
    print(
        f"q={ex.q} n={g.n} k={gfcode.rank(g)} exponent={e} projective={s.projective} "
        f"full_length={s.full_length} ({time.perf_counter() - t:.2f}s)"
    )
    print("  " + format_distribution(w.support))
