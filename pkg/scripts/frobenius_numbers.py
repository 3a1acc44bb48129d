"""Frobenius numbers for small parameters, with and without the external exclusion."""

from divsets.lengths import ClassifyOptions, classify, frobenius_number
from divsets.qbase import DivisibilityParams

CASES = [(2, 1), (2, 2), (2, 3), (3, 1), (4, 1), (5, 1), (3, 2), (2, 4)]

for q, r in CASES:
    row = []
    for ext in (False, True):
        res = frobenius_number(classify(DivisibilityParams(q, r), options=ClassifyOptions(use_external=ext)))
        row.append(str(res.value) if res.value is not None else f"undetermined ({len(res.open_values)} open)")
    print(f"F({q},{r}): plain {row[0]}, with external {row[1]}")
