"""Exact linear algebra over F_p: the layer everything else stands on.

Row reduction, kernels and subquotient representatives are all deterministic:
leftmost pivot, topmost row, representatives greedily chosen from the input.
"""

import numpy as np

from gradss.linfp import FpMatrix, kernel_basis, rank, rref, subquotient_basis

p = 5
m = FpMatrix.from_rows(p, [[2, 4, 1], [1, 2, 3], [0, 0, 2]])
red, pivots = rref(m)
print("matrix over F_5:")
print(m.entries)
print("reduced row-echelon form (pivots", pivots, "):")
print(red.entries)
print("rank:", rank(m), " kernel:", [v.tolist() for v in kernel_basis(m)])

print()
print("a subquotient: cycles e1, e2 modulo the boundary e1 + e2")
e = np.eye(3, dtype=np.int64)
reps = subquotient_basis(3, [e[0], e[1]], [(e[0] + e[1]) % p], p)
print("representatives:", [v.tolist() for v in reps])
print("one class survives, as the dimension count 2 - 1 says it must")
