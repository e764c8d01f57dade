"""The five code families and their derived parameters.

The same parity-check shape serves all of them; the repair patterns decide
the digit base s_m, the block count s, and hence the sub-packetization
ell = s * s_m^n.
"""

from msrcodes.constructions import build

cases = [
    ("c1", 5, 2, [(1, 3), (1, 4)], "single failures, two repair degrees"),
    ("c2", 6, 2, [(1, 3), (1, 4), (1, 5), (2, 4)], "multi-failure, h | d-k"),
    ("c3", 6, 2, [(2, 4)], "one general (h,d) pair"),
    ("c3", 12, 6, [(2, 8)], "same, larger code"),
    ("c4", 6, 2, [(h, d) for h in range(1, 5) for d in range(2, 6 - h + 1)],
     "every valid (h,d) simultaneously"),
    ("hadamard", 8, 4, [(3, 5)], "binary-digit special case, ell = 2^n"),
]

for family, n, k, pats, what in cases:
    spec = build(family, n, k, pats)
    print(f"{family:8s} n={n} k={k}  {what}")
    print(f"         patterns={pats}")
    print(f"         s_m={spec.s_m} s={spec.s} ell={spec.ell} p={spec.field.p}")
    for info in spec.sorted_patterns:
        beta = info.h * spec.ell // (info.d - k + info.h)
        print(f"           (h={info.h}, d={info.d}): delta={info.delta} "
              f"s_i={info.s} width={info.width}  beta={beta}")
    print()
