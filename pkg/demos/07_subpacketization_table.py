"""Sub-packetization comparison across known constructions.

Exact big-integer evaluation of every construction's ell for a given
repair pattern; smaller is better.
"""

from msrcodes import audit

for n, k, h, d in [(12, 6, 2, 8), (8, 4, 3, 5), (14, 6, 4, 10)]:
    print(f"(n={n}, k={k}) repairing h={h} nodes from d={d} helpers:")
    rows = audit.table1_report(n, k, h, d)
    print(audit.table1_text(rows))
    applicable = [r for r in rows if r.applicable and "single" in r.scope]
    best = min(applicable, key=lambda r: r.ell)
    print(f"-> smallest single-pattern ell: {best.ell} ({best.source})\n")

print("CSV form of the first case:\n")
print(audit.table1_csv(audit.table1_report(12, 6, 2, 8)))
