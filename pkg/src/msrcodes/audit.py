"""Repair-bandwidth auditing: cut-set bounds, transcript checks, and the
sub-packetization comparison table.

All arithmetic is exact Python-int arithmetic; the table values overflow
64 bits almost immediately (lcm(1..6)^12 has 22 digits).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import ParameterError


def cut_set(h: int, d: int, k: int, ell: int) -> Tuple[int, int]:
    """Exact per-helper and total download floors (beta, gamma) for repairing
    h nodes from d helpers: beta = h*ell/(d-k+h), gamma = d*beta.

    Raises if the bound is not an integer (the pattern is then unsupported by
    an ell-symbol code claiming optimal repair).
    """
    if h < 1 or k < 1 or d < k or ell < 1:
        raise ParameterError(f"invalid bound parameters (h={h}, d={d}, k={k}, ell={ell})")
    num = h * ell
    den = d - k + h
    if num % den:
        raise ParameterError(f"cut-set bound h*ell/(d-k+h) = {num}/{den} is not an integer")
    beta = num // den
    return beta, d * beta


@dataclass
class BoundReport:
    pattern: tuple
    ell: int
    beta: int
    gamma: int
    per_helper: Dict[int, int]
    total: int
    uniform: bool   # every helper contributed exactly beta
    optimal: bool   # total equals gamma
    conforming: bool  # uniform and optimal

    def to_json(self) -> dict:
        return {
            "pattern": list(self.pattern),
            "ell": self.ell,
            "bound_beta": self.beta,
            "bound_gamma": self.gamma,
            "per_helper": {str(j): c for j, c in self.per_helper.items()},
            "total": self.total,
            "uniform": self.uniform,
            "optimal": self.optimal,
            "conforming": self.conforming,
        }


def verify_transcript(transcript, spec, pattern: Optional[tuple] = None) -> BoundReport:
    """Check a repair transcript against the cut-set bound.

    Accepts a RepairTranscript or its JSON dict.  The pattern and per-node
    symbol count default to the transcript's own; spec, when given, pins k.
    """
    if isinstance(transcript, dict):
        pat = tuple(transcript["pattern"])
        per_helper = {int(j): int(c) for j, c in transcript["per_helper"].items()}
        total = int(transcript["total"])
        ell = int(transcript["ell"])
        helpers = [int(j) for j in transcript["helpers"]]
    else:
        pat = tuple(transcript.pattern)
        per_helper = dict(transcript.per_helper)
        total = transcript.total
        ell = transcript.ell
        helpers = list(transcript.helpers)
    if pattern is not None and tuple(pattern) != pat:
        raise ParameterError(f"transcript pattern {pat} != requested {tuple(pattern)}")
    h, d = pat
    if len(helpers) != d or set(per_helper) != set(helpers):
        raise ParameterError("malformed transcript: helper set inconsistent")
    if sum(per_helper.values()) != total:
        raise ParameterError("malformed transcript: per-helper counts do not sum to total")
    beta, gamma = cut_set(h, d, spec.k, ell)
    uniform = all(c == beta for c in per_helper.values())
    optimal = total == gamma
    return BoundReport(pattern=pat, ell=ell, beta=beta, gamma=gamma,
                       per_helper=per_helper, total=total, uniform=uniform,
                       optimal=optimal, conforming=uniform and optimal)


# ---------------------------------------------------------------------------
# sub-packetization comparison (Table 1)
# ---------------------------------------------------------------------------

@dataclass
class TableRow:
    source: str      # construction identifier
    scope: str       # which repair patterns the construction covers
    applicable: bool
    ell: Optional[int]
    note: str = ""


def _pow2_divides(x: int, n: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0 and x <= 2**n


def table1_report(n: int, k: int, h: int, d: int) -> List[TableRow]:
    """Every known construction's exact sub-packetization for pattern (h, d).

    Rows whose constraints the pattern does not meet are returned with
    applicable=False and no value.
    """
    if not (2 <= h <= n - k):
        raise ParameterError(f"need 2 <= h <= n-k, got h={h} (n={n}, k={k})")
    if not (k <= d <= n - h):
        raise ParameterError(f"need k <= d <= n-h, got d={d} (n={n}, h={h})")
    r = n - k
    rows: List[TableRow] = []

    rows.append(TableRow("ye-barg", "single (h,d)", True,
                         math.lcm(*range(d - k + 1, d - k + h + 1)) ** n))
    rows.append(TableRow("ye2020", "single (h,d)", True,
                         (d - k + h) * (d - k + 1) ** n))
    li_ok = (d - k) % h == 0
    rows.append(TableRow("li", "single (h,d), h | (d-k)", li_ok,
                         ((d - k + h) // h) ** n if li_ok else None,
                         "" if li_ok else "requires h | (d-k)"))
    delta = math.gcd(h, d - k) if d > k else h
    rows.append(TableRow("thm3", "single (h,d)", True,
                         ((d - k + h) // delta) * ((d - k + delta) // delta) ** n,
                         f"delta={delta}"))
    t4_ok = d > k and h % (d - k) == 0 and _pow2_divides(h // (d - k) + 1, n)
    rows.append(TableRow("thm4", "single (h,d), (d-k) | h, h/(d-k)+1 | 2^n", t4_ok,
                         2 ** n if t4_ok else None,
                         "" if t4_ok else "divisibility/power-of-two constraint unmet"))
    rows.append(TableRow("ye-barg-all", "all (h,d)", True, math.lcm(*range(1, r + 1)) ** n))
    rows.append(TableRow("cor1", "all (h,d) with h | (d-k)", li_ok,
                         math.lcm(*range(1, r + 1)) * r ** n if li_ok else None,
                         "" if li_ok else "pattern outside the covered set"))
    rows.append(TableRow("cor2", "all (h,d)", True, math.lcm(*range(1, r + 1)) * r ** n))
    return rows


def table1_csv(rows: List[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["source", "scope", "applicable", "ell", "note"])
    for row in rows:
        w.writerow([row.source, row.scope, row.applicable,
                    "" if row.ell is None else row.ell, row.note])
    return buf.getvalue()


def table1_text(rows: List[TableRow]) -> str:
    headers = ("source", "applicable", "ell", "scope")
    cells = [(r.source, "yes" if r.applicable else "no",
              "-" if r.ell is None else str(r.ell), r.scope) for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    for c in cells:
        lines.append("  ".join(c[i].ljust(widths[i]) for i in range(len(headers))))
    return "\n".join(lines)


def table1_json(rows: List[TableRow]) -> list:
    return [{"source": r.source, "scope": r.scope, "applicable": r.applicable,
             "ell": r.ell, "note": r.note} for r in rows]
