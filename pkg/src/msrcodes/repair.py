"""Centralized repair engines for every code family.

All schemes reduce to the same shape.  A *group* is a small set of planes
whose parity checks, summed over a digit-shift orbit of the failed set,
assemble a [d+r, d] GRS word:

  slot (j, w), j in the group's member set P    one unknown symbol of node j
  slot j, j outside P                           the sum of node j's symbols
                                                over the group's aggregation
                                                coordinates

Helpers transmit their sum slot (one field element per group); the word then
has exactly r erasures (the member symbols, the sums of the other failed
nodes, and the sums of idle nodes) and is solved by Vandermonde elimination.
Families with more than one member set (C3, C4, Hadamard) run a second,
download-free step: each remaining coordinate of a failed node equals its
recovered group sum minus symbols already known from step 1.

Group ordering is deterministic: families in partition order, groups by
(block, a) within a family, so helper payloads need no per-symbol labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import audit
from .constructions import CodeSpec, Family, PatternInfo
from .errors import ParameterError
from .grs import solve_vandermonde, syndrome_rhs
from .hamming import build_partition
from .mixedradix import Coordinate


@dataclass
class GroupFamily:
    """All groups sharing one member set P and one slot layout."""

    index: int                # 1-based partition index i
    members: tuple            # P_i, ascending node ids
    width: int                # symbols recovered per member per group
    agg_tau: np.ndarray       # (G, width) packed aggregation coordinates
    points: np.ndarray        # (G, L) evaluation points per slot
    others: tuple             # nodes outside P, ascending
    known_slots: np.ndarray   # slot indices of the d helper sums
    erased_slots: np.ndarray  # slot indices of the r erasures (ascending)
    member_ranks: dict        # (node, w) -> column of the solve output
    failed_sum_ranks: dict    # failed node outside P -> column of the solve output
    meta: dict = dc_field(default_factory=dict)

    @property
    def group_count(self) -> int:
        return self.agg_tau.shape[0]

    @property
    def word_length(self) -> int:
        return self.points.shape[1]

    def agg_coords(self, g: int, coords) -> list:
        return [Coordinate(*coords.unpack(int(t))) for t in self.agg_tau[g]]

    def unknown_symbol_slots(self, g: int, coords) -> list:
        cs = self.agg_coords(g, coords)
        return [(j, cs[w]) for j in self.members for w in range(self.width)]


@dataclass
class RepairPlan:
    spec: CodeSpec
    pattern: tuple            # (h, d)
    failed: tuple             # H, ascending
    helpers: tuple            # R, ascending
    partition: tuple          # P_1..P_{h/delta}
    families: List[GroupFamily]
    per_helper: int
    beta: int
    gamma: int
    extras: dict = dc_field(default_factory=dict)

    @property
    def group_count(self) -> int:
        return sum(f.group_count for f in self.families)

    def family_slices(self) -> list:
        """(family, start, stop) offsets into the flat payload ordering."""
        out, off = [], 0
        for fam in self.families:
            out.append((fam, off, off + fam.group_count))
            off += fam.group_count
        return out

    def step1_taus(self, node: int) -> np.ndarray:
        """Packed coordinates of node recovered by its own family's solves."""
        for fam in self.families:
            if node in fam.members:
                return fam.agg_tau.ravel()
        raise ParameterError(f"node {node} is not failed")

    def step2_schedule(self, node: int):
        """(target tau, source family index, group, subtraction taus) per entry."""
        out = []
        for fam in self.families:
            if node in fam.members or node not in self.failed:
                continue
            for g in range(fam.group_count):
                out.append((int(fam.agg_tau[g, -1]), fam.index, g,
                            [int(t) for t in fam.agg_tau[g, :-1]]))
        return out


@dataclass
class HelperPayload:
    helper: int
    values: np.ndarray  # one aggregated element per group, plan order


@dataclass
class RepairTranscript:
    pattern: tuple
    failed: tuple
    helpers: tuple
    ell: int                  # per-node symbol count the bounds refer to
    per_helper: Dict[int, int]
    total: int
    beta: int
    gamma: int
    optimal: bool
    uniform: bool
    group_families: list      # dicts: family, members, count, width, erasures_per_group
    downloads: Optional[dict] = None  # helper -> value array (plan order)

    def to_json(self) -> dict:
        return {
            "pattern": list(self.pattern),
            "failed": list(self.failed),
            "helpers": list(self.helpers),
            "ell": self.ell,
            "per_helper": {str(j): c for j, c in self.per_helper.items()},
            "total": self.total,
            "bound_beta": self.beta,
            "bound_gamma": self.gamma,
            "optimal": self.optimal,
            "uniform": self.uniform,
            "groups": self.group_families,
        }


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------

def _shift(spec: CodeSpec, a: np.ndarray, positions: Sequence[int], v: int) -> np.ndarray:
    """Add v (mod s_m) to the digits of a at the given 1-based positions."""
    s_m = spec.s_m
    out = a
    for pos in positions:
        w = s_m ** (pos - 1)
        dig = (out // w) % s_m
        out = out + (((dig + v) % s_m) - dig) * w
    return out


def _make_family(spec: CodeSpec, index: int, members: tuple, failed: tuple,
                 helpers: tuple, agg_tau: np.ndarray, meta: dict) -> GroupFamily:
    n, r, d = spec.n, spec.r, len(helpers)
    A = spec.s_m**spec.n
    lam = spec.lam_array()
    G, W = agg_tau.shape
    others = tuple(j for j in range(1, n + 1) if j not in members)
    L = len(members) * W + len(others)
    if len(members) * W + n - len(members) - d != r:
        raise ParameterError("group shape incompatible with pattern (internal)")

    points = np.empty((G, L), dtype=np.int64)
    agg_a = agg_tau % A
    for mi, j in enumerate(members):
        w_pow = spec.s_m ** (j - 1)
        for w in range(W):
            dig = (agg_a[:, w] // w_pow) % spec.s_m
            points[:, mi * W + w] = lam[j - 1, dig]
    base_a = agg_a[:, 0]
    for oi, j in enumerate(others):
        dig = (base_a // spec.s_m ** (j - 1)) % spec.s_m
        points[:, len(members) * W + oi] = lam[j - 1, dig]
    # d + r distinct points per group (spec structural invariant)
    srt = np.sort(points, axis=1)
    if np.any(srt[:, 1:] == srt[:, :-1]):
        raise ParameterError("repeated evaluation point in a repair group (internal)")

    helper_set = set(helpers)
    known = [len(members) * W + oi for oi, j in enumerate(others) if j in helper_set]
    erased = [s for s in range(L) if s not in set(known)]
    member_ranks, failed_sum_ranks = {}, {}
    for rank, slot in enumerate(erased):
        if slot < len(members) * W:
            member_ranks[(members[slot // W], slot % W)] = rank
        else:
            j = others[slot - len(members) * W]
            if j in failed:
                failed_sum_ranks[j] = rank
    return GroupFamily(index=index, members=members, width=W, agg_tau=agg_tau,
                       points=points, others=others,
                       known_slots=np.array(known, dtype=np.int64),
                       erased_slots=np.array(erased, dtype=np.int64),
                       member_ranks=member_ranks,
                       failed_sum_ranks=failed_sum_ranks, meta=meta)


def _pinned_families(spec, H, R, info: PatternInfo):
    """Largest-s pattern of C1/C2: orbit representatives pin min(H)'s digit to 0."""
    A, s_m, s = spec.s_m**spec.n, spec.s_m, spec.s
    a_all = np.arange(A, dtype=np.int64)
    e0 = min(H)
    reps = a_all[(a_all // s_m ** (e0 - 1)) % s_m == 0]
    G0 = reps.shape[0]
    shifted = np.stack([_shift(spec, reps, H, v) for v in range(s_m)], axis=1)  # (G0, s_m)
    agg = np.empty((s * G0, s_m), dtype=np.int64)
    for b in range(s):
        agg[b * G0:(b + 1) * G0] = b * A + shifted
    fam = _make_family(spec, 1, tuple(H), tuple(H), R, agg,
                       {"scheme": "pinned", "pinned_node": e0})
    return [fam], {"scheme": "pinned"}


def _mu_families(spec, H, R, info: PatternInfo):
    """Non-largest pattern of C1/C2: digit shifts ride along b inside s_i-blocks."""
    A, s_m = spec.s_m**spec.n, spec.s_m
    si = info.s
    u = spec.s // si
    a_all = np.arange(A, dtype=np.int64)
    shifted = np.stack([_shift(spec, a_all, H, v) for v in range(si)], axis=1)  # (A, si)
    agg = np.empty((u * A, si), dtype=np.int64)
    for mu in range(u):
        for v in range(si):
            agg[mu * A:(mu + 1) * A, v] = (mu * si + v) * A + shifted[:, v]
    fam = _make_family(spec, 1, tuple(H), tuple(H), R, agg, {"scheme": "mu", "u": u})
    return [fam], {"scheme": "mu", "u": u}


def _block_families(spec, H, R, info: PatternInfo, partition):
    """C3/C4: per group set P_i, s_i-1 aligned planes plus one offset plane.

    Within each b-block of width (d-k+h)/delta the local plane set for P_i is
    Omega_i = {0..s_i-2, s_i-2+i}; digit shifts are cyclic mod s_m.
    """
    A = spec.s_m**spec.n
    si, wi = info.s, info.width
    u = spec.s // wi
    a_all = np.arange(A, dtype=np.int64)
    fams = []
    omega = {}
    for gi, P in enumerate(partition, start=1):
        locals_b = list(range(si - 1)) + [si - 2 + gi]
        omega[gi] = tuple(locals_b)
        shifted = np.stack([_shift(spec, a_all, P, v) for v in range(si)], axis=1)
        agg = np.empty((u * A, si), dtype=np.int64)
        for mu in range(u):
            base = mu * wi
            for v in range(si):
                agg[mu * A:(mu + 1) * A, v] = (base + locals_b[v]) * A + shifted[:, v]
        fams.append(_make_family(spec, gi, P, tuple(H), R, agg,
                                 {"omega": tuple(locals_b), "blocks": u}))
    blocks = [(mu * wi, (mu + 1) * wi - 1) for mu in range(u)]
    return fams, {"omega": omega, "blocks": blocks, "u": u}


def _hadamard_families(spec, H, R, partition):
    """Hadamard scheme: groups are plane pairs indexed by the Hamming coset V_0.

    M holds one representative position per P_i (its maximum); a group pairs a
    plane whose a|_M lies in V_0 with its all-bits-of-P_i flip, which lies in
    V_i.
    """
    A = spec.s_m**spec.n  # = 2^n, s = 1
    part = build_partition(spec.had_w)
    M = tuple(max(P) for P in partition)
    a_all = np.arange(A, dtype=np.int64)
    y = np.zeros(A, dtype=np.int64)
    for gi, pos in enumerate(M):
        y |= ((a_all >> (pos - 1)) & 1) << gi
    v0_mask = part.class_table()[y] == 0
    base = a_all[v0_mask]
    fams = []
    for gi, P in enumerate(partition, start=1):
        agg = np.stack([base, _shift(spec, base, P, 1)], axis=1)
        fams.append(_make_family(spec, gi, P, tuple(H), R, agg, {"coset": gi}))
    return fams, {"M": M, "w": spec.had_w, "N": spec.had_N, "partition": part}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def plan(spec: CodeSpec, failed: Sequence[int], helpers: Sequence[int],
         pattern: Tuple[int, int]) -> RepairPlan:
    """Build the full repair description for failed set H and helper set R."""
    h, d = int(pattern[0]), int(pattern[1])
    H = tuple(sorted(int(j) for j in failed))
    R = tuple(sorted(int(j) for j in helpers))
    if len(set(H)) != len(H) or len(set(R)) != len(R):
        raise ParameterError("duplicate node index")
    if any(not 1 <= j <= spec.n for j in H + R):
        raise ParameterError("node index out of range")
    if set(H) & set(R):
        raise ParameterError("failed and helper sets overlap")
    if len(H) != h:
        raise ParameterError(f"pattern expects h={h} failed nodes, got {len(H)}")
    if len(R) != d:
        raise ParameterError(f"pattern expects d={d} helpers, got {len(R)}")
    idx, info = spec.pattern_info(h, d)

    if spec.family in (Family.C1, Family.C2):
        partition = (H,)
        if idx == len(spec.sorted_patterns) - 1:
            fams, extras = _pinned_families(spec, H, R, info)
        else:
            fams, extras = _mu_families(spec, H, R, info)
    elif spec.family in (Family.C3, Family.C4):
        if h % info.delta:
            raise ParameterError("failed set not partitionable (internal)")
        partition = tuple(H[i:i + info.delta] for i in range(0, h, info.delta))
        fams, extras = _block_families(spec, H, R, info, partition)
    else:
        partition = tuple(H[i:i + info.delta] for i in range(0, h, info.delta))
        fams, extras = _hadamard_families(spec, H, R, partition)

    per_helper = sum(f.group_count for f in fams)
    beta, gamma = audit.cut_set(h, d, spec.k, spec.ell)
    if per_helper != beta:
        raise ParameterError(
            f"plan downloads {per_helper} per helper, cut-set bound is {beta} (internal)")
    return RepairPlan(spec=spec, pattern=(h, d), failed=H, helpers=R,
                      partition=partition, families=fams,
                      per_helper=per_helper, beta=beta, gamma=gamma, extras=extras)


def helper_aggregate(plan_: RepairPlan, helper: int, column: np.ndarray) -> HelperPayload:
    """One aggregated element per group: the sum of the helper's own column
    over the group's aggregation coordinates."""
    if helper not in plan_.helpers:
        raise ParameterError(f"node {helper} is not in the helper set")
    col = np.asarray(column, dtype=np.int64) % plan_.spec.field.p
    if col.shape[-1] != plan_.spec.ell:
        raise ParameterError(f"column length {col.shape[-1]} != ell={plan_.spec.ell}")
    parts = [col[..., fam.agg_tau].sum(axis=-1) % plan_.spec.field.p
             for fam in plan_.families]
    return HelperPayload(helper, np.concatenate(parts, axis=-1))


def _payload_matrix(plan_: RepairPlan, payloads) -> np.ndarray:
    """Stack payloads as (d, B, per_helper) in helper order."""
    by_node = {}
    for pl in payloads:
        node, values = (pl.helper, pl.values) if isinstance(pl, HelperPayload) else pl
        by_node[int(node)] = np.asarray(values, dtype=np.int64)
    if set(by_node) != set(plan_.helpers):
        raise ParameterError("payloads do not match the helper set")
    rows = []
    for j in plan_.helpers:
        v = by_node[j]
        if v.ndim == 1:
            v = v[None]
        if v.shape[-1] != plan_.per_helper:
            raise ParameterError(
                f"helper {j} payload has {v.shape[-1]} values, expected {plan_.per_helper}")
        rows.append(v % plan_.spec.field.p)
    return np.stack(rows)


def repair_columns(plan_: RepairPlan, payload_matrix: np.ndarray) -> np.ndarray:
    """Solve all groups and run the subtraction step; returns (h, B, ell)."""
    spec = plan_.spec
    p = spec.field.p
    B = payload_matrix.shape[1]
    restored = np.zeros((len(plan_.failed), B, spec.ell), dtype=np.int64)
    node_row = {j: i for i, j in enumerate(plan_.failed)}

    sums = {}
    for fam, start, stop in plan_.family_slices():
        vals = payload_matrix[:, :, start:stop].transpose(2, 0, 1)  # (G, d, B)
        known_pts = fam.points[:, fam.known_slots]
        rhs = syndrome_rhs(spec.field, known_pts, vals, spec.r)     # (G, r, B)
        x = solve_vandermonde(spec.field, fam.points[:, fam.erased_slots], rhs)
        for (node, w), rank in fam.member_ranks.items():
            restored[node_row[node]][:, fam.agg_tau[:, w]] = x[:, rank, :].T
        for node, rank in fam.failed_sum_ranks.items():
            sums[(fam.index, node)] = x[:, rank, :]                 # (G, B)

    # step 2: no download; peel the recovered sums with already-known symbols
    for fam in plan_.families:
        for node in fam.failed_sum_ranks:
            row = restored[node_row[node]]
            acc = sums[(fam.index, node)].T                          # (B, G)
            if fam.width > 1:
                acc = (acc - row[:, fam.agg_tau[:, :-1]].sum(axis=-1)) % p
            row[:, fam.agg_tau[:, -1]] = acc % p
    return restored


def build_transcript(plan_: RepairPlan, blocks: int = 1,
                     downloads: Optional[dict] = None) -> RepairTranscript:
    """Transcript for a repair of `blocks` stacked codewords under this plan."""
    total = plan_.per_helper * len(plan_.helpers) * blocks
    return RepairTranscript(
        pattern=plan_.pattern, failed=plan_.failed, helpers=plan_.helpers,
        ell=plan_.spec.ell * blocks,
        per_helper={j: plan_.per_helper * blocks for j in plan_.helpers},
        total=total, beta=plan_.beta * blocks, gamma=plan_.gamma * blocks,
        optimal=total == plan_.gamma * blocks, uniform=True,
        group_families=[{"family": f.index, "members": list(f.members),
                         "count": f.group_count, "width": f.width,
                         "erasures_per_group": plan_.spec.r}
                        for f in plan_.families],
        downloads=downloads,
    )


def center_repair(plan_: RepairPlan, payloads, record_downloads: bool = True):
    """Restore the failed columns from helper payloads.

    payloads: HelperPayload per helper (values of shape (per_helper,) or
    (B, per_helper) for B stacked codewords).  Returns ({node: column},
    RepairTranscript); columns are (ell,) when payloads were 1-D.
    """
    matrix = _payload_matrix(plan_, payloads)
    squeeze = matrix.shape[1] == 1 and all(
        (pl.values if isinstance(pl, HelperPayload) else pl[1]).ndim == 1
        for pl in payloads)
    restored = repair_columns(plan_, matrix)
    B = matrix.shape[1]
    out = {}
    for i, node in enumerate(plan_.failed):
        out[node] = restored[i, 0] if squeeze else restored[i]
    downloads = None
    if record_downloads:
        downloads = {j: matrix[i, 0] if squeeze else matrix[i]
                     for i, j in enumerate(plan_.helpers)}
    return out, build_transcript(plan_, blocks=B, downloads=downloads)


def repair_from_codeword(plan_: RepairPlan, columns: np.ndarray):
    """Convenience: aggregate helper columns from a full (n, ell) array and repair."""
    payloads = [helper_aggregate(plan_, j, columns[j - 1]) for j in plan_.helpers]
    return center_repair(plan_, payloads)
