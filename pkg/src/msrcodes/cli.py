"""Command-line interface.

Exit codes: 0 success, 1 validation error, 2 integrity/optimality failure.
Node indices are 1-based, matching the construction's numbering.  Randomized
commands take --seed (fallback: MSR_SEED env var, then 0) and echo the seed
they used.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import audit, repair, storage
from .constructions import (Family, build, encode, mds_reconstruct, random_data,
                            spec_from_manifest, LAMBDA_RULE)
from .errors import CorruptionError, MsrError, ParameterError, ScenarioError


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _ints(text: str) -> list:
    return [int(x) for x in text.split(",") if x != ""]


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("MSR_SEED", "0"))


def _parse_pattern_args(args) -> list:
    family = Family(args.family)
    if getattr(args, "patterns", None):
        return [tuple(int(x) for x in p.split(":")) for p in args.patterns.split(",")]
    if args.d is None:
        raise ParameterError("--d is required")
    ds = _ints(args.d)
    if args.h is None:
        if family is Family.C1:
            hs = [1] * len(ds)
        else:
            raise ParameterError(f"--h is required for family {family.value}")
    else:
        hs = _ints(args.h)
        if len(hs) == 1 and len(ds) > 1:
            hs = hs * len(ds)
    if len(hs) != len(ds):
        raise ParameterError("--h and --d lists differ in length")
    return list(zip(hs, ds))


def _build_spec(args, min_prime: int = 0):
    return build(args.family, args.n, args.k, _parse_pattern_args(args),
                 prime=getattr(args, "prime", None), min_prime=min_prime)


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload, indent=2) if args.json else text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_params(args) -> int:
    spec = _build_spec(args)
    bounds = []
    for h, d in spec.patterns:
        beta, gamma = audit.cut_set(h, d, spec.k, spec.ell)
        bounds.append({"h": h, "d": d, "beta": beta, "gamma": gamma})
    info = {
        "family": spec.family.value, "n": spec.n, "k": spec.k, "r": spec.r,
        "patterns": [list(p) for p in spec.patterns],
        "s_m": spec.s_m, "s": spec.s, "ell": spec.ell,
        "prime": spec.field.p, "lambda_rule": LAMBDA_RULE, "bounds": bounds,
    }
    lines = [f"family={spec.family.value} n={spec.n} k={spec.k} r={spec.r}",
             f"ell={spec.ell} (s={spec.s}, s_m={spec.s_m})",
             f"prime={spec.field.p} lambda_rule={LAMBDA_RULE}"]
    for b in bounds:
        lines.append(f"pattern (h={b['h']}, d={b['d']}): beta={b['beta']} gamma={b['gamma']}")
    _emit(args, info, "\n".join(lines))
    return 0


def cmd_encode(args) -> int:
    seed = _seed(args)
    payload = None
    if args.payload:
        payload = Path(args.payload).read_bytes()
    elif args.random_bytes:
        rng = np.random.default_rng(seed)
        payload = rng.integers(0, 256, size=args.random_bytes, dtype=np.uint8).tobytes()
    spec = _build_spec(args, min_prime=257 if payload is not None else 0)
    state = storage.ingest(payload, spec, args.cluster, seed=seed, blocks=args.blocks)
    info = {"cluster": str(args.cluster), "seed": seed, "blocks": state.blocks,
            "ell": spec.ell, "prime": spec.field.p,
            "digest": state.manifest["digest"], "padding": state.manifest["padding"]}
    _emit(args, info,
          f"ingested into {args.cluster}: blocks={state.blocks} ell={spec.ell} "
          f"p={spec.field.p} seed={seed}\ndigest={state.manifest['digest']}")
    return 0


def cmd_fail(args) -> int:
    state = storage.load_cluster(args.cluster)
    storage.fail_nodes(state, _ints(args.nodes))
    failed = state.failed_nodes()
    _emit(args, {"failed": failed}, f"failed nodes: {failed}")
    return 0


def cmd_repair(args) -> int:
    state = storage.load_cluster(args.cluster)
    pattern = (args.h, args.d)
    nodes = _ints(args.nodes)
    if not nodes:
        _emit(args, {"total": 0, "optimal": True}, "nothing to repair")
        return 0
    state, transcript = storage.run_repair(state, nodes,
                                           _ints(args.helpers), pattern)
    report = audit.verify_transcript(transcript, state.spec)
    out = {"transcript": transcript.to_json(), "bound_report": report.to_json()}
    if args.report:
        Path(args.report).write_text(json.dumps(out, indent=2))
    _emit(args, out,
          f"repaired {list(transcript.failed)} from {list(transcript.helpers)}: "
          f"total={transcript.total} bound={report.gamma} optimal={report.optimal} "
          f"uniform={report.uniform}")
    return 0 if report.conforming else 2


def cmd_verify_mds(args) -> int:
    seed = _seed(args)
    manifest = json.loads(Path(args.manifest).read_text())
    spec = spec_from_manifest(manifest)
    rng = np.random.default_rng(seed)
    subsets = list(itertools.combinations(range(1, spec.n + 1), spec.k))
    if len(subsets) > args.samples:
        idx = rng.choice(len(subsets), size=args.samples, replace=False)
        subsets = [subsets[i] for i in idx]
    failures = 0
    for nodes in subsets:
        cw = encode(spec, random_data(spec, rng))
        rec = mds_reconstruct(spec, nodes, cw.columns[[j - 1 for j in nodes]])
        if not np.array_equal(rec.columns, cw.columns):
            failures += 1
    ok = failures == 0
    _emit(args, {"subsets": len(subsets), "failures": failures, "seed": seed, "ok": ok},
          f"verified {len(subsets)} k-subsets, failures={failures}, seed={seed}")
    return 0 if ok else 2


def cmd_table(args) -> int:
    rows = audit.table1_report(args.n, args.k, args.h, args.d)
    if args.csv:
        Path(args.csv).write_text(audit.table1_csv(rows))
    if args.json:
        print(json.dumps(audit.table1_json(rows), indent=2))
    else:
        print(audit.table1_text(rows))
    return 0


def cmd_selftest(args) -> int:
    seed = _seed(args)
    rng = np.random.default_rng(seed)
    checks = []

    def check(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except Exception as exc:
            checks.append((name, False, str(exc)))

    def field_axioms():
        from .field import PrimeField
        f = PrimeField(17)
        x, y, z = (int(v) for v in rng.integers(0, 17, size=3))
        for _ in range(1000):
            x, y, z = (int(v) for v in rng.integers(0, 17, size=3))
            assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))

    def grs_oracle():
        from .field import PrimeField
        from .grs import GrsWord, erasure_decode
        f = PrimeField(5)
        pts = (1, 2, 3, 4)
        words = []
        for c in itertools.product(range(5), repeat=4):
            if all(sum(pow(x, t, 5) * v for x, v in zip(pts, c)) % 5 == 0 for t in range(2)):
                words.append(c)
        assert len(words) == 25
        for w in words:
            for erased in itertools.combinations(range(4), 2):
                vals = [None if i in erased else w[i] for i in range(4)]
                dec = erasure_decode(GrsWord(f, pts, vals, 2))
                assert tuple(dec.values) == w

    def c3_roundtrip():
        spec = build("c3", 6, 2, [(2, 4)])
        cw = encode(spec, random_data(spec, rng))
        pl = repair.plan(spec, [1, 2], [3, 4, 5, 6], (2, 4))
        restored, t = repair.repair_from_codeword(pl, cw.columns)
        assert t.total == 256
        assert all(np.array_equal(restored[j], cw.column(j)) for j in (1, 2))

    def c1_cross_degree():
        spec = build("c1", 5, 2, [(1, 3), (1, 4)])
        cw = encode(spec, random_data(spec, rng))
        for pat, helpers in (((1, 4), [2, 3, 4, 5]), ((1, 3), [2, 3, 4])):
            pl = repair.plan(spec, [1], helpers, pat)
            restored, _ = repair.repair_from_codeword(pl, cw.columns)
            assert np.array_equal(restored[1], cw.column(1))

    def hamming_partition():
        from .hamming import build_partition
        for w in (1, 2, 3):
            part = build_partition(w)
            seen = set()
            for i in range(part.N + 1):
                seen |= part.cosets[i]
            assert len(seen) == 1 << part.N

    def table_values():
        rows = {r.source: r.ell for r in audit.table1_report(12, 6, 2, 8)}
        assert rows["ye-barg"] == 12**12 and rows["ye2020"] == 4 * 3**12
        assert rows["thm3"] == 2 * 2**12

    check("field axioms", field_axioms)
    check("grs brute-force oracle", grs_oracle)
    check("c3 repair round-trip", c3_roundtrip)
    check("c1 multi-degree repair", c1_cross_degree)
    check("hamming coset partition", hamming_partition)
    check("table-1 values", table_values)

    ok = all(passed for _, passed, _ in checks)
    if args.json:
        print(json.dumps({"seed": seed, "checks": [
            {"name": n, "pass": p, "error": e} for n, p, e in checks]}, indent=2))
    else:
        for n, p, e in checks:
            print(f"[{'PASS' if p else 'FAIL'}] {n}{(': ' + e) if e else ''}")
        print(f"seed={seed}")
    return 0 if ok else 2


# ---------------------------------------------------------------------------

def _add_spec_flags(p: _Parser, need_family=True):
    if need_family:
        p.add_argument("--family", required=True,
                       choices=[f.value for f in Family])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=str, default=None,
                   help="comma list of h values (scalar for c3/hadamard)")
    p.add_argument("--d", type=str, default=None, help="comma list of d values")
    p.add_argument("--patterns", type=str, default=None,
                   help="explicit h:d pairs, e.g. 1:3,2:4")
    p.add_argument("--prime", type=int, default=None)


def make_parser() -> _Parser:
    p = _Parser(prog="msrcodes",
                description="Centralized MSR codes: build, encode, repair, audit.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="derive and print code parameters")
    _add_spec_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_params)

    sp = sub.add_parser("encode", help="ingest a payload into a cluster directory")
    _add_spec_flags(sp)
    sp.add_argument("--cluster", type=Path, required=True)
    sp.add_argument("--payload", type=Path, default=None)
    sp.add_argument("--random-bytes", type=int, default=None)
    sp.add_argument("--blocks", type=int, default=1,
                    help="synthetic-symbol block count when no payload is given")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_encode)

    sp = sub.add_parser("fail", help="erase node shards")
    sp.add_argument("--cluster", type=Path, required=True)
    sp.add_argument("--nodes", type=str, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_fail)

    sp = sub.add_parser("repair", help="centralized repair of failed nodes")
    sp.add_argument("--cluster", type=Path, required=True)
    sp.add_argument("--nodes", type=str, required=True)
    sp.add_argument("--helpers", type=str, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--report", type=Path, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_repair)

    sp = sub.add_parser("verify-mds", help="random k-subset reconstruction check")
    sp.add_argument("--manifest", type=Path, required=True)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify_mds)

    sp = sub.add_parser("table", help="sub-packetization comparison table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--csv", type=Path, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("selftest", help="built-in sanity checks")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    except (CorruptionError, ScenarioError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, MsrError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
