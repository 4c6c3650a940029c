"""bchlab command line: cosets | bch | weights | repro-all.

Exit codes: 0 when every closed form agrees with its oracle, 2 on a
mismatch, 1 on usage or parameter errors.  Reports go to stdout as short
text; ``--json PATH`` (or ``--json -`` for stdout) writes the full report.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bch import (BchDescriptor, bch_bound_check, build_bch, dim_closed, even_range_max, min_distance_bruteforce,
                  odd_range_max)
from .cosets import (ORACLE_CAP, CosetSpace, bruteforce_leader_scan, largest_leader_qm1,
                     largest_leaders_half, leader_records, smallest_nonleader_even_m, smallest_nonleader_scan,
                     top_leaders)
from .errors import BchLabError
from .report import RunManifest, dumps, parse_max_field, write_csv, write_json

MATCH, MISMATCH = "MATCH", "MISMATCH"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _globals() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--q", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--lambda", dest="lam", type=int, default=None)
    g.add_argument("--delta", type=int)
    g.add_argument("--b", type=int, default=1)
    g.add_argument("--hat", action="store_true", help="even-like subcode (adds 0 to the defining set)")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--json", metavar="PATH", help="write the full JSON report ('-' for stdout)")
    g.add_argument("--csv", metavar="PATH", help="write the main table as CSV")
    g.add_argument("--max-field", metavar="P^K", help="largest q^m to touch, e.g. 3^4")
    g.add_argument("--timing", action="store_true", help="record wall time in the manifest")
    return g


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="bchlab", description="BCH codes of length (q^m-1)/lambda: cosets, dimensions, weights.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    g = _globals()

    c = sub.add_parser("cosets", parents=[g], help="coset leaders and their closed forms")
    c.add_argument("--largest", type=int, metavar="K", help="the K largest leaders")
    c.add_argument("--smallest-nonleader", action="store_true")
    c.add_argument("--members", action="store_true", help="list coset members in the JSON report")

    b = sub.add_parser("bch", parents=[g], help="one BCH code: dimension and distance")
    b.add_argument("--dim-closed", action="store_true", help="show the closed-form branch taken")
    b.add_argument("--min-distance", action="store_true", help="exhaustive minimum distance")

    w = sub.add_parser("weights", parents=[g], help="weight distributions of the trace families")
    w.add_argument("--family", required=True)
    mode = w.add_mutually_exclusive_group()
    mode.add_argument("--table", action="store_const", dest="mode", const="table")
    mode.add_argument("--enumerate", action="store_const", dest="mode", const="enumerate")
    mode.add_argument("--verify", action="store_const", dest="mode", const="verify")

    r = sub.add_parser("repro-all", parents=[g], help="run the whole reproduction grid")
    r.add_argument("--claims", type=int, nargs="+", metavar="K")
    return top


def _threads(args) -> int:
    env = os.environ.get("BCHLAB_THREADS")
    return max(1, int(env)) if env else max(1, args.threads)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + ("lambda" if n == "lam" else n) for n in missing)
        raise _Usage(f"missing {flags}")


class _Usage(Exception):
    pass


def _check_budget(args):
    cap = parse_max_field(args.max_field)
    if cap is not None and args.q is not None and args.m is not None and args.q**args.m > cap:
        raise _Usage(f"q^m = {args.q ** args.m} is over --max-field {args.max_field}")


def _emit(args, report: dict, lines: list[str], csv_table=None):
    if args.json == "-":
        sys.stdout.write(dumps(report))
    else:
        for line in lines:
            print(line)
        if args.json:
            write_json(args.json, report)
    if args.csv and csv_table is not None:
        write_csv(args.csv, *csv_table)


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

def cmd_cosets(args) -> int:
    _need(args, "q", "m")
    lam = args.lam or 1
    space = CosetSpace(args.q, args.m, lam)
    man = RunManifest("cosets", {"q": args.q, "m": args.m, "lambda": lam, "largest": args.largest,
                                 "smallest_nonleader": args.smallest_nonleader or None}, timing=args.timing)
    report: dict = {"n": space.n}
    lines = [f"n = {space.n}"]
    oracle_ok = space.n <= ORACLE_CAP
    status = 0
    scan = bruteforce_leader_scan(space, threads=_threads(args)) if oracle_ok else None

    if args.largest:
        k = args.largest
        closed = None
        if lam == 2 and args.q % 2 == 1:
            ll = largest_leaders_half(args.q, args.m, k)
            closed = {"deltas": list(ll.deltas), "sizes": list(ll.sizes)}
        elif lam == args.q - 1 and k == 1:
            d, size, case = largest_leader_qm1(args.q, args.m)
            closed = {"deltas": [d], "sizes": [size], "case": case}
        item = {"closed_form": closed}
        if scan is not None:
            seen = top_leaders(scan, k)
            item["oracle"] = {"deltas": seen, "sizes": [int(scan.size[i]) for i in seen]}
        if closed is not None and scan is not None:
            agree = closed["deltas"] == item["oracle"]["deltas"] and closed["sizes"] == item["oracle"]["sizes"]
            item["verdict"] = MATCH if agree else MISMATCH
            status = max(status, 0 if agree else 2)
        else:
            item["verdict"] = "CLOSED_ONLY" if closed is not None else "ORACLE_ONLY"
        man.verdict("largest", item["verdict"])
        report["largest"] = item
        shown = (closed or item.get("oracle"))["deltas"]
        names = ", ".join(f"delta{j + 1}={d}" for j, d in enumerate(shown))
        lines.append(f"largest leaders: {names}  [{item['verdict']}]")

    if args.smallest_nonleader:
        item = {}
        try:
            item["closed_form"] = smallest_nonleader_even_m(space)
        except BchLabError as exc:
            item["closed_form"] = None
            item["closed_form_note"] = str(exc)
        if oracle_ok:
            item["oracle"] = smallest_nonleader_scan(space)
        if item["closed_form"] is not None and oracle_ok:
            agree = item["closed_form"] == item["oracle"]
            item["verdict"] = MATCH if agree else MISMATCH
            status = max(status, 0 if agree else 2)
        else:
            item["verdict"] = "CLOSED_ONLY" if item["closed_form"] is not None else "ORACLE_ONLY"
        man.verdict("smallest_nonleader", item["verdict"])
        report["smallest_nonleader"] = item
        val = item["closed_form"] if item["closed_form"] is not None else item.get("oracle")
        lines.append(f"smallest non-leader: {val}  [{item['verdict']}]")

    csv_table = None
    if not args.largest and not args.smallest_nonleader:
        if scan is None:
            raise _Usage(f"n = {space.n} is over the scan cap; ask for --largest or --smallest-nonleader")
        recs = leader_records(space, with_members=args.members)
        report["leaders"] = [r.to_json(args.members) for r in recs]
        report["coset_count"] = len(recs)
        lines.append(f"{len(recs)} cosets; leaders: " + " ".join(str(r.leader) for r in recs[:40])
                     + (" ..." if len(recs) > 40 else ""))
        csv_table = (["leader", "size"], [[r.leader, r.size] for r in recs])
    report["manifest"] = man.to_json()
    _emit(args, report, lines, csv_table)
    return status


# ---------------------------------------------------------------------------
# bch
# ---------------------------------------------------------------------------

def cmd_bch(args) -> int:
    _need(args, "q", "m", "delta")
    lam = args.lam or 1
    desc = BchDescriptor(args.q, args.m, lam, args.delta, b=args.b, hat=args.hat)
    code = build_bch(desc)
    man = RunManifest("bch", {"q": args.q, "m": args.m, "lambda": lam, "delta": args.delta, "b": args.b,
                              "hat": args.hat, "min_distance": args.min_distance or None}, timing=args.timing)
    man.use_field(args.q, args.m)
    report = {"code": code.to_json()}
    status = 0
    lines = [f"n={code.n} k={code.dimension}"]

    closed = {"value": None}
    top = odd_range_max(args.q, args.m, lam) if args.m % 2 else even_range_max(args.q, args.m, lam)
    if args.b == 1 and args.delta <= top:
        trace: list = []
        try:
            k = dim_closed(args.q, args.m, lam, args.delta, trace) - (1 if args.hat else 0)
            closed = {"value": k, "branch": trace[0] if trace else "odd m"}
        except BchLabError as exc:
            closed = {"value": None, "note": str(exc)}
    else:
        closed["note"] = "outside the closed-form range"
    if closed["value"] is not None:
        agree = closed["value"] == code.dimension
        closed["verdict"] = MATCH if agree else MISMATCH
        status = 0 if agree else 2
        msg = f"closed-form dimension {closed['value']} [{closed['verdict']}]"
        if args.dim_closed:
            msg += f" branch {closed['branch']}"
        lines.append(msg)
        man.verdict("dimension", closed["verdict"])
    elif args.dim_closed:
        lines.append(f"closed-form dimension unavailable: {closed.get('note')}")
    report["dimension_closed_form"] = closed

    if args.min_distance:
        d = min_distance_bruteforce(code, threads=_threads(args))
        ok = bch_bound_check(code, d)
        report["min_distance"] = {"oracle": d, "bch_bound_holds": ok}
        lines.append(f"d={d} (BCH bound {'holds' if ok else 'VIOLATED'})")
        man.verdict("bch_bound", MATCH if ok else MISMATCH)
        if not ok:
            status = 2
    report["manifest"] = man.to_json()
    csv_table = (["n", "k", "delta", "closed_k"], [[code.n, code.dimension, args.delta, closed["value"]]])
    _emit(args, report, lines, csv_table)
    return status


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

_ALIASES = {
    "C-delta1": "D1", "Chat-delta1": "HAT_D1", "C-hat-delta1": "HAT_D1",
    "QM1": "QM1_ONEWEIGHT",
}


def resolve_family(name: str, m: int) -> str:
    if name in ("C-delta2",):
        return "V4" if m % 2 else "V5"
    if name in ("Chat-delta2", "C-hat-delta2"):
        return "V1" if m % 2 else "V2"
    return _ALIASES.get(name, name)


def cmd_weights(args) -> int:
    from .weightlab.families import KINDS, build_family, enumerate_weights
    from .weightlab.tables import closed_form_distribution

    _need(args, "q", "m")
    q, m = args.q, args.m
    if args.family == "T-dist":
        return _weights_T(args)
    kind = resolve_family(args.family, m)
    if kind not in KINDS:
        raise _Usage(f"unknown family {args.family!r}; choose from C-delta1, Chat-delta1, C-delta2, "
                     f"Chat-delta2, T-dist, {', '.join(KINDS)}")
    mode = args.mode or "verify"
    man = RunManifest("weights", {"family": kind, "q": q, "m": m, "mode": mode}, timing=args.timing)
    man.use_field(q, m)
    out = {}
    if mode in ("table", "verify"):
        out["closed_form"] = closed_form_distribution(kind, q, m)
    if mode in ("enumerate", "verify"):
        out["enumeration"] = enumerate_weights(build_family(kind, q, m), threads=_threads(args))
    status = 0
    report = {"family": kind, "q": q, "m": m}
    for src, wd in out.items():
        report[src] = wd.to_json(family=kind, q=q, m=m, source=src)
    first = next(iter(out.values()))
    lines = [f"{kind} q={q} m={m}: [{first.length},{first.k},{first.min_distance()}] {first.enumerator()}"]
    if mode == "verify":
        agree = out["closed_form"] == out["enumeration"]
        report["verdict"] = MATCH if agree else MISMATCH
        man.verdict("distribution", report["verdict"])
        lines.append(report["verdict"])
        status = 0 if agree else 2
    report["manifest"] = man.to_json()
    csv_rows = [[kind, q, m, first.length, first.k, w, f, src]
                for src, wd in out.items() for w, f in wd.entries.items()]
    _emit(args, report, lines, (["family", "q", "m", "length", "k", "weight", "frequency", "source"], csv_rows))
    return status


def _weights_T(args) -> int:
    from .weightlab.expsums import (PairScan, QuadFormSpec, T_moment_check, closed_T_distribution,
                                    side_conditions_odd, weight_formula_check)

    q, m = args.q, args.m
    man = RunManifest("weights", {"family": "T-dist", "q": q, "m": m}, timing=args.timing)
    man.use_field(q, m)
    if q**m > 250 and parse_max_field(args.max_field) is None:
        raise _Usage(f"q^m = {q ** m} is over the default pair budget 250; pass --max-field to raise it")
    scan = PairScan(QuadFormSpec(q, m))
    dist = scan.value_distribution()
    closed = closed_T_distribution(q, m)
    agree = dist == closed
    report = {"family": "T-dist", "q": q, "m": m, "enumeration": dist.to_json(), "closed_form": closed.to_json(),
              "verdict": MATCH if agree else MISMATCH}
    lines = [f"T(a,b) q={q} m={m}: {len(dist.rows)} values over {dist.total()} pairs [{report['verdict']}]"]
    for r, v, c in dist.rows:
        z = v.complex()
        lines.append(f"  rank {r}: {z.real:+.4f}{z.imag:+.4f}i  x {c}")
    man.verdict("value_distribution", report["verdict"])
    status = 0 if agree else 2
    mom = T_moment_check(scan)
    report["moments"] = {"computed": {k: str(v) for k, v in mom["computed"].items()}}
    if "ok" in mom:
        report["moments"]["closed"] = {k: str(v) for k, v in mom["closed"].items()}
        report["moments"]["verdict"] = MATCH if mom["ok"] else MISMATCH
        man.verdict("moments", report["moments"]["verdict"])
        lines.append(f"moments [{report['moments']['verdict']}]")
        side = side_conditions_odd(scan)
        report["side_conditions"] = {k: v for k, v in side.items() if k != "ok"}
        report["side_conditions"]["verdict"] = MATCH if side["ok"] else MISMATCH
        lines.append(f"rank/value side conditions [{report['side_conditions']['verdict']}]")
        status = max(status, 0 if mom["ok"] and side["ok"] else 2)
    checked, bad = weight_formula_check(scan)
    report["weights_from_T"] = {"pairs": checked, "mismatches": bad, "verdict": MATCH if bad == 0 else MISMATCH}
    lines.append(f"codeword weights from T: {checked - bad}/{checked} agree")
    status = max(status, 0 if bad == 0 else 2)
    report["manifest"] = man.to_json()
    csv_rows = [[r, v.to_json(), c] for r, v, c in dist.rows]
    _emit(args, report, lines, (["rank", "value_coeffs", "multiplicity"], csv_rows))
    return status


# ---------------------------------------------------------------------------
# repro-all
# ---------------------------------------------------------------------------

def cmd_repro(args) -> int:
    from .repro import CLAIMS, FAIL, Budget, run_all, summarize

    budget = Budget(max_field=parse_max_field(args.max_field), threads=_threads(args))
    entries = run_all(budget, args.claims)
    summary = summarize(entries)
    man = RunManifest("repro-all", {"max_field": args.max_field, "claims": args.claims}, timing=args.timing)
    for k, v in summary.items():
        man.verdict(f"claim_{k}", v)
    lines = []
    for k, v in summary.items():
        ents = [e for e in entries if e.claim == k]
        counts = {s: sum(e.status == s for e in ents) for s in ("PASS", "FAIL", "SKIP")}
        lines.append(f"[{v}] claim {k}: {CLAIMS[k][0]}  ({counts['PASS']} pass, {counts['FAIL']} fail, "
                     f"{counts['SKIP']} skip)")
        for e in ents:
            if e.status != "PASS":
                lines.append(f"    {e.status} {e.label}: {e.detail}")
    report = {"summary": {str(k): v for k, v in summary.items()}, "entries": [e.to_json() for e in entries],
              "manifest": man.to_json()}
    csv_rows = [[e.claim, e.label, e.status] for e in entries]
    _emit(args, report, lines, (["claim", "label", "status"], csv_rows))
    return 2 if FAIL in summary.values() else 0


COMMANDS = {"cosets": cmd_cosets, "bch": cmd_bch, "weights": cmd_weights, "repro-all": cmd_repro}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command != "repro-all":
            _check_budget(args)
        return COMMANDS[args.command](args)
    except _Usage as exc:
        sys.stderr.write(f"bchlab: {exc}\n")
        return 1
    except BchLabError as exc:
        sys.stderr.write(f"bchlab: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
