"""Command-line front end: enumerate, closure, decompose, verify.

Exit codes for verify: 0 all pass, 1 any failure (witness printed),
3 no failure but some inconclusive, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import campaigns
from .closed import SliceCache, closure
from .errors import KmrootsError
from .gcm import load_gcm
from .io import (
    canonical_json_bytes,
    closure_result_to_dict,
    levi_report_to_dict,
    load_root_vectors,
    resolve_root_set,
    slice_to_dict,
    write_report,
)
from .levi import verify_levi
from .roots import enumerate_root_slice


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmroots")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", help="roots of a GCM up to a height bound")
    pe.add_argument("--gcm", required=True)
    pe.add_argument("--max-height", type=int, required=True)
    pe.add_argument("--real-only", action="store_true")

    pc = sub.add_parser("closure", help="saturate a root set under sums")
    pc.add_argument("--gcm", required=True)
    pc.add_argument("--roots", required=True)
    pc.add_argument("--cap", type=int, default=40)

    pd = sub.add_parser("decompose", help="Levi decomposition of a closed set")
    pd.add_argument("--gcm", required=True)
    pd.add_argument("--roots", required=True)
    pd.add_argument("--cap", type=int, default=40)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", required=True, choices=campaigns.SUITES)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--cases", type=int, default=100)
    pv.add_argument("--radius", type=int, default=8)
    pv.add_argument("--cap", type=int, default=40)
    pv.add_argument("--gcm", default=None)
    pv.add_argument("--report", default=None)
    return p


def cmd_enumerate(args) -> int:
    gcm = load_gcm(args.gcm)
    s = enumerate_root_slice(gcm, args.max_height)
    if args.real_only:
        out = {
            "height_bound": s.height_bound,
            "roots": [
                {"coeffs": list(rr.root), "coroot": list(rr.coroot)}
                for rr in s.real_roots()
            ],
        }
    else:
        out = slice_to_dict(s)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    n_real = sum(1 for v in s.sorted_roots if s.is_real(v))
    sys.stderr.write(
        "%d roots (%d real, %d imaginary) up to height %d\n"
        % (len(s.sorted_roots), n_real, len(s.sorted_roots) - n_real, s.height_bound)
    )
    return 0


def cmd_closure(args) -> int:
    gcm = load_gcm(args.gcm)
    vectors = load_root_vectors(args.roots)
    slices = SliceCache(gcm)
    max_h = max((abs(sum(v)) for v in vectors), default=1)
    base = slices.at_least(max(max_h, 1))
    psi = resolve_root_set(gcm, vectors, base)
    res = closure(psi, args.cap, slices)
    sys.stdout.write(json.dumps(closure_result_to_dict(res), indent=2) + "\n")
    return 0


def cmd_decompose(args) -> int:
    gcm = load_gcm(args.gcm)
    vectors = load_root_vectors(args.roots)
    slices = SliceCache(gcm)
    max_h = max((abs(sum(v)) for v in vectors), default=1)
    base = slices.at_least(max(max_h, 1))
    psi = resolve_root_set(gcm, vectors, base)
    rep = verify_levi(psi, slices)
    sys.stdout.write(json.dumps(levi_report_to_dict(rep), indent=2) + "\n")
    return 0 if rep.ok else 1


def cmd_verify(args) -> int:
    gcm = load_gcm(args.gcm) if args.gcm else None
    config = campaigns.CampaignConfig(
        suite=args.suite,
        seed=args.seed,
        cases=args.cases,
        radius=args.radius,
        cap=args.cap,
        gcm=gcm,
    )
    t0 = time.monotonic()
    report = campaigns.run_campaign(config)
    elapsed = time.monotonic() - t0
    if args.report:
        write_report(args.report, report)
    else:
        sys.stdout.write(canonical_json_bytes(report).decode())
    agg = report["aggregate"]
    sys.stderr.write(
        "suite=%s cases=%d pass=%d fail=%d inconclusive=%d wallclock=%.2fs\n"
        % (
            args.suite,
            len(report["cases"]),
            agg["pass"],
            agg["fail"],
            agg["inconclusive"],
            elapsed,
        )
    )
    if agg["fail"]:
        for case in report["cases"]:
            if case["outcome"] == "fail":
                sys.stderr.write("first failing case: %s\n" % json.dumps(case))
                break
    return campaigns.exit_code_for(report)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "enumerate": cmd_enumerate,
        "closure": cmd_closure,
        "decompose": cmd_decompose,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (KmrootsError, OSError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
