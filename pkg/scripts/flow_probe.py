"""Compare the flow-based unstable dimension with the coindex on catalog metrics."""

from __future__ import annotations

import argparse
import time

from einstab.flow import unstable_dimension_probe
from einstab.lichnerowicz import Kind, classify
from einstab.solvers import catalog_einstein_metrics


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=1e-4)
    ap.add_argument("--limit", type=int, default=None, help="stop after this many metrics")
    args = ap.parse_args(argv)

    mismatches = 0
    t0 = time.perf_counter()
    for n, (space, sol) in enumerate(catalog_einstein_metrics()):
        if args.limit is not None and n >= args.limit:
            break
        verdict = classify(space, sol.metric)
        coindex = verdict.coindex
        probe = unstable_dimension_probe(space, sol.metric, eps=args.eps)
        if verdict.kind is Kind.DEGENERATE:
            # neutral directions are decided by higher-order terms
            flag = "  (degenerate, not compared)"
        else:
            flag = "" if probe == coindex else "  MISMATCH"
            mismatches += probe != coindex
        print(f"{space.name:28s} {sol.label:6s} coindex {coindex}  probe {probe}{flag}")
    print(f"{mismatches} mismatches, {time.perf_counter() - t0:.1f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
