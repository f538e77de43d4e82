"""Recompute every embedded table and print a one-line summary per table.

Flag tables are included when a descriptor directory is given.
"""

from __future__ import annotations

import argparse
import json
import time

from einstab.tables import GATED_IDS, TABLE_IDS, reproduce


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--descriptor-dir", default=None)
    ap.add_argument("--verbose", action="store_true", help="print full reports")
    ap.add_argument("--json", default=None, help="write all reports to this file")
    args = ap.parse_args(argv)

    ids = TABLE_IDS + (GATED_IDS if args.descriptor_dir else ())
    docs, ok = [], True
    for tid in ids:
        t0 = time.perf_counter()
        report = reproduce(tid, args.descriptor_dir)
        dt = time.perf_counter() - t0
        if args.verbose:
            print(report.render())
        status = "PASS" if report.passed else ("INCOMPLETE" if not report.complete else "FAIL")
        npass = sum(r.passed for r in report.rows)
        print(f"{tid:6s} {npass:4d}/{len(report.rows):<4d} {status:10s} {dt:.2f}s")
        for note in report.notes:
            print(f"       note: {note}")
        ok &= report.passed
        docs.append(report.to_dict())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(docs, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
