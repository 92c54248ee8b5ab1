"""Run the acceptance sweeps and write one JSON report per criterion.

    python3 scripts/run_acceptance.py --out reports/
    python3 scripts/run_acceptance.py --out reports2/ --compare reports/

With --compare the reports are also checked byte for byte against an earlier
run, which is criterion 8 across processes.
"""

import argparse
import sys
import time
from pathlib import Path

from morita.acceptance import CRITERIA


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("acceptance_reports"))
    ap.add_argument("--compare", type=Path, help="directory of reports from an earlier run")
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    args = ap.parse_args(argv)

    args.out.mkdir(parents=True, exist_ok=True)
    failed = []
    for n in args.only or sorted(CRITERIA):
        t0 = time.perf_counter()
        rep = CRITERIA[n]()
        elapsed = time.perf_counter() - t0
        text = rep.to_json() + "\n"
        (args.out / f"criterion_{n}.json").write_text(text)
        ok = rep.ok
        if n == 1:
            ok = ok and elapsed < 60
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {rep.subject}  {len(rep.checks)} cases  {elapsed:.1f}s")
        if not ok:
            failed.append(n)
    if args.compare:
        same = all((args.compare / f.name).exists() and (args.compare / f.name).read_text() == f.read_text()
                   for f in sorted(args.out.glob("criterion_*.json")))
        print(f"criterion 8: {'PASS' if same else 'FAIL'}  compared with {args.compare}")
        if not same:
            failed.append(8)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
