"""Run acceptance criteria and print one verdict line each.

    python scripts/run_acceptance.py            # all ten
    python scripts/run_acceptance.py 3 6 8      # a subset
    python scripts/run_acceptance.py --json report.jsonl
"""

import argparse
import json
import sys

from rigged.suites import ACCEPTANCE, RunConfig, check_criterion


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the suite reports as JSON lines here")
    args = ap.parse_args(argv)
    numbers = args.criteria or sorted(ACCEPTANCE)
    cfg = RunConfig(seed=args.seed)
    failed = 0
    reports = []
    for n in numbers:
        res, problems, line = check_criterion(n, cfg)
        failed += bool(problems)
        reports.append({"criterion": n, **res.as_dict()})
        print(line, flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            for r in reports:
                fh.write(json.dumps(r, sort_keys=True) + "\n")
    print(f"{len(numbers) - failed}/{len(numbers)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
