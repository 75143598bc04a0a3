#!/usr/bin/env python3
"""Randomized search for four-dimensional instances with many distinct gaps.

Whether the cap 2^4 + 1 = 17 is attained in dimension four is open; this
script only explores.  Each run is deterministic for a given seed and
appends its best-so-far records to a JSONL file plus a manifest.

Run:  python3 scripts/search_d4.py [--samples 20000] [--seed 0] [--out-dir runs]
"""

import argparse
from datetime import datetime, timezone
from pathlib import Path

from torusgaps.gaps import Metric
from torusgaps.search import (
    Mode,
    SearchConfig,
    append_record_jsonl,
    search,
    write_manifest,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--den-cap", type=int, default=2000)
    ap.add_argument("--n-max", type=int, default=150)
    ap.add_argument("--out-dir", default="runs")
    args = ap.parse_args()

    cfg = SearchConfig(
        d=4,
        N_range=(2, args.n_max),
        mode=Mode.RANDOM,
        denominator_cap=args.den_cap,
        metric=Metric.MAX,
        sample_count=args.samples,
        seed=args.seed,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records_path = out_dir / f"search-d4-seed{args.seed}.jsonl"
    manifest_path = out_dir / f"search-d4-seed{args.seed}.manifest.json"
    records_path.unlink(missing_ok=True)

    def on_record(rec):
        print(f"g = {rec.g}  alpha = ({', '.join(str(a) for a in rec.instance.alpha)})  "
              f"N = {rec.instance.N}")
        append_record_jsonl(records_path, rec)

    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    result = search(cfg, on_record)
    finished = datetime.now(timezone.utc).isoformat(timespec="seconds")
    write_manifest(manifest_path, cfg, started, finished, result)
    print(f"\nevaluated {result.evaluated}; max g = {result.max_g} (cap 17); "
          f"records in {records_path}")
    if result.violations:
        raise SystemExit(f"BOUND VIOLATION recorded in {records_path}")


if __name__ == "__main__":
    main()
