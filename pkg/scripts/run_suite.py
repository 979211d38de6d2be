"""Run the full verification suite and write json + markdown reports.

    python3 scripts/run_suite.py --reps fund,dual --out-dir reports
"""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from twistlab import verify as V


@dataclass
class SuiteConfig:
    reps: tuple[str, ...] = ("fund", "dual")
    fund_dual: bool = False
    jobs: int = 1
    out_dir: Path = Path("reports")
    timing: bool = False


def run(cfg: SuiteConfig) -> list[V.Report]:
    reps = cfg.reps + (("fund*dual",) if cfg.fund_dual else ())
    reports = V.run_all(reps=reps, jobs=cfg.jobs)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    doc = {"reports": [r.to_json(timing=False) for r in reports]}
    if cfg.timing:
        doc["timing"] = {"elapsed_ms": [r.elapsed_ms for r in reports]}
    (cfg.out_dir / "suite.json").write_text(json.dumps(doc, indent=2) + "\n")
    (cfg.out_dir / "suite.md").write_text(V.render_markdown(reports, timing=cfg.timing))
    return reports


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", default="fund,dual")
    ap.add_argument("--fund-dual", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=Path("reports"))
    ap.add_argument("--timing", action="store_true")
    a = ap.parse_args()
    cfg = SuiteConfig(tuple(a.reps.split(",")), a.fund_dual, a.jobs, a.out_dir, a.timing)
    reports = run(cfg)
    bad = [r for r in reports if not r.ok]
    print(f"{len(reports) - len(bad)}/{len(reports)} checks pass; reports in {cfg.out_dir}/")
    for r in bad:
        print(f"  {r.status.upper()} {r.title()}  {r.witness}")


if __name__ == "__main__":
    main()
