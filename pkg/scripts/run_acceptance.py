"""Run the acceptance criteria and write the JSON report plus a timing table."""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from nctorus.acceptance import CRITERIA, run_suite, suite_report
from nctorus.cli import dumps


@dataclass
class Config:
    criteria: list[int] = field(default_factory=lambda: sorted(CRITERIA))
    out: Path = Path("acceptance.json")


def main(cfg: Config) -> int:
    results = run_suite(cfg.criteria)
    for r in results:
        print(r.line())
    cfg.out.write_text(dumps(suite_report(results)))
    print(f"report written to {cfg.out}")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--criteria", type=lambda t: [int(x) for x in t.split(",")])
    p.add_argument("--out", type=Path)
    args = {k: v for k, v in vars(p.parse_args()).items() if v is not None}
    sys.exit(main(Config(**args)))
