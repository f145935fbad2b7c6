"""Sweep a shipped scenario over its target index and write the bound table as CSV.

Same thing from a shell:
    genlimit sweep --template scenarios/nonuniform_log.json --range adversary.target=1..10
"""

import json
import sys
from pathlib import Path

from genlimit.bounds import reports_csv, sweep

template = json.loads((Path(__file__).resolve().parent.parent / "scenarios" / "nonuniform_log.json").read_text())
reports = sweep(template, {"adversary.target": list(range(1, 11))})
sys.stdout.write(reports_csv(reports))
print(f"# {sum(r.ok for r in reports)}/{len(reports)} scenarios within every bound", file=sys.stderr)
