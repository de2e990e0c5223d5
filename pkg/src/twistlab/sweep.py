"""Corpus sweeps: run every theorem checker over (curve, d) pairs.

Pairs are processed independently (optionally in a process pool) and the
results are merged in canonical (label, d) order, so reports are
byte-stable regardless of the parallelism setting.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .corpus import CorpusEntry
from .curve import parse_curve
from .errors import Violation
from .quadtorsion import growth_report
from .theorems import TheoremId, run_all


@dataclass(frozen=True)
class SweepConfig:
    d_min: int
    d_max: int
    ell_oracle: bool = False
    primes_for_bounds: int = 5
    parallelism: int = 1

    def __post_init__(self):
        assert self.d_min <= self.d_max, "empty d range"
        assert self.parallelism >= 1


def squarefree_range(d_min: int, d_max: int) -> list[int]:
    """Squarefree d in [d_min, d_max] excluding 0 and 1."""
    out = []
    for d in range(d_min, d_max + 1):
        if d in (0, 1):
            continue
        m = abs(d)
        squarefree = True
        for k in range(2, math.isqrt(m) + 1):
            if m % (k * k) == 0:
                squarefree = False
                break
        if squarefree:
            out.append(d)
    return out


def _pair_worker(args: tuple[str, str, int, bool, int]) -> dict:
    """Process one (curve, d) pair; runs in a worker process."""
    label, literal, d, ell_oracle, primes_for_bounds = args
    E = parse_curve(literal)
    report = growth_report(
        E, d, run_ell_oracle=ell_oracle, primes_for_bounds=primes_for_bounds
    )
    row = {
        "label": label,
        "d": d,
        "base_torsion": str(report.base_torsion.group()),
        "twist_torsion": str(report.twist_torsion.group()),
        "odd_L_torsion": str(report.odd_L_torsion),
        "two_torsion_L": str(report.two_torsion_L),
        "growth_primes": sorted(report.growth_primes),
        "quotient_odd_part": report.quotient_odd_part,
    }
    try:
        verdicts = run_all(E, d)
    except Violation as exc:
        row["verdicts"] = [v.to_json() for v in exc.verdicts]
        row["violation"] = {
            "label": label,
            "d": d,
            "message": str(exc),
            "verdicts": [v.to_json() for v in exc.verdicts],
        }
        return row
    row["verdicts"] = [v.to_json() for v in verdicts]
    row["violation"] = None
    return row


def run_sweep(entries: list[CorpusEntry], config: SweepConfig) -> dict:
    """Sweep the corpus over squarefree d and assemble the JSON report."""
    ds = squarefree_range(config.d_min, config.d_max)
    jobs = [
        (entry.label, entry.curve.literal(), d, config.ell_oracle, config.primes_for_bounds)
        for entry in sorted(entries, key=lambda e: e.label)
        for d in ds
    ]
    if config.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            rows = list(pool.map(_pair_worker, jobs, chunksize=8))
    else:
        rows = [_pair_worker(job) for job in jobs]
    rows.sort(key=lambda r: (r["label"], r["d"]))
    by_theorem = {
        tid.value: {"checked": 0, "hypotheses_held": 0, "verified": 0, "vacuous": 0}
        for tid in TheoremId
    }
    violations = []
    for row in rows:
        for v in row["verdicts"]:
            counts = by_theorem[v["theorem"]]
            counts["checked"] += 1
            if v["hypotheses_hold"]:
                counts["hypotheses_held"] += 1
                if v["conclusion_holds"]:
                    counts["verified"] += 1
            else:
                counts["vacuous"] += 1
        if row["violation"] is not None:
            violations.append(row["violation"])
    return {
        "curves": sorted(e.label for e in entries),
        "d_range": [config.d_min, config.d_max],
        "ell_oracle": config.ell_oracle,
        "pairs_checked": len(rows),
        "verdicts_by_theorem": by_theorem,
        "violations": violations,
        "pairs": rows,
    }
