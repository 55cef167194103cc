#!/usr/bin/env python3
"""Tableau/oracle agreement over an exhaustive formula suite.

Every formula is proved; countermodels are replayed through the evaluator
and Proved verdicts are checked by a bounded countermodel search. With
--sample N a seeded random subset of the suite is used instead.

    python scripts/run_agreement.py                       # full 96k suite, about 90 s
    python scripts/run_agreement.py --sample 2000 --seed 3 --out agreement.json
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import time
from dataclasses import asdict, dataclass

from paragodel.formula import enumerate_core, to_text
from paragodel.oracle import SearchBounds, run_agreement

log = logging.getLogger("agreement")


@dataclass
class Config:
    atoms: tuple = ("p", "q")
    max_size: int = 8
    max_depth: int = 2
    mode: str = "strong"
    max_worlds: int = 2
    grid: int = 2
    sample: int = 0  # 0 = whole suite
    seed: int = 0
    out: str = ""


def parse_args() -> Config:
    c = Config()
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--atoms", default=",".join(c.atoms))
    for name in ("max_size", "max_depth", "max_worlds", "grid", "sample", "seed"):
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=getattr(c, name))
    ap.add_argument("--mode", choices=("pos", "neg", "strong"), default=c.mode)
    ap.add_argument("--out", default="", help="write a JSON summary here")
    a = ap.parse_args()
    return Config(tuple(a.atoms.split(",")), a.max_size, a.max_depth, a.mode, a.max_worlds, a.grid,
                  a.sample, a.seed, a.out)


def main():
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s", datefmt="%H:%M:%S")
    cfg = parse_args()
    suite = enumerate_core(list(cfg.atoms), cfg.max_size, cfg.max_depth)
    if cfg.sample and cfg.sample < len(suite):
        suite = random.Random(cfg.seed).sample(suite, cfg.sample)
    log.info("suite: %d formulas (atoms %s, size <= %d, modal depth <= %d)",
             len(suite), ",".join(cfg.atoms), cfg.max_size, cfg.max_depth)

    step = max(1, len(suite) // 20)

    def progress(k, phi, verdict, check):
        if k % step == 0:
            log.info("%6d/%d  %s", k, len(suite), to_text(phi))

    t0 = time.perf_counter()
    rep = run_agreement(suite, cfg.mode, SearchBounds(max_worlds=cfg.max_worlds, grid_denominator=cfg.grid),
                        progress)
    dt = time.perf_counter() - t0
    summary = {
        "config": asdict(cfg),
        "formulas": rep.formulas,
        "proved": rep.proved,
        "countermodels": rep.countermodels,
        "countermodels_within_bound": rep.small_countermodels,
        "oracle_scans": rep.oracle_scans,
        "inconclusive": rep.inconclusive,
        "disagreements": rep.disagreements,
        "seconds": round(dt, 1),
    }
    print(json.dumps({k: v for k, v in summary.items() if k != "config"}, indent=1))
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=1)
    return 1 if rep.disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
