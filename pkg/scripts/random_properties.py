#!/usr/bin/env python3
"""Seeded random property runs beyond the exhaustive suite.

For each random formula (larger than the exhaustive suite reaches):
  - prove() in pos, neg and strong mode
  - every countermodel must realise its branch and replay through eval
  - every Proved verdict is searched for countermodels within bounds
  - decide_sat must agree with the validity reduction
  - random models must never falsify a Proved formula

    python scripts/random_properties.py --count 500 --seed 1
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from paragodel.formula import And, Atom, Box, Dia, Impl, Neg, to_text
from paragodel.model import Evaluator, KripkeModel, violates
from paragodel.oracle import SearchBounds, verify_verdict
from paragodel.tableau import Countermodel, ResourceLimitExceeded, decide_sat, decide_sat_by_reduction, prove

log = logging.getLogger("props")


@dataclass
class Config:
    count: int = 300
    seed: int = 0
    atoms: tuple = ("p", "q", "r")
    min_size: int = 6
    max_size: int = 14
    modal_bias: float = 0.35  # chance that a unary node is box/dia rather than neg
    oracle_worlds: int = 2
    oracle_grid: int = 2
    models_per_formula: int = 20
    model_worlds: int = 3
    model_den: int = 4
    out: str = ""


@dataclass
class Tally:
    formulas: int = 0
    proved: int = 0
    countermodels: int = 0
    resource_limits: int = 0
    inconclusive: int = 0
    sat_checks: int = 0
    model_checks: int = 0
    failures: list = field(default_factory=list)


def random_formula(rng: random.Random, size: int, cfg: Config):
    if size <= 1:
        return Atom(rng.choice(cfg.atoms))
    if size == 2 or rng.random() < 0.4:
        r = rng.random()
        ctor = (Box if rng.random() < 0.5 else Dia) if r < cfg.modal_bias else Neg
        return ctor(random_formula(rng, size - 1, cfg))
    k = rng.randint(1, size - 2)
    ctor = And if rng.random() < 0.5 else Impl
    return ctor(random_formula(rng, k, cfg), random_formula(rng, size - 1 - k, cfg))


def random_model(rng: random.Random, cfg: Config) -> KripkeModel:
    n = rng.randint(1, cfg.model_worlds)
    ws = tuple(f"w{i}" for i in range(n))
    d = cfg.model_den
    draw = lambda: Fraction(rng.randint(0, d), d)  # noqa: E731
    return KripkeModel(
        ws,
        {(u, v): draw() for u in ws for v in ws},
        {(u, v): draw() for u in ws for v in ws},
        {(w, a): (draw(), draw()) for w in ws for a in cfg.atoms},
    )


def check_one(phi, rng, cfg: Config, tally: Tally):
    bounds = SearchBounds(max_worlds=cfg.oracle_worlds, grid_denominator=cfg.oracle_grid)
    text = to_text(phi)
    for mode in ("pos", "neg", "strong"):
        try:
            v = prove(phi, mode)
        except ResourceLimitExceeded:
            tally.resource_limits += 1
            continue
        if isinstance(v, Countermodel):
            tally.countermodels += 1
            if not v.report.ok:
                tally.failures.append((text, mode, "realisation", list(v.report.violations)))
        else:
            tally.proved += 1
            for _ in range(cfg.models_per_formula):
                m = random_model(rng, cfg)
                ev = Evaluator(m)
                tally.model_checks += 1
                bad = [w for w in m.worlds if violates(ev.pair(w, phi), mode)]
                if bad:
                    tally.failures.append((text, mode, "random model falsifies a Proved formula", bad))
                    break
        check = verify_verdict(phi, mode, v, bounds)
        tally.inconclusive += not check.conclusive
        if not check.agrees:
            tally.failures.append((text, mode, "oracle", check.detail))
    for mode in ("pos1", "strong"):
        try:
            a, b = decide_sat(phi, mode), decide_sat_by_reduction(phi, mode)
        except ResourceLimitExceeded:
            tally.resource_limits += 1
            continue
        tally.sat_checks += 1
        if a.satisfiable != b.satisfiable:
            tally.failures.append((text, mode, "sat paths disagree", [a.satisfiable, b.satisfiable]))


def parse_args() -> Config:
    c = Config()
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    for name in ("count", "seed", "min_size", "max_size", "oracle_worlds", "oracle_grid",
                 "models_per_formula", "model_worlds", "model_den"):
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=getattr(c, name))
    ap.add_argument("--modal-bias", type=float, default=c.modal_bias)
    ap.add_argument("--atoms", default=",".join(c.atoms))
    ap.add_argument("--out", default="")
    a = ap.parse_args()
    return Config(a.count, a.seed, tuple(a.atoms.split(",")), a.min_size, a.max_size, a.modal_bias,
                  a.oracle_worlds, a.oracle_grid, a.models_per_formula, a.model_worlds, a.model_den, a.out)


def main():
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s", datefmt="%H:%M:%S")
    cfg = parse_args()
    rng = random.Random(cfg.seed)
    tally = Tally()
    t0 = time.perf_counter()
    for k in range(cfg.count):
        phi = random_formula(rng, rng.randint(cfg.min_size, cfg.max_size), cfg)
        tally.formulas += 1
        check_one(phi, rng, cfg, tally)
        if (k + 1) % max(1, cfg.count // 10) == 0:
            log.info("%d/%d formulas, %d failures", k + 1, cfg.count, len(tally.failures))
    summary = asdict(tally) | {"seconds": round(time.perf_counter() - t0, 1)}
    print(json.dumps(summary, indent=1))
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg)} | summary, fh, indent=1)
    return 1 if tally.failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
