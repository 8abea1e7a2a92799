"""Compare the enumerator with the brute-force oracle on random models."""

import argparse
import random
import time
from dataclasses import dataclass

from archvar.oracle import oracle_enumerate
from archvar.randomgen import random_model
from archvar.varspace import enumerate_configs


@dataclass
class Config:
    fixtures: int = 200
    seed: int = 0


def main(cfg: Config) -> int:
    mismatches, sizes = [], []
    t_enum = t_oracle = 0.0
    for i in range(cfg.fixtures):
        ms = random_model(random.Random(cfg.seed + i)).load()
        t0 = time.perf_counter()
        got = enumerate_configs("Root", ms)
        t1 = time.perf_counter()
        want = oracle_enumerate("Root", ms)
        t2 = time.perf_counter()
        t_enum += t1 - t0
        t_oracle += t2 - t1
        sizes.append(len(got))
        if got != want:
            mismatches.append(cfg.seed + i)
    print(f"fixtures={cfg.fixtures} mismatches={len(mismatches)} {mismatches[:10]}")
    print(f"configurations per fixture: min={min(sizes)} max={max(sizes)} mean={sum(sizes) / len(sizes):.1f}")
    print(f"time: enumerate {t_enum:.2f} s, oracle {t_oracle:.2f} s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--fixtures", type=int, default=Config.fixtures)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(a.fixtures, a.seed)))
