"""List the valid configurations of every variable component in a model set."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from archvar.parser import load_paths
from archvar.varspace import enumerate_configs

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    models: Path = ROOT / "corpus"
    limit: int = 100_000


def main(cfg: Config) -> None:
    model_set, diags = load_paths([cfg.models])
    assert not diags, diags
    for qname in sorted(model_set.top_level):
        if qname not in model_set.components:
            continue
        configs = enumerate_configs(qname, model_set, cfg.limit)
        print(f"{qname}: {len(configs)}")
        for c in configs:
            print(f"  {c}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--models", type=Path, default=Config.models)
    p.add_argument("--limit", type=int, default=Config.limit)
    a = p.parse_args()
    main(Config(a.models, a.limit))
