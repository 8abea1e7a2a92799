"""Flatten the FourWindowSystem configuration and summarize the result."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from archvar.export import to_dot, to_json
from archvar.parser import load_paths
from archvar.resolution import flatten

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    corpus: Path = ROOT / "corpus"
    config: str = "FourWindowSystem"
    out_dir: Path = ROOT / "out"


def main(cfg: Config) -> None:
    model_set, diags = load_paths([cfg.corpus])
    assert not diags, diags
    flat = flatten(model_set.configs[cfg.config], model_set)
    root = flat.root
    print(f"root {root.name}: {len(root.ports)} ports, {len(root.children)} children, {len(root.edges)} edges")
    for child in sorted(root.children, key=lambda c: c.name):
        print(f"  {child.name:16} {child.type:28} {len(child.ports)} ports")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    (cfg.out_dir / f"{cfg.config}.json").write_text(to_json(flat), encoding="utf-8")
    (cfg.out_dir / f"{cfg.config}.dot").write_text(to_dot(flat), encoding="utf-8")
    print(f"wrote {cfg.out_dir / cfg.config}.json and .dot")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--corpus", type=Path, default=Config.corpus)
    p.add_argument("--config", default=Config.config)
    p.add_argument("--out-dir", type=Path, default=Config.out_dir)
    a = p.parse_args()
    main(Config(a.corpus, a.config, a.out_dir))
