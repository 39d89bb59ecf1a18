"""Classify every spec file in a directory and print one row per map.

    python3 scripts/growth_table.py [specs/] [--kmax 25]
"""
import argparse
from dataclasses import replace
from pathlib import Path

from raagdyn.config import GrowthConfig
from raagdyn.dynamics import PolynomialByTheorem, classify_growth
from raagdyn.io import parse_spec


def row(path: Path, cfg: GrowthConfig) -> str:
    spec = parse_spec(path.read_bytes())
    phi = spec.automorphism()
    rep = classify_growth(spec.graph, phi, cfg.k_max, cfg.length_cap, cfg.threads, cfg.threshold)
    cls = rep.classification
    kind = f"polynomial<= {cls.degree_bound}" if isinstance(cls, PolynomialByTheorem) else cls.name
    sub = rep.invariant_subgraph
    where = "-" if sub is None else "{" + ",".join(spec.graph.ordered(sub.delta)) + "} " + sub.kind.value
    est = rep.estimates
    return f"{path.stem:<16}{kind:<18}{est.lambda_phi_hat:>9.4f}  {est.argmax_generator:<5}{where}"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("directory", nargs="?", default=Path(__file__).resolve().parent.parent / "specs")
    p.add_argument("--kmax", type=int)
    args = p.parse_args()
    cfg = GrowthConfig()
    if args.kmax:
        cfg = replace(cfg, k_max=args.kmax)
    print(f"{'spec':<16}{'growth':<18}{'lambda_hat':>9}  {'at':<5}invariant subgraph")
    for path in sorted(Path(args.directory).glob("*.json")):
        print(row(path, cfg))


if __name__ == "__main__":
    main()
