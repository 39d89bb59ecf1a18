"""Survey random automorphisms: raise each to its pure power, keep the
square ones and count failures of the structural checks on the diagram.

    python3 scripts/square_survey.py --samples 500 --seed 3
"""
import argparse
import random
from collections import Counter
from dataclasses import fields

from raagdyn.automorphism import is_square, pure_power, random_automorphism
from raagdyn.config import SurveyConfig
from raagdyn.diagram import (
    build_diagram,
    com_persist_failures,
    cycle_analysis,
    is_acyclic,
    path_commuting_failures,
)
from raagdyn.graphs import SimplicialGraph

NAMES = "abcdefghij"


def random_graph(rng: random.Random, max_vertices: int) -> SimplicialGraph:
    n = rng.randint(1, max_vertices)
    names = NAMES[:n]
    p = rng.random()
    edges = [(u, v) for i, u in enumerate(names) for v in names[i + 1:] if rng.random() < p]
    return SimplicialGraph(names, edges)


def survey(cfg: SurveyConfig) -> dict:
    rng = random.Random(cfg.seed)
    stats = Counter()
    orders = Counter()
    for _ in range(cfg.samples):
        G = random_graph(rng, cfg.max_vertices)
        phi = random_automorphism(G, rng, cfg.max_length, cfg.symmetries)
        pp = pure_power(phi)
        orders[pp.N] += 1
        if not is_square(pp.phi_N).square:
            stats["not square"] += 1
            continue
        stats["square"] += 1
        stats["pure"] += pp.report.pure
        D = build_diagram(pp.phi_N)
        stats["acyclic diagram"] += is_acyclic(D)
        stats["violations"] += bool(cycle_analysis(G, D).violations)
        stats["path-commuting failures"] += bool(path_commuting_failures(G, D))
        stats["comPersist failures"] += bool(com_persist_failures(G, D))
    return {"counts": dict(stats), "pure power orders": dict(sorted(orders.items()))}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SurveyConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.type == "bool" or isinstance(f.default, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=f.default)
        else:
            p.add_argument(flag, type=type(f.default), default=f.default)
    cfg = SurveyConfig(**vars(p.parse_args()))
    result = survey(cfg)
    print(cfg)
    for k, v in result["counts"].items():
        print(f"{k:<26}{v}")
    print("pure power orders:", result["pure power orders"])


if __name__ == "__main__":
    main()
