"""Realize random tree germs by group elements and tabulate what it costs.

    python3 scripts/density_demo.py --radii 0 1 2 3 --per-radius 50 --signed
"""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass, field

from basilica.approx import approximate, approximate_full, random_partial_automorphism
from basilica.element import pi_restrict
from basilica.fullgroup import pi_full


@dataclass(frozen=True)
class DensityConfig:
    radii: tuple[int, ...] = (0, 1, 2, 3)
    per_radius: int = 50
    seed: int = 0
    signed: bool = False


@dataclass
class Row:
    radius: int
    germs: int = 0
    exact: int = 0
    germ_edges: list[int] = field(default_factory=list)
    pieces: list[int] = field(default_factory=list)
    seconds: float = 0.0


def run(cfg: DensityConfig) -> list[Row]:
    rows = []
    for radius in cfg.radii:
        row = Row(radius)
        start = time.perf_counter()
        for i in range(cfg.per_radius):
            pa = random_partial_automorphism(radius, cfg.seed + 1000 * radius + i, signed=cfg.signed)
            if cfg.signed:
                g = approximate_full(pa)
                got = pi_full(g, pa.edges)
                ok = got.edges == pa.edges and got.signs == {v: pa.sign(v) for v in pa.vertices}
            else:
                g = approximate(pa)
                got = pi_restrict(g, pa.edges)
                ok = got.edges == pa.edges and got.vertices == pa.vertices
            row.germs += 1
            row.exact += ok
            row.germ_edges.append(len(pa.edges))
            row.pieces.append(len(g.dom.nodes))
        row.seconds = time.perf_counter() - start
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radii", type=int, nargs="+", default=list(DensityConfig.radii))
    ap.add_argument("--per-radius", type=int, default=DensityConfig.per_radius)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--signed", action="store_true")
    args = ap.parse_args()
    cfg = DensityConfig(tuple(args.radii), args.per_radius, args.seed, args.signed)
    print(f"{'radius':>6} {'germs':>6} {'exact':>6} {'edges':>7} {'pieces(mean)':>13} {'pieces(max)':>12} {'s':>7}")
    for r in run(cfg):
        print(
            f"{r.radius:>6} {r.germs:>6} {r.exact:>6} {statistics.mean(r.germ_edges):>7.1f}"
            f" {statistics.mean(r.pieces):>13.1f} {max(r.pieces):>12} {r.seconds:>7.2f}"
        )


if __name__ == "__main__":
    main()
