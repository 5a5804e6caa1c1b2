"""Draw the ternary lamination and its image in the binary model as SVG files.

    python3 scripts/render_laminations.py --depth 4 --out renders/
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from basilica.lamination import leaves_up_to
from basilica.svg import render_svg
from basilica.theta import binary_lamination, construction_depth, theta_leaf


@dataclass(frozen=True)
class RenderConfig:
    depth: int = 4
    out: Path = Path("renders")


def render(cfg: RenderConfig) -> dict[str, int]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    ternary = leaves_up_to(cfg.depth)
    render_svg([(l.left.value, l.right.value) for l in ternary], 2, str(cfg.out / f"ternary-{cfg.depth}.svg"))
    binary = binary_lamination(cfg.depth)
    render_svg([(c.a.value, c.b.value) for c in binary], 3, str(cfg.out / f"binary-{cfg.depth}.svg"))
    # images of the ternary chords whose binary counterparts exist after this round
    pushed = [theta_leaf(l) for l in leaves_up_to(cfg.depth + 1) if construction_depth(l) <= cfg.depth]
    render_svg([(c.a.value, c.b.value) for c in pushed], 3, str(cfg.out / f"theta-image-{cfg.depth}.svg"))
    return {"ternary": len(ternary), "binary": len(binary), "theta-image": len(pushed)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=RenderConfig.depth)
    ap.add_argument("--out", type=Path, default=RenderConfig.out)
    args = ap.parse_args()
    for name, count in render(RenderConfig(args.depth, args.out)).items():
        print(f"{name}: {count} chords -> {args.out / f'{name}-{args.depth}.svg'}")


if __name__ == "__main__":
    main()
