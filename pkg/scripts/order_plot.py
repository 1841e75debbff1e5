"""Draw the K-order cone on a window for a few theta, next to the lexicographic half plane."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from nctorus.nc_torus import _lex_sign, order_classification


@dataclass
class Config:
    thetas: list[float] = field(default_factory=lambda: [1e-3, 0.2, 0.4, 0.61803398875])
    window: int = 10
    out: Path = Path("order_cone.png")


def main(cfg: Config) -> None:
    fig, axes = plt.subplots(1, len(cfg.thetas), figsize=(4 * len(cfg.thetas), 4), squeeze=False)
    for ax, th in zip(axes[0], cfg.thetas):
        rows = order_classification(th, cfg.window)
        pos = [(a, b) for a, b, s in rows if s > 0]
        flip = [(a, b) for a, b, s in rows if s != _lex_sign((a, b))]
        ax.scatter(*zip(*pos), s=8, c="tab:blue", label="positive")
        if flip:
            ax.scatter(*zip(*flip), s=14, marker="x", c="tab:red", label="differs from lex")
        ax.set_title(f"theta = {th:g}, {len(flip)} differ")
        ax.set_xlabel("m1")
        ax.set_aspect("equal")
    axes[0][0].set_ylabel("m2")
    axes[0][0].legend(loc="lower left", fontsize=7)
    fig.tight_layout()
    fig.savefig(cfg.out, dpi=120)
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--thetas", type=float, nargs="+")
    p.add_argument("--window", type=int)
    p.add_argument("--out", type=Path)
    args = {k: v for k, v in vars(p.parse_args()).items() if v is not None}
    main(Config(**args))
