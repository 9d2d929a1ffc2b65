#!/usr/bin/env python3
"""Run the shipped figure-family recipes end to end.

    python scripts/reproduce.py              # all families, desk scale
    python scripts/reproduce.py fig3 fig6    # a subset
    python scripts/reproduce.py --fast       # coarse smoke versions
    python scripts/reproduce.py --render     # also render PNGs (needs
                                             # the ptgpe-figures package)

Outputs land in runs/<family>/<variant>/.  The full-fidelity evolution
runs integrate to t = 1500 at dt = 1e-3 and take a few minutes each;
fig1 maps sweep thousands of eigenproblems and dominate the total time.
"""

from __future__ import annotations

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
RECIPES = ROOT / "recipes"

FAST_GRID = ["--set", "grid.n_points=64"]
FAST_EVOLVE = ["--set", "evolve.t_end=20", "--set", "evolve.snapshot_times=0, 10, 20"]
FAST_MAP = [
    "--set", "grid.n_points=32",
    "--set", "map.v_count=10", "--set", "map.w_count=10",
]

UNSTABLE_W = {"fig3": "0.55", "fig4": "2"}

FIG6_DIP = [
    "--set", "model.a2=0.0033",
    "--set", "model.v2=2",
    "--set", "schedule.v2=2 -> 1",
]


def run(mode: str, recipe: str, out: Path, extra: list[str]) -> None:
    cmd = ["ptgpe", mode, "--config", str(RECIPES / f"{recipe}.ini"), "--out", str(out), *extra]
    print("+", " ".join(cmd))
    result = subprocess.run(cmd)
    if result.returncode not in (0, 4):  # 4 = blow-up, expected for unstable runs
        sys.exit(result.returncode)


def render(kind: str, inputs: list[Path], out: Path) -> None:
    if shutil.which("render_figures") is None:
        print("render_figures not installed; skipping", out.name)
        return
    cmd = ["render_figures", kind, *map(str, inputs), "-o", str(out)]
    print("+", " ".join(cmd))
    subprocess.run(cmd, check=True)


def family_fig1(out: Path, fast: bool, do_render: bool) -> None:
    extra = FAST_MAP if fast else []
    run("map", "fig1", out / "focusing", extra)
    defocusing = [
        "--set", "model.a1=-1", "--set", "model.a2=-1",
        "--set", "map.v_min=6", "--set", "map.v_max=10",
        "--set", "map.w_min=-4", "--set", "map.w_max=4",
    ]
    run("map", "fig1", out / "defocusing", defocusing + extra)
    if do_render:
        for variant in ("focusing", "defocusing"):
            render("heatmap", [out / variant / "map.csv"], out / f"{variant}.png")


def family_propagation(name: str, out: Path, fast: bool, do_render: bool) -> None:
    extra = (FAST_GRID + FAST_EVOLVE) if fast else []
    stability_extra = FAST_GRID if fast else []
    run("stability", name, out / "stable", stability_extra)
    run("evolve", name, out / "stable", extra)
    if name in UNSTABLE_W:
        w = UNSTABLE_W[name]
        toggle = ["--set", f"model.w1={w}", "--set", f"model.w2={w}"]
        run("stability", name, out / "unstable", toggle + stability_extra)
        run("evolve", name, out / "unstable", toggle + extra)
    if do_render:
        for variant_dir in out.iterdir():
            if not variant_dir.is_dir():
                continue
            render("eigscatter", [variant_dir / "eigenvalues.csv"], variant_dir / "eigenvalues.png")
            render("profile", [variant_dir / "profile.csv"], variant_dir / "profile.png")
            render("timeseries", [variant_dir / "trace.csv"], variant_dir / "trace.png")
            snaps = sorted(variant_dir.glob("snapshot_t*.csv"))
            if snaps:
                render("spacetime", snaps, variant_dir / "spacetime.png")


def family_fig6(out: Path, fast: bool, do_render: bool) -> None:
    extra = FAST_GRID + ["--set", "evolve.t_end=1500"] if fast else []
    run("excite", "fig6", out / "reduce", extra)
    run("excite", "fig6", out / "dip", FIG6_DIP + extra)
    if do_render:
        for variant in ("reduce", "dip"):
            render("timeseries", [out / variant / "trace.csv"], out / f"{variant}.png")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("families", nargs="*", default=[],
                        help="which figure families to run (default: all)")
    parser.add_argument("--fast", action="store_true", help="coarse smoke versions")
    parser.add_argument("--render", action="store_true", help="render PNGs too")
    parser.add_argument("--out", type=Path, default=ROOT / "runs")
    args = parser.parse_args()

    known = ("fig1", "fig3", "fig4", "fig5", "fig6")
    families = args.families or list(known)
    for family in families:
        if family not in known:
            parser.error(f"unknown family {family!r}; choose from {', '.join(known)}")
        out = args.out / family
        if family == "fig1":
            family_fig1(out, args.fast, args.render)
        elif family == "fig6":
            family_fig6(out, args.fast, args.render)
        else:
            family_propagation(family, out, args.fast, args.render)
    print("done:", ", ".join(families))


if __name__ == "__main__":
    main()
