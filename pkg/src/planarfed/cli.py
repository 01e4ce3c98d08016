"""Command line front end.

Exit codes: 0 success, 2 scenario validation error, 3 runtime failure
while evaluating a valid scenario.
"""
from __future__ import annotations

import argparse
import importlib.resources
import sys

from .errors import PlanarfedError, ScenarioError
from .scenario import load_scenario, parse_scenario, run_scenario, write_results

DEMO_CASES = ("thermal", "biased")


def _load_demo(case: str):
    ref = importlib.resources.files("planarfed").joinpath("data", f"demo_{case}.scn")
    text = ref.read_text()
    return parse_scenario(text, base_dir=".", label=f"demo_{case}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planarfed",
        description="Quantized fluctuational electrodynamics of planar "
                    "multilayer stacks")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a scenario file")
    run.add_argument("scenario", help="path to a .scn scenario file")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument("--threads", type=int, default=None,
                     help="spectral columns computed in parallel")
    run.add_argument("--render", action="store_true",
                     help="also write PPM heatmaps")

    val = sub.add_parser("validate", help="parse and check a scenario file")
    val.add_argument("scenario", help="path to a .scn scenario file")

    demo = sub.add_parser("demo", help="run a bundled demonstration scenario")
    demo.add_argument("--case", choices=DEMO_CASES, default="thermal")
    demo.add_argument("--out", default="out", help="output directory")
    demo.add_argument("--threads", type=int, default=None)
    demo.add_argument("--render", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            load_scenario(args.scenario)
            print(f"{args.scenario}: ok")
            return 0
        if args.command == "run":
            sc = load_scenario(args.scenario)
        else:
            sc = _load_demo(args.case)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return 2

    try:
        result = run_scenario(sc, threads=args.threads)
        files = write_results(result, args.out, render=args.render)
    except PlanarfedError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
