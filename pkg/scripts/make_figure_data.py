"""Regenerate the sweep CSVs (mixture measures and average fidelities).

Writes fig1.csv and fig4.csv into --outdir via the CLI entry point, so the
files are byte-identical to what `tritangle fig1` / `tritangle fig4` emit.
"""

import argparse
import pathlib
import sys

from tritangle.cli import main as cli_main


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="data", help="output directory (default data/)")
    parser.add_argument("--steps", type=int, default=201, help="grid points per sweep")
    args = parser.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in ("fig1", "fig4"):
        target = outdir / f"{name}.csv"
        code = cli_main([name, "--steps", str(args.steps), "--out", str(target)])
        if code != 0:
            print(f"{name} sweep failed with exit code {code}", file=sys.stderr)
            return code
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
