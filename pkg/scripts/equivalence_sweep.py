"""Sweep singlet settings across the full CHSH range and tabulate the (1, 1/2) verdict for both family games.

    python scripts/equivalence_sweep.py --steps 401 --outdir out/
"""

import argparse
import math
from pathlib import Path

from eprgames.families import example_game
from eprgames.game import MixedStrategyPair
from eprgames.io import write_csv
from eprgames.quantum import SINGLET, MeasurementConfig
from eprgames.sweep import SWEEP_HEADER, SweepSpec, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=401)
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for case in ("A", "B"):
        # A1 = 0, A2 = 2t, B1 = t, B2 = -t gives Delta = cos 3t - 3 cos t
        spec = SweepSpec(
            baseline=MeasurementConfig(SINGLET, (0, 0, 0, 0)),
            terms=(("A2", 2.0), ("B1", 1.0), ("B2", -1.0)),
            lo=math.pi / 4,
            hi=3 * math.pi / 4,
            steps=args.steps,
            game=example_game(case),
            pair=MixedStrategyPair(1, 0.5),
        )
        rows = run_sweep(spec)
        path = outdir / f"sweep_case_{case}.csv"
        write_csv(rows, SWEEP_HEADER, path)
        ne = [r[5] for r in rows if r[9]]
        span = f"Delta in [{min(ne):.4f}, {max(ne):.4f}]" if ne else "never"
        print(f"case {case}: {len(ne)}/{len(rows)} rows are NE, {span} -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
