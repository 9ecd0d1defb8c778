#!/usr/bin/env python3
"""Trace-estimation curves for a pure and a partially mixed control qubit.

Sweeps theta over [-pi, pi] for alpha = 1.0 and alpha = 0.58, both exactly
and with a finite shot budget chosen from the accuracy target, writes the
sweep CSVs, and prints the reduced chi-square of the sampled points against
the ideal curves (three fitted degrees of freedom: amplitude, frequency,
phase).

Usage: python3 scripts/reproduce_trace_curves.py [outdir]
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dqc1sim import Dqc1Config, chi2_report, shots_required
from dqc1sim.cli import SweepConfig, sweep_rows, _render_csv

EPSILON = 0.1
P_ERROR = 0.05
SEED = 2026
STEPS = 41


def run_alpha(config: Dqc1Config, outdir: Path) -> None:
    shots = shots_required(EPSILON, P_ERROR, config.alpha)
    sweep = SweepConfig(
        theta_min=-np.pi,
        theta_max=np.pi,
        steps=STEPS,
        alpha=config.alpha,
        shots=shots,
        seed=SEED,
        outputs=("trace",),
    )
    rows = sweep_rows(sweep)
    path = outdir / f"trace_alpha_{config.alpha:.2f}.csv"
    path.write_text(_render_csv(sweep.to_dict(), sweep.columns, rows))

    for part in ("re", "im"):
        observed = np.array([row[f"{part}_est"] for row in rows])
        expected = np.array([row[f"{part}_exact"] for row in rows])
        prob = (1.0 + expected) / 2.0
        sigma = np.clip(2.0 * np.sqrt(prob * (1.0 - prob) / shots), 1e-4, None)
        report = chi2_report(observed, expected, sigma, dof_subtract=3)
        print(
            f"alpha={config.alpha:.2f} {part}: shots={shots} "
            f"reduced chi2={report['chi2_reduced']:.2f} over {report['n_points']} points"
        )
    print(f"  wrote {path}")


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out")
    outdir.mkdir(parents=True, exist_ok=True)
    for alpha in (1.0, 0.58):
        run_alpha(Dqc1Config(n=1, alpha=alpha), outdir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
