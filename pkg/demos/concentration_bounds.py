"""Typicality of coherence under noise in growing dimensions.

Haar-random pure states are pushed through a channel and the scaled l1
coherence c_l1/(d-1) is tabulated. As the dimension grows the values
concentrate sharply around their mean: the empirical tail frequencies
shrink by orders of magnitude while the exponential bound (evaluated at
the scaled-l1 Lipschitz constant d/(d-1)) decays much more slowly, so the
bound is loose but never violated. The damping channel is applied as a
tensor power of the qubit channel, one factor per qubit.

Writes concentration.csv with (channel, d, epsilon, tail, bound) rows.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cohbreak import gad_channel, identity_channel, run_concentration_experiment

EPSILONS = [0.02, 0.05, 0.1, 0.2]
SAMPLES = 10_000
SEED = 2024

rows = ["channel,dim,epsilon,empirical_tail,corollary_bound"]
gad = gad_channel(0.7, 1.0)
for d, n_factors in ((4, 2), (16, 4), (64, 6)):
    for label, channel in (
        ("identity", identity_channel(d)),
        ("damping^k", [gad] * n_factors),
    ):
        report = run_concentration_experiment(
            channel, d=d, samples=SAMPLES, epsilons=EPSILONS, seed=SEED, label=label
        )
        print(f"{label:10s} d={d:3d}  mean scaled coherence = {report.mean_scaled:.4f}")
        for eps, tail, bound in zip(report.epsilons, report.tails,
                                    report.corollary_bounds):
            print(f"    eps={eps:<5g} tail={tail:<8g} bound={bound:.4f}")
            rows.append(f"{label},{d},{eps!r},{tail!r},{bound!r}")

out = Path(__file__).with_name("concentration.csv")
out.write_text("\n".join(rows) + "\n")
print(f"wrote {out}")
