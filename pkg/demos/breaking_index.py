"""Coherence breaking indices of iterated channels.

Two nilpotent Bloch maps reach the breaking set after exactly two
iterations; generalized amplitude damping never does, because iterating it
only moves the damping parameter to p^n and the coherences keep a nonzero
factor sqrt(p)^n forever ("coherence saving").
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from cohbreak import (
    QubitAffine,
    coherence_breaking_index,
    coherence_breaking_index_affine,
    dephasing_channel,
    gad_channel,
    y_to_x_channel,
)

print("Kraus-level search (matrix-unit images of each power):")
for name, channel, cap in [
    ("complete dephasing", dephasing_channel(2), 64),
    ("y->x collapse alpha=0.5", y_to_x_channel(0.5), 64),
    ("amplitude damping p=0.7 t=1", gad_channel(0.7, 1.0), 64),
]:
    result = coherence_breaking_index(channel, cap=cap)
    print(f"  n({name}) = {result}")
    print(f"    per-power off-diagonal residuals: "
          f"{[f'{r:.2e}' for r in result.residuals[:6]]}"
          f"{' ...' if len(result.residuals) > 6 else ''}")

print()
print("Affine-pair search (powers of (M, n)):")
m1 = np.zeros((3, 3))
m1[0, 1] = 0.5
m2 = np.zeros((3, 3))
m2[0, 1] = 0.4
m2[2, 0] = 0.25
for name, rep in [
    ("M = [[0,a,0],[0,0,0],[0,0,0]], n = 0", QubitAffine(m=m1, shift=np.zeros(3))),
    ("M = [[0,a,0],[0,0,0],[b,0,0]], n = (0,0,0.2)",
     QubitAffine(m=m2, shift=np.array([0.0, 0.0, 0.2]))),
    ("amplitude damping rep", QubitAffine(m=np.diag([np.sqrt(0.7), np.sqrt(0.7), 0.7]),
                                          shift=np.array([0.0, 0.0, 0.3]))),
]:
    result = coherence_breaking_index_affine(rep, cap=64)
    print(f"  n({name}) = {result}")
