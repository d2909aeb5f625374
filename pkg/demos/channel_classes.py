"""Tour of the channel classes.

Builds a gallery of qubit and qutrit channels, classifies each one, and
prints the verdict table. The strict inclusions show up directly: every
coherence breaking channel is quantum-classical and entanglement breaking,
the dephase-then-rotate channel is quantum-classical without being
coherence breaking, and the identity is incoherent without breaking
anything.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from cohbreak import (
    cbc_from_povm,
    classify,
    dephasing_channel,
    gad_channel,
    identity_channel,
    make_channel,
    partial_dephasing_channel,
    unitary_channel,
    y_to_x_channel,
)
from cohbreak.channels import random_povm

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)

rng = np.random.default_rng(7)
gallery = [
    ("identity (qubit)", identity_channel(2)),
    ("complete dephasing", dephasing_channel(2)),
    ("partial dephasing q=0.4", partial_dephasing_channel(2, 0.4)),
    ("Hadamard unitary", unitary_channel(HADAMARD)),
    ("amplitude damping p=0.7 t=1", gad_channel(0.7, 1.0)),
    ("y->x collapse alpha=0.5", y_to_x_channel(0.5)),
    ("dephase then rotate", make_channel([HADAMARD @ k for k in dephasing_channel(2).kraus_ops])),
    ("measure-and-prepare (qutrit)", cbc_from_povm(random_povm(3, 3, rng))),
]

classes = ["incoherent", "sio", "dio", "scbc", "cbc", "qc", "entanglement_breaking"]
header = f"{'channel':30s} " + " ".join(f"{c[:5]:>5s}" for c in classes)
print(header)
print("-" * len(header))
for name, channel in gallery:
    report = classify(channel)
    row = " ".join(f"{report.verdicts[c][:5]:>5s}" for c in classes)
    print(f"{name:30s} {row}")

print()
print("Witness details for the dephase-then-rotate channel (QC but not CBC):")
report = classify(gallery[6][1])
print("  qc evidence:", report.evidence["qc"])
print("  cbc evidence:", report.evidence["cbc"])
