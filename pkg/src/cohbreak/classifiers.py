"""Membership tests for the coherence-related channel classes.

Classes and their decision procedures:

* incoherent / SIO / SCBC -- sparsity-pattern tests on a concrete Kraus
  decomposition. Membership can depend on the decomposition, so
  ``classify`` retries with the canonical Choi-extracted set before
  reporting "no".
* CBC / DIO -- decomposition-independent tests on the channel's action on
  the d^2 matrix units |i><j| (linearity makes matrix units sufficient).
* QC -- the outputs of a Hermitian operator basis must pairwise commute;
  commuting Hermitian outputs are simultaneously diagonalizable, which is
  exactly the measure-and-prepare form with rank-one projectors in some
  orthonormal basis.
* entanglement breaking -- PPT test on the Choi matrix. For qubits PPT is
  equivalent to separability, so the verdict is decisive; for d >= 3 a
  positive partial transpose is only necessary and the verdict stays
  "inconclusive".

A coherence breaking channel always admits a Kraus set whose every branch
outputs a diagonal state (take K_ik = sqrt(lambda_ik)|i><phi_ik| from the
effects F_i = Phi^adj(|i><i|)), so the selective-breaking verdict always
coincides with the breaking verdict at channel level; a disagreement of the
pattern tests with that equivalence signals tolerance misconfiguration and
raises InconsistentVerdictsError.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import KrausChannel, QubitAffine, apply, choi_to_kraus, kraus_to_choi
from .errors import InconsistentVerdictsError
from .linalg import generalized_gell_mann, partial_transpose

DEFAULT_TOL = 1e-8


def _matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    unit = np.zeros((d, d), dtype=complex)
    unit[i, j] = 1.0
    return unit


def matrix_unit_images(channel: KrausChannel) -> np.ndarray:
    """Phi(|i><j|) for all i, j, as an array of shape (d, d, d, d)."""
    d = channel.dim
    out = np.empty((d, d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            out[i, j] = apply(channel, _matrix_unit(d, i, j))
    return out


def is_incoherent_kraus(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Every Kraus operator has at most one entry above tol per column.

    Returns (ok, witness); on failure the witness names the first violating
    (operator, column) and the achieved residual (second-largest magnitude).
    """
    worst = 0.0
    for n, k in enumerate(channel.kraus_ops):
        mags = np.abs(k)
        for j in range(channel.dim):
            col = np.sort(mags[:, j])[::-1]
            second = float(col[1]) if col.size > 1 else 0.0
            if second > tol:
                return False, {"operator": n, "column": j, "residual": second}
            worst = max(worst, second)
    return True, {"residual": worst}


def is_sio(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Every Kraus operator is sub-permutation patterned.

    At most one entry above tol per column and per row, the shape of
    d_ij |pi_i(j)><j| operators.
    """
    ok_col, witness = is_incoherent_kraus(channel, tol)
    if not ok_col:
        witness["axis"] = "column"
        return False, witness
    worst = witness["residual"]
    for n, k in enumerate(channel.kraus_ops):
        mags = np.abs(k)
        for i in range(channel.dim):
            row = np.sort(mags[i, :])[::-1]
            second = float(row[1]) if row.size > 1 else 0.0
            if second > tol:
                return False, {"operator": n, "row": i, "residual": second, "axis": "row"}
            worst = max(worst, second)
    return True, {"residual": worst}


def is_scbc(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Every Kraus operator is |i><phi|-shaped: at most one nonzero row.

    Equivalent to numerical rank one with the left singular vector pinned
    to a reference-basis vector, so every selective branch K rho K^dag is
    diagonal.
    """
    worst = 0.0
    for n, k in enumerate(channel.kraus_ops):
        row_norms = np.abs(k).max(axis=1)
        order = np.argsort(row_norms)[::-1]
        second = float(row_norms[order[1]]) if len(order) > 1 else 0.0
        if second > tol:
            return False, {"operator": n, "rows": [int(order[0]), int(order[1])],
                           "residual": second}
        worst = max(worst, second)
    return True, {"residual": worst}


def is_cbc(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Phi(|i><j|) diagonal for every matrix unit, hence Phi(rho) diagonal
    for every state by linearity.

    Decomposition independent. Returns (ok, witness) with the offending
    unit (i, j) and the largest off-diagonal residual.
    """
    images = matrix_unit_images(channel)
    return _is_cbc_from_images(images, tol)


def _is_cbc_from_images(images: np.ndarray, tol: float):
    d = images.shape[0]
    off_mask = ~np.eye(d, dtype=bool)
    worst = 0.0
    worst_unit = None
    for i in range(d):
        for j in range(d):
            residual = float(np.abs(images[i, j][off_mask]).max())
            if residual > worst:
                worst = residual
                worst_unit = (i, j)
    if worst > tol:
        return False, {"unit": list(worst_unit), "residual": worst}
    return True, {"residual": worst}


def is_cbc_affine(rep: QubitAffine, tol: float = DEFAULT_TOL) -> bool:
    """Qubit coherence-breaking test on the affine pair.

    The x and y output components must vanish for every input, i.e. the
    first two rows of M and the first two shift components are zero.
    """
    residual = max(float(np.abs(rep.m[:2, :]).max()), float(np.abs(rep.shift[:2]).max()))
    return residual <= tol


def is_dio(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Dephasing covariance Delta(Phi(X)) = Phi(Delta(X)) on matrix units.

    Concretely: Phi(|i><i|) must be diagonal and Phi(|i><j|), i != j, must
    have zero diagonal.
    """
    images = matrix_unit_images(channel)
    d = images.shape[0]
    off_mask = ~np.eye(d, dtype=bool)
    worst = 0.0
    worst_unit = None
    for i in range(d):
        for j in range(d):
            if i == j:
                residual = float(np.abs(images[i, j][off_mask]).max())
            else:
                residual = float(np.abs(np.diag(images[i, j])).max())
            if residual > worst:
                worst = residual
                worst_unit = (i, j)
    if worst > tol:
        return False, {"unit": list(worst_unit), "residual": worst}
    return True, {"residual": worst}


def is_qc(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """Quantum-classical test: channel outputs commute pairwise.

    Evaluates Phi on the su(d) generators plus the identity and reports the
    largest commutator entry; simultaneous diagonalizability of the outputs
    is equivalent to the measure-and-prepare form in some output basis.
    """
    d = channel.dim
    basis = list(generalized_gell_mann(d).generators) + [np.eye(d, dtype=complex)]
    outputs = [apply(channel, h) for h in basis]
    worst = 0.0
    for a in range(len(outputs)):
        for b in range(a + 1, len(outputs)):
            comm = outputs[a] @ outputs[b] - outputs[b] @ outputs[a]
            worst = max(worst, float(np.abs(comm).max()))
    return worst <= tol, {"max_commutator": worst}


def is_entanglement_breaking(channel: KrausChannel, tol: float = DEFAULT_TOL):
    """PPT test on the Choi state.

    Returns (verdict, witness) with verdict in {"yes", "no", "inconclusive"}
    and the minimum partial-transpose eigenvalue as witness. For qubits PPT
    decides entanglement breaking; for d >= 3 it is only a no-certificate.
    """
    choi = kraus_to_choi(channel)
    pt = partial_transpose(choi.matrix, channel.dim)
    min_eig = float(np.linalg.eigvalsh(pt).min())
    witness = {"min_pt_eigenvalue": min_eig}
    if min_eig < -tol:
        return "no", witness
    if channel.dim == 2:
        return "yes", witness
    return "inconclusive", witness


@dataclass
class ClassificationReport:
    """Per-class verdicts ("yes" / "no" / "inconclusive") with evidence.

    Evidence holds the witness dictionaries of the individual predicates,
    plus which Kraus decomposition ("given", "canonical" or "via-cbc")
    certified the pattern classes.
    """

    tolerance: float
    verdicts: dict[str, str] = field(default_factory=dict)
    evidence: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "verdicts": dict(self.verdicts),
            "evidence": {k: dict(v) for k, v in self.evidence.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        return cls(
            tolerance=float(data["tolerance"]),
            verdicts=dict(data["verdicts"]),
            evidence={k: dict(v) for k, v in data["evidence"].items()},
        )


_PATTERN_PREDICATES = {
    "incoherent": is_incoherent_kraus,
    "sio": is_sio,
    "scbc": is_scbc,
}


def classify(channel: KrausChannel, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """Run every class predicate and assemble a consistent report.

    Pattern classes (incoherent, SIO, SCBC) are first tested on the given
    Kraus set, then on the canonical Choi-extracted set; CBC membership
    additionally certifies incoherent and SCBC via the measure-and-prepare
    form. The report is checked against the inclusion relations
    CBC => QC => EB-not-no and SCBC = CBC before it is returned.
    """
    report = ClassificationReport(tolerance=tol)
    canonical = choi_to_kraus(kraus_to_choi(channel))

    for name, predicate in _PATTERN_PREDICATES.items():
        ok, witness = predicate(channel, tol)
        decomposition = "given"
        if not ok:
            ok_retry, witness_retry = predicate(canonical, tol)
            if ok_retry:
                ok, witness, decomposition = ok_retry, witness_retry, "canonical"
        witness["decomposition"] = decomposition
        report.verdicts[name] = "yes" if ok else "no"
        report.evidence[name] = witness

    cbc_ok, cbc_witness = is_cbc(channel, tol)
    report.verdicts["cbc"] = "yes" if cbc_ok else "no"
    report.evidence["cbc"] = cbc_witness

    dio_ok, dio_witness = is_dio(channel, tol)
    report.verdicts["dio"] = "yes" if dio_ok else "no"
    report.evidence["dio"] = dio_witness

    qc_ok, qc_witness = is_qc(channel, tol)
    report.verdicts["qc"] = "yes" if qc_ok else "no"
    report.evidence["qc"] = qc_witness

    eb_verdict, eb_witness = is_entanglement_breaking(channel, tol)
    report.verdicts["entanglement_breaking"] = eb_verdict
    report.evidence["entanglement_breaking"] = eb_witness

    # A breaking channel admits the selective measure-and-prepare form, so
    # CBC membership upgrades the pattern verdicts even when neither tested
    # decomposition exposes the pattern.
    if cbc_ok:
        for name in ("incoherent", "scbc"):
            if report.verdicts[name] == "no":
                report.verdicts[name] = "yes"
                report.evidence[name] = {"decomposition": "via-cbc",
                                         "residual": cbc_witness["residual"]}

    _assert_consistency(report)
    return report


def _assert_consistency(report: ClassificationReport) -> None:
    v = report.verdicts
    if v["scbc"] == "yes" and v["cbc"] == "no":
        raise InconsistentVerdictsError(
            "selective-breaking pattern found on a channel whose matrix-unit "
            f"images are not diagonal (evidence: {report.evidence['scbc']}, "
            f"{report.evidence['cbc']})"
        )
    if v["cbc"] == "yes" and v["scbc"] == "no":
        raise InconsistentVerdictsError("breaking verdict without selective form")
    if v["cbc"] == "yes" and v["qc"] != "yes":
        raise InconsistentVerdictsError(
            f"breaking channel not certified quantum-classical: {report.evidence['qc']}"
        )
    if v["cbc"] == "yes" and v["entanglement_breaking"] == "no":
        raise InconsistentVerdictsError(
            "breaking channel with NPT Choi state: "
            f"{report.evidence['entanglement_breaking']}"
        )
