"""Quantum channel representations and conversions.

Three interchangeable representations are supported:

* ``KrausChannel`` -- an ordered list of Kraus operators K_n with
  sum_n K_n^dag K_n = I; the channel acts as rho -> sum_n K_n rho K_n^dag.
* ``ChoiMatrix`` -- rho_Phi = (Phi otimes id)(|beta><beta|) with
  |beta> = (1/sqrt d) sum_i |ii>. Index order is output-factor-first:
  entry ((u, v), (r, s)) couples channel-output indices u, r with ancilla
  indices v, s, and a d^2-vector flattens as u * d + v (C order).
* ``QubitAffine`` -- the Bloch-ball action r -> M r + n of a qubit channel.

Kraus lists are pruned through the Choi matrix whenever composition pushes
the operator count above d^2, which always suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotPOVMError,
    NotPSDError,
    NotTracePreservingError,
    ParameterOutOfRangeError,
)
from .linalg import PAULIS, TOL_HERM, TOL_PSD, hermiticity_defect, partial_trace
from .states import complex_matrix_from_json, complex_matrix_to_json

TOL_CPTP = 1e-9      # max-abs deviation of sum K^dag K from the identity
RANK_CUTOFF = 1e-10  # Choi eigenvalues below this are treated as zero


@dataclass(frozen=True)
class KrausChannel:
    """A CPTP map given by Kraus operators; validated at construction.

    Channels failing the completeness check are rejected, never silently
    renormalized.
    """

    dim: int
    kraus_ops: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.kraus_ops:
            raise NotTracePreservingError("a channel needs at least one Kraus operator")
        for k in self.kraus_ops:
            if k.shape != (self.dim, self.dim):
                raise DimensionMismatchError(
                    f"Kraus operator of shape {k.shape} in a dim-{self.dim} channel"
                )
        comp = sum(k.conj().T @ k for k in self.kraus_ops)
        defect = float(np.abs(comp - np.eye(self.dim)).max())
        if defect > TOL_CPTP:
            raise NotTracePreservingError(
                f"sum K^dag K deviates from identity by {defect:.3e} (> {TOL_CPTP:.0e})"
            )

    @property
    def n_ops(self) -> int:
        return len(self.kraus_ops)


def make_channel(kraus_ops, dim: int | None = None) -> KrausChannel:
    """Build a KrausChannel from any iterable of array-likes."""
    ops = tuple(np.asarray(k, dtype=complex) for k in kraus_ops)
    if dim is None:
        if not ops:
            raise NotTracePreservingError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
    return KrausChannel(dim=dim, kraus_ops=ops)


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi state of a channel: PSD with Tr_out rho_Phi = I/d."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        d = self.dim
        if self.matrix.shape != (d * d, d * d):
            raise DimensionMismatchError(
                f"Choi matrix of a dim-{d} channel must be {d * d}x{d * d}, "
                f"got {self.matrix.shape}"
            )
        if hermiticity_defect(self.matrix) > TOL_HERM:
            raise NotPSDError("Choi matrix is not Hermitian within tolerance")
        w_min = float(np.linalg.eigvalsh(self.matrix).min())
        if w_min < -TOL_PSD:
            raise NotPSDError(f"Choi matrix has eigenvalue {w_min:.3e} < -{TOL_PSD:.0e}")
        reduced = partial_trace(self.matrix, d, keep=1)
        defect = float(np.abs(reduced - np.eye(d) / d).max())
        if defect > 1e-9:
            raise NotTracePreservingError(
                f"Choi partial trace deviates from I/d by {defect:.3e}"
            )


@dataclass(frozen=True)
class QubitAffine:
    """Bloch-ball action r -> m @ r + shift of a qubit channel.

    Mapping the ball into itself is necessary but not sufficient for
    complete positivity; `affine_to_kraus` validates CPTP via the Choi
    matrix when an affine pair is promoted to a channel.
    """

    m: np.ndarray
    shift: np.ndarray

    def __post_init__(self) -> None:
        if np.asarray(self.m).shape != (3, 3):
            raise DimensionMismatchError("m must be 3x3")
        if np.asarray(self.shift).shape != (3,):
            raise DimensionMismatchError("shift must be a 3-vector")


def apply(channel: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """sum_n K_n rho K_n^dag. Linear; rho may be any matrix of matching size."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.dim, channel.dim):
        raise DimensionMismatchError(
            f"state shape {rho.shape} does not match channel dimension {channel.dim}"
        )
    kstack = np.stack(channel.kraus_ops)
    return np.einsum("nij,jk,nlk->il", kstack, rho, kstack.conj())


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """Channel composition outer(inner(.)); Kraus list is all products.

    The product list is re-extracted through the Choi matrix when it grows
    beyond d^2 operators.
    """
    if outer.dim != inner.dim:
        raise DimensionMismatchError(
            f"cannot compose dim {outer.dim} with dim {inner.dim}"
        )
    ops = [a @ b for a in outer.kraus_ops for b in inner.kraus_ops]
    result = make_channel(ops, dim=outer.dim)
    if result.n_ops > outer.dim**2:
        result = choi_to_kraus(kraus_to_choi(result))
    return result


def iterate(channel: KrausChannel, n: int) -> KrausChannel:
    """n-fold composition of a channel with itself, n >= 1."""
    if n < 1:
        raise ParameterOutOfRangeError(f"need n >= 1, got {n}")
    power = channel
    for _ in range(n - 1):
        power = compose(power, channel)
    return power


def kraus_to_choi(channel: KrausChannel) -> ChoiMatrix:
    """(Phi otimes id)(|beta><beta|) = (1/d) sum_n vec(K_n) vec(K_n)^dag."""
    d = channel.dim
    vecs = np.stack([k.reshape(d * d) for k in channel.kraus_ops])
    mat = np.einsum("ni,nj->ij", vecs, vecs.conj()) / d
    return ChoiMatrix(dim=d, matrix=mat)


def choi_to_kraus(choi: ChoiMatrix) -> KrausChannel:
    """Canonical Kraus operators from the Choi eigendecomposition.

    Eigenvalues below RANK_CUTOFF are dropped, so the result has at most
    d^2 operators; round-tripping through kraus_to_choi reproduces the
    Choi matrix to within the PSD tolerance.
    """
    d = choi.dim
    w, v = np.linalg.eigh(choi.matrix)
    if w.min() < -TOL_PSD:
        raise NotPSDError(f"Choi matrix has eigenvalue {w.min():.3e}")
    ops = [
        np.sqrt(d * lam) * v[:, i].reshape(d, d)
        for i, lam in enumerate(w)
        if lam > RANK_CUTOFF
    ]
    return make_channel(ops, dim=d)


def transfer_matrix(channel: KrausChannel) -> np.ndarray:
    """The d^2 x d^2 matrix acting on vec(rho): sum_n K_n otimes conj(K_n)."""
    k = np.stack(channel.kraus_ops)
    d = channel.dim
    t = np.einsum("nur,nvs->uvrs", k, k.conj())
    return t.reshape(d * d, d * d)


def affine_from_kraus(channel: KrausChannel) -> QubitAffine:
    """Affine Bloch representation M_jk = Tr[s_j Phi(s_k)]/2, n_j = Tr[s_j Phi(I)]/2."""
    if channel.dim != 2:
        raise DimensionMismatchError(
            f"affine representation is defined for qubits, got dim {channel.dim}"
        )
    m = np.empty((3, 3))
    for k, sk in enumerate(PAULIS):
        out = apply(channel, sk)
        for j, sj in enumerate(PAULIS):
            m[j, k] = 0.5 * np.trace(sj @ out).real
    phi_id = apply(channel, np.eye(2, dtype=complex))
    shift = np.array([0.5 * np.trace(sj @ phi_id).real for sj in PAULIS])
    return QubitAffine(m=m, shift=shift)


def _affine_image(rep: QubitAffine, x: np.ndarray) -> np.ndarray:
    """Linear extension of the affine action to arbitrary 2x2 matrices."""
    tr = complex(np.trace(x))
    s = np.array([np.trace(x @ sigma) for sigma in PAULIS])
    out_vec = rep.m @ s + tr * rep.shift
    out = tr * 0.5 * np.eye(2, dtype=complex)
    for comp, sigma in zip(out_vec, PAULIS):
        out += 0.5 * comp * sigma
    return out


def affine_to_kraus(rep: QubitAffine) -> KrausChannel:
    """Promote an affine pair to a Kraus channel via its Choi matrix.

    Raises NotPSDError when (m, shift) is not completely positive.
    """
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[i, j] = 1.0
            choi += 0.5 * np.kron(_affine_image(rep, unit), unit)
    return choi_to_kraus(ChoiMatrix(dim=2, matrix=choi))


def affine_iterate(rep: QubitAffine, n: int) -> QubitAffine:
    """Affine pair of the n-th channel power: (M^n, sum_{k<n} M^k shift)."""
    if n < 1:
        raise ParameterOutOfRangeError(f"need n >= 1, got {n}")
    m_pow = np.linalg.matrix_power(rep.m, n)
    acc = np.zeros(3)
    m_k = np.eye(3)
    for _ in range(n):
        acc = acc + m_k @ rep.shift
        m_k = m_k @ rep.m
    return QubitAffine(m=m_pow, shift=acc)


# --- constructors -----------------------------------------------------------


def identity_channel(d: int) -> KrausChannel:
    """The do-nothing channel."""
    return make_channel([np.eye(d, dtype=complex)], dim=d)


def unitary_channel(u: np.ndarray) -> KrausChannel:
    """Channel rho -> U rho U^dag for a unitary U."""
    u = np.asarray(u, dtype=complex)
    return make_channel([u], dim=u.shape[0])


def dephasing_channel(d: int) -> KrausChannel:
    """Complete dephasing: rho -> sum_i <i|rho|i> |i><i|."""
    ops = []
    for i in range(d):
        p = np.zeros((d, d), dtype=complex)
        p[i, i] = 1.0
        ops.append(p)
    return make_channel(ops, dim=d)


def partial_dephasing_channel(d: int, q: float) -> KrausChannel:
    """rho -> q rho + (1 - q) Delta(rho); scales every coherence by q."""
    if not 0.0 <= q <= 1.0:
        raise ParameterOutOfRangeError(f"need q in [0, 1], got {q}")
    ops = [np.sqrt(q) * np.eye(d, dtype=complex)]
    for i in range(d):
        p = np.zeros((d, d), dtype=complex)
        p[i, i] = np.sqrt(1.0 - q)
        ops.append(p)
    return make_channel([k for k in ops if np.abs(k).max() > 0.0], dim=d)


def gad_channel(p: float, t: float) -> KrausChannel:
    """Generalized amplitude damping on a qubit.

    Populations relax toward the fixed point diag(t, 1-t) while coherences
    shrink by sqrt(p) per application; the Bloch action is
    diag(sqrt p, sqrt p, p) with shift (0, 0, (1-p)(2t-1)). Iterating n
    times gives the same family member with p replaced by p^n.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRangeError(f"need p in [0, 1], got {p}")
    if not 0.0 <= t <= 1.0:
        raise ParameterOutOfRangeError(f"need t in [0, 1], got {t}")
    sp = np.sqrt(p)
    sg = np.sqrt(1.0 - p)
    ops = [
        np.sqrt(t) * np.array([[1.0, 0.0], [0.0, sp]], dtype=complex),
        np.sqrt(t) * np.array([[0.0, sg], [0.0, 0.0]], dtype=complex),
        np.sqrt(1.0 - t) * np.array([[sp, 0.0], [0.0, 1.0]], dtype=complex),
        np.sqrt(1.0 - t) * np.array([[0.0, 0.0], [sg, 0.0]], dtype=complex),
    ]
    return make_channel([k for k in ops if np.abs(k).max() > 0.0], dim=2)


def y_to_x_channel(alpha: float) -> KrausChannel:
    """Qubit channel with Bloch action r -> (alpha r_y, 0, 0), |alpha| <= 1.

    Its square is the totally depolarizing map to I/2, so two applications
    destroy all coherence even though one does not. The Kraus set below is
    an explicitly incoherent decomposition (each operator is diagonal or
    antidiagonal), which the canonical Choi-extracted set is not.
    """
    if abs(alpha) > 1.0:
        raise ParameterOutOfRangeError(f"need |alpha| <= 1, got {alpha}")
    w_plus = (1.0 + alpha) / 4.0
    w_minus = (1.0 - alpha) / 4.0
    ops = [
        np.sqrt(w_plus) * np.array([[1.0, 0.0], [0.0, -1.0j]]),
        np.sqrt(w_minus) * np.array([[1.0, 0.0], [0.0, 1.0j]]),
        np.sqrt(w_plus) * np.array([[0.0, -1.0j], [1.0, 0.0]]),
        np.sqrt(w_minus) * np.array([[0.0, 1.0j], [1.0, 0.0]]),
    ]
    return make_channel([k for k in ops if np.abs(k).max() > 0.0], dim=2)


def cbc_from_povm(effects) -> KrausChannel:
    """Measure-and-prepare channel rho -> sum_i |i><i| Tr(rho F_i).

    effects must be PSD matrices summing to the identity. The Kraus set is
    K_ik = sqrt(lambda_ik) |i><phi_ik| from the eigendecomposition of each
    effect, so every Kraus branch outputs a diagonal state.
    """
    effects = [np.asarray(f, dtype=complex) for f in effects]
    if not effects:
        raise NotPOVMError("need at least one effect")
    d = effects[0].shape[0]
    total = np.zeros((d, d), dtype=complex)
    for i, f in enumerate(effects):
        if f.shape != (d, d):
            raise NotPOVMError(f"effect {i} has shape {f.shape}, expected {(d, d)}")
        if hermiticity_defect(f) > TOL_HERM:
            raise NotPOVMError(f"effect {i} is not Hermitian within tolerance")
        w_min = float(np.linalg.eigvalsh(f).min())
        if w_min < -TOL_PSD:
            raise NotPOVMError(f"effect {i} has eigenvalue {w_min:.3e}")
        total += f
    defect = float(np.abs(total - np.eye(d)).max())
    if defect > 1e-9:
        raise NotPOVMError(f"effects sum deviates from identity by {defect:.3e}")
    ops = []
    if len(effects) > d:
        raise NotPOVMError(
            f"{len(effects)} effects cannot prepare distinct basis states in dim {d}"
        )
    for i, f in enumerate(effects):
        w, v = np.linalg.eigh(f)
        for lam, phi in zip(w, v.T):
            if lam <= RANK_CUTOFF:
                continue
            k = np.zeros((d, d), dtype=complex)
            k[i, :] = np.sqrt(lam) * phi.conj()
            ops.append(k)
    return make_channel(ops, dim=d)


def kron_channel(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """Tensor product channel acting on dim first.dim * second.dim."""
    ops = [np.kron(a, b) for a in first.kraus_ops for b in second.kraus_ops]
    return make_channel(ops, dim=first.dim * second.dim)


# --- random instances (reproducible test corpora) ---------------------------


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_channel(d: int, kraus_rank: int, rng: np.random.Generator) -> KrausChannel:
    """Haar-random CPTP channel from a Stinespring isometry of given rank."""
    u = haar_unitary(d * kraus_rank, rng)
    v = u[:, :d]  # isometry C^d -> C^(d k)
    ops = [v[i * d:(i + 1) * d, :] for i in range(kraus_rank)]
    return make_channel(ops, dim=d)


def random_povm(d: int, n_effects: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Random POVM from normalized Wishart blocks."""
    blocks = []
    for _ in range(n_effects):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        blocks.append(g @ g.conj().T)
    total = sum(blocks)
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    return [inv_sqrt @ b @ inv_sqrt for b in blocks]


def random_incoherent_channel(
    d: int, rng: np.random.Generator, n_components: int = 3
) -> KrausChannel:
    """Random channel with an explicitly incoherent Kraus pattern.

    Convex mixture of diagonal-unitary, permutation, partial-dephasing and
    measure-and-prepare pieces; every Kraus operator has at most one nonzero
    entry per column, so the mixture is incoherent by construction.
    """
    weights = rng.dirichlet(np.ones(n_components))
    ops: list[np.ndarray] = []
    for w in weights:
        kind = rng.integers(0, 4)
        if kind == 0:
            u = np.diag(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=d)))
            part = [u]
        elif kind == 1:
            perm = rng.permutation(d)
            u = np.zeros((d, d), dtype=complex)
            u[perm, np.arange(d)] = 1.0
            part = [u]
        elif kind == 2:
            part = list(partial_dephasing_channel(d, float(rng.uniform())).kraus_ops)
        else:
            part = list(cbc_from_povm(random_povm(d, d, rng)).kraus_ops)
        ops.extend(np.sqrt(w) * k for k in part)
    return make_channel(ops, dim=d)


# --- JSON wire format --------------------------------------------------------
#
# {"dim": d, "kraus": [matrix, ...]}          explicit Kraus operators
# {"affine": {"m": [[...]], "n": [...]}}      qubit affine pair
# {"gad": {"p": p, "t": t}}                   generalized amplitude damping
# {"povm": [matrix, ...]}                     measure-and-prepare channel
#
# Exactly one of the kraus/affine/gad/povm keys must be present; complex
# entries are [re, im] pairs.

_CHANNEL_KEYS = ("kraus", "affine", "gad", "povm")


def channel_to_json(channel: KrausChannel) -> dict:
    return {
        "dim": channel.dim,
        "kraus": [complex_matrix_to_json(k) for k in channel.kraus_ops],
    }


def channel_from_json(obj: dict) -> KrausChannel:
    """Parse the JSON channel format, dispatching on the single form key."""
    if not isinstance(obj, dict):
        raise ValueError("channel JSON must be an object")
    present = [k for k in _CHANNEL_KEYS if k in obj]
    if len(present) != 1:
        raise ValueError(
            f'channel JSON needs exactly one of {_CHANNEL_KEYS}, found {present or "none"}'
        )
    key = present[0]
    if key == "kraus":
        ops = [complex_matrix_from_json(k) for k in obj["kraus"]]
        channel = make_channel(ops)
        if "dim" in obj and int(obj["dim"]) != channel.dim:
            raise ValueError(
                f'"dim" = {obj["dim"]} does not match Kraus size {channel.dim}'
            )
        return channel
    if key == "affine":
        form = obj["affine"]
        if "m" not in form or "n" not in form:
            raise ValueError('"affine" needs keys "m" and "n"')
        rep = QubitAffine(
            m=np.asarray(form["m"], dtype=float), shift=np.asarray(form["n"], dtype=float)
        )
        return affine_to_kraus(rep)
    if key == "gad":
        form = obj["gad"]
        if "p" not in form or "t" not in form:
            raise ValueError('"gad" needs keys "p" and "t"')
        return gad_channel(float(form["p"]), float(form["t"]))
    effects = [complex_matrix_from_json(f) for f in obj["povm"]]
    return cbc_from_povm(effects)
