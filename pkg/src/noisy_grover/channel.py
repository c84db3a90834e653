"""Kraus-form quantum channels and local noise on qubit registers."""

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import as_matrix, kron_all
from .state import DensityMatrix

COMPLETENESS_TOL = 1e-10
# Full tensor-product expansion is a test oracle only: 4^n operators of size 2^n.
MAX_EXPANSION_QUBITS = 4

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class NoiseKind(str, enum.Enum):
    DEPOLARIZING = "depolarizing"
    AMPLITUDE_DAMPING = "amplitude-damping"
    PHASE_DAMPING = "phase-damping"
    BIT_FLIP = "bit-flip"
    PHASE_FLIP = "phase-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"

    def __str__(self):
        return self.value

    @property
    def unital(self) -> bool:
        return self is not NoiseKind.AMPLITUDE_DAMPING


@dataclass(frozen=True)
class NoiseFamily:
    """One-parameter one-qubit noise: a family kind and its strength ``alpha``."""

    kind: NoiseKind
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind(self.kind))
        alpha = float(self.alpha)
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"noise parameter alpha={alpha!r} outside [0, 1]")
        object.__setattr__(self, "alpha", alpha)


class KrausChannel:
    """A CPTP map given by Kraus operators ``E_k`` with ``sum E_k† E_k = I``.

    Operators are stored as one read-only ``(K, d, d)`` array. Completeness is
    checked on construction unless ``check=False``.
    """

    def __init__(self, operators, family: NoiseFamily | None = None,
                 check: bool = True, tol: float = COMPLETENESS_TOL):
        ops = np.array([as_matrix(e) for e in operators], dtype=complex)
        if ops.ndim != 3 or ops.shape[0] == 0 or ops.shape[1] != ops.shape[2]:
            raise ValueError("Kraus operators must be a nonempty list of square d x d matrices")
        ops.flags.writeable = False
        self.operators = ops
        self.family = family
        if check:
            dev = self.completeness_deviation()
            if dev > tol:
                raise ValueError(f"Kraus set is not complete (deviation {dev:.3g})")

    @property
    def dim(self) -> int:
        return self.operators.shape[1]

    def __len__(self):
        return self.operators.shape[0]

    def __iter__(self):
        return iter(self.operators)

    def __repr__(self):
        return f"KrausChannel(d={self.dim}, ops={len(self)}, family={self.family!r})"

    def completeness_deviation(self) -> float:
        """Max-norm of ``sum_k E_k† E_k - I``."""
        e = self.operators
        s = np.einsum("kji,kjl->il", e.conj(), e)
        return float(np.max(np.abs(s - np.eye(self.dim))))

    @cached_property
    def superoperator(self) -> np.ndarray:
        """``S[a, c, b, d] = sum_k E[a, b] conj(E[c, d])`` so that
        ``rho'[a, c] = sum_{b, d} S[a, c, b, d] rho[b, d]``."""
        e = self.operators
        s = np.einsum("kab,kcd->acbd", e, e.conj())
        s.flags.writeable = False
        return s


def make_family(family: NoiseFamily) -> KrausChannel:
    """One-qubit Kraus set for ``family``.

    Zero-weight operators (e.g. at ``alpha = 0``) are kept.
    """
    a = family.alpha
    keep, flip = np.sqrt(1.0 - a), np.sqrt(a)
    kind = family.kind
    if kind is NoiseKind.DEPOLARIZING:
        w = np.sqrt(a / 3.0)
        ops = [keep * PAULI_I, w * PAULI_X, w * PAULI_Y, w * PAULI_Z]
    elif kind is NoiseKind.AMPLITUDE_DAMPING:
        ops = [np.diag([1.0, keep]), np.array([[0.0, flip], [0.0, 0.0]])]
    elif kind is NoiseKind.PHASE_DAMPING:
        ops = [np.diag([1.0, keep]), np.diag([0.0, flip])]
    elif kind is NoiseKind.BIT_FLIP:
        ops = [keep * PAULI_I, flip * PAULI_X]
    elif kind is NoiseKind.PHASE_FLIP:
        ops = [keep * PAULI_I, flip * PAULI_Z]
    elif kind is NoiseKind.BIT_PHASE_FLIP:
        ops = [keep * PAULI_I, flip * PAULI_Y]
    else:  # pragma: no cover
        raise ValueError(f"unknown noise kind {kind!r}")
    return KrausChannel(ops, family=family)


def _matrix_of(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)


def apply_kraus(rho, channel, check: bool = True) -> DensityMatrix:
    """Image ``sum_k E_k rho E_k†`` of ``rho`` under ``channel``.

    ``channel`` may be a :class:`KrausChannel` or a plain sequence of
    matrices; the latter is checked for completeness here.
    """
    if not isinstance(channel, KrausChannel):
        channel = KrausChannel(channel)
    m = _matrix_of(rho)
    if m.shape != (channel.dim, channel.dim):
        raise ValueError(
            f"state of shape {m.shape} does not match channel dimension {channel.dim}"
        )
    e = channel.operators
    out = np.einsum("kab,bc,kdc->ad", e, m, e.conj(), optimize=True)
    return DensityMatrix(out, tol=1e-9, check=check)


def expand_local_kraus(family: NoiseFamily, n: int,
                       max_qubits: int = MAX_EXPANSION_QUBITS) -> KrausChannel:
    """All tensor products ``e_{i1} ⊗ ... ⊗ e_{in}`` of the one-qubit operators.

    The index set is the full Cartesian product, so a family with ``m``
    one-qubit operators yields ``m**n`` register operators.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > max_qubits:
        raise ValueError(
            f"full Kraus expansion limited to {max_qubits} qubits, got {n}"
        )
    single = make_family(family).operators
    ops = [kron_all(combo) for combo in itertools.product(single, repeat=n)]
    return KrausChannel(ops, family=family, tol=1e-9)


def apply_to_qubit(m: np.ndarray, superop: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Apply a one-qubit superoperator to ``qubit`` of an ``n``-qubit matrix.

    Qubit 0 is the most significant bit of the basis index, matching the
    leftmost factor of a Kronecker product.
    """
    d = 2**n
    t = m.reshape((2,) * (2 * n))
    out = np.tensordot(superop, t, axes=([2, 3], [qubit, n + qubit]))
    out = np.moveaxis(out, [0, 1], [qubit, n + qubit])
    return out.reshape(d, d)


def local_noise_array(m: np.ndarray, channel: KrausChannel, n: int) -> np.ndarray:
    """Array-level core of :func:`apply_local_noise`; no validation."""
    s = channel.superoperator
    for q in range(n):
        m = apply_to_qubit(m, s, q, n)
    return m


def apply_local_noise(rho, family: NoiseFamily, check: bool = True) -> DensityMatrix:
    """Apply the one-qubit channel of ``family`` independently to every qubit.

    Runs qubit by qubit (0 to n-1). Channels on distinct qubits commute, so
    this equals applying the expanded product Kraus set but needs only the
    one-qubit operators.
    """
    m = _matrix_of(rho)
    n = m.shape[0].bit_length() - 1
    out = local_noise_array(m, make_family(family), n)
    return DensityMatrix(out, tol=1e-9, check=check)
