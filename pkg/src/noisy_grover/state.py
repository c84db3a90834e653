"""Pure and mixed qubit-register states and computational-basis measurement."""

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, hermitian_deviation

TRACE_TOL = 1e-10
HERMITIAN_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-9
NORM_TOL = 1e-10


class DensityValidationError(ValueError):
    """A matrix that should be a density matrix breaks one of its invariants."""


def _qubit_count(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised state vector over ``n`` qubits (qubit 0 is the leftmost bit)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be a 1-D vector")
        _qubit_count(amps.size)
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def n(self) -> int:
        return _qubit_count(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityReport:
    """Measured deviations of a matrix from the density-matrix invariants."""

    hermitian_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    hermitian_ok: bool
    trace_ok: bool
    psd_ok: bool

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.trace_ok and self.psd_ok

    def describe(self) -> str:
        return (
            f"hermitian dev={self.hermitian_deviation:.3g} "
            f"({'ok' if self.hermitian_ok else 'FAIL'}), "
            f"trace dev={self.trace_deviation:.3g} "
            f"({'ok' if self.trace_ok else 'FAIL'}), "
            f"min eig={self.min_eigenvalue:.3g} "
            f"({'ok' if self.psd_ok else 'FAIL'})"
        )


def validate_density(
    rho, tol: float = HERMITIAN_TOL, eig_floor: float = EIGENVALUE_FLOOR
) -> DensityReport:
    """Check Hermiticity, unit trace and positivity of ``rho``.

    Failures are reported, not raised. The eigenvalue test runs on the
    Hermitian part ``(rho + rho†) / 2`` so it is defined even when the
    Hermiticity check fails.
    """
    m = as_matrix(getattr(rho, "matrix", rho))
    herm = hermitian_deviation(m)
    tr_dev = abs(complex(np.trace(m)) - 1.0)
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    return DensityReport(
        hermitian_deviation=herm,
        trace_deviation=tr_dev,
        min_eigenvalue=min_eig,
        hermitian_ok=herm <= tol,
        trace_ok=tr_dev <= tol,
        psd_ok=min_eig >= eig_floor,
    )


def check_density(m: np.ndarray, tol: float = HERMITIAN_TOL,
                  eig_floor: float = EIGENVALUE_FLOOR) -> None:
    """Raise :class:`DensityValidationError` unless ``m`` is a density matrix.

    Positivity is tested by a Cholesky factorisation of ``m - eig_floor * I``,
    which is cheaper than an eigensolve; the full report is computed only on
    failure.
    """
    d = m.shape[0]
    ok = hermitian_deviation(m) <= tol and abs(complex(np.trace(m)) - 1.0) <= tol
    if ok:
        try:
            np.linalg.cholesky((m + m.conj().T) / 2 - eig_floor * np.eye(d))
        except np.linalg.LinAlgError:
            ok = False
    if not ok:
        report = validate_density(m, tol, eig_floor)
        raise DensityValidationError("not a valid density matrix: " + report.describe())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix over ``n`` qubits.

    Construction raises :class:`DensityValidationError` if ``matrix`` is not
    Hermitian, trace one and positive semi-definite within the given
    tolerances. Pass ``check=False`` to skip the (O(d^3)) eigenvalue test
    for matrices known to be valid by construction.
    """

    matrix: np.ndarray
    tol: float = HERMITIAN_TOL
    eig_floor: float = EIGENVALUE_FLOOR
    check: bool = True

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        _qubit_count(m.shape[0])
        if self.check:
            check_density(m, self.tol, self.eig_floor)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def n(self) -> int:
        return _qubit_count(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        d = 2**n
        return cls(np.eye(d) / d)


def basis_state(n: int, index: int) -> PureState:
    if n < 1:
        raise ValueError("need at least one qubit")
    d = 2**n
    if not 0 <= index < d:
        raise ValueError(f"basis index {index} outside [0, {d})")
    amps = np.zeros(d, dtype=complex)
    amps[index] = 1.0
    return PureState(amps)


def uniform_superposition(n: int) -> PureState:
    # Normalisation is 1/sqrt(2^n) over all 2^n basis states.
    if n < 1:
        raise ValueError("need at least one qubit")
    d = 2**n
    return PureState(np.full(d, 1.0 / np.sqrt(d), dtype=complex))


def density_from_pure(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def success_probability(rho, xi: int) -> float:
    """Probability of reading basis state ``xi``: the diagonal entry ``rho[xi, xi]``."""
    m = getattr(rho, "matrix", rho)
    d = m.shape[0]
    if not 0 <= xi < d:
        raise ValueError(f"marked index {xi} outside [0, {d})")
    return float(np.real(m[xi, xi]))
