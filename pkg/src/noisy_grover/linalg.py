"""Dense complex linear algebra on numpy arrays.

Every matrix in the package is a 2-D ``complex128`` ndarray. Functions here
never mutate their inputs.
"""

import numpy as np

HERMITIAN_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats) -> np.ndarray:
    """Kronecker product of a sequence, leftmost factor most significant."""
    mats = list(mats)
    if not mats:
        raise ValueError("kron_all needs at least one factor")
    out = as_matrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_matrix(m))
    return out


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")


def trace(a) -> complex:
    m = as_matrix(a)
    _require_square(m)
    return complex(np.trace(m))


def partial_trace(rho, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``C^dim_a ⊗ C^dim_b``.

    With 1-based double indices the composite row index is
    ``k = (m - 1) * dim_b + mu`` (Latin ``m`` on A, Greek ``mu`` on B). In
    0-based storage this is ``k = m * dim_b + mu``, which is exactly the
    C-order reshape ``(dim_a, dim_b, dim_a, dim_b)`` used below.

    ``keep="A"`` sums over the B indices and returns a ``dim_a x dim_a``
    matrix; ``keep="B"`` sums over A.
    """
    m = as_matrix(rho)
    _require_square(m)
    if dim_a < 1 or dim_b < 1 or m.shape[0] != dim_a * dim_b:
        raise ValueError(
            f"matrix of side {m.shape[0]} does not split as {dim_a} x {dim_b}"
        )
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("mknk->mn", t)
    if keep == "B":
        return np.einsum("kmkn->mn", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def hermitian_deviation(a) -> float:
    """Max-norm of ``a - a†``."""
    m = as_matrix(a)
    _require_square(m)
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_min_eigenvalue(a, tol: float = HERMITIAN_TOL) -> float:
    m = as_matrix(a)
    _require_square(m)
    dev = hermitian_deviation(m)
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3g})")
    return float(np.linalg.eigvalsh(m)[0])


def is_unitary(u, tol: float = 1e-12) -> bool:
    m = as_matrix(u)
    _require_square(m)
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)
