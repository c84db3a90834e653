"""Grover search as unitaries on a density matrix, with local noise per iteration."""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .channel import NoiseFamily, local_noise_array, make_family
from .state import DensityMatrix, density_from_pure, success_probability, uniform_superposition

STEP_TOL = 1e-9


@dataclass(frozen=True)
class GroverInstance:
    """Search over ``N = 2**n`` items with one marked index ``xi``.

    ``xi`` defaults to ``2**(n-1)``, the middle of the search space.
    """

    n: int
    xi: int | None = None
    N: int = field(init=False)
    iterations: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        N = 2**self.n
        xi = N // 2 if self.xi is None else int(self.xi)
        if not 0 <= xi < N:
            raise ValueError(f"marked index {xi} outside [0, {N})")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "N", N)
        # floor, not round: this is the count the noisy procedure runs.
        object.__setattr__(self, "iterations", math.floor(math.pi / 4 * math.sqrt(N)))

    @property
    def theta(self) -> float:
        """Angle with ``sin(theta) = 1/sqrt(N)``."""
        return math.asin(1.0 / math.sqrt(self.N))


def _readonly(a):
    a.flags.writeable = False
    return a


@lru_cache(maxsize=64)
def _oracle(n: int, xi: int) -> np.ndarray:
    o = np.eye(2**n, dtype=complex)
    o[xi, xi] = -1.0
    return _readonly(o)


@lru_cache(maxsize=64)
def _diffusion(n: int) -> np.ndarray:
    N = 2**n
    d = np.full((N, N), 2.0 / N, dtype=complex) - np.eye(N)
    return _readonly(d)


@lru_cache(maxsize=64)
def _step(n: int, xi: int) -> np.ndarray:
    return _readonly(_diffusion(n) @ _oracle(n, xi))


def oracle_matrix(inst: GroverInstance) -> np.ndarray:
    """Phase oracle ``I - 2|xi><xi|``.

    Acts on the register directly; no ancilla qubit is modelled.
    """
    return _oracle(inst.n, inst.xi)


def diffusion_matrix(n: int) -> np.ndarray:
    """Inversion about the mean, ``2|psi><psi| - I`` for the flat state ``psi``."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return _diffusion(n)


def grover_step(inst: GroverInstance) -> np.ndarray:
    """Grover iteration ``G = D @ O``. Cached and read-only."""
    return _step(inst.n, inst.xi)


def closed_form_success(inst: GroverInstance, k: int) -> float:
    """Noiseless success probability after ``k`` iterations, ``sin^2((2k+1) theta)``."""
    if k < 0:
        raise ValueError("iteration count must be non-negative")
    return math.sin((2 * k + 1) * inst.theta) ** 2


def closed_form_amplitudes(inst: GroverInstance, k: int) -> tuple[float, float]:
    """Amplitudes ``(alpha_k, beta_k)`` on each unmarked state and on the marked one."""
    angle = (2 * k + 1) * inst.theta
    return math.cos(angle) / math.sqrt(inst.N - 1), math.sin(angle)


def conjugate_by_step(m: np.ndarray, xi: int) -> np.ndarray:
    """``G m G†`` in O(N^2) using the structure of ``G = D O``.

    ``O`` flips the sign of row and column ``xi``. With ``D = (2/N) J - I``
    (``J`` all ones), ``D X D = X - (2/N)(r 1ᵀ + 1 cᵀ) + (4/N^2) S J`` where
    ``r``/``c`` are row/column sums of ``X`` and ``S`` its total sum.
    """
    N = m.shape[0]
    x = m.copy()
    x[xi, :] *= -1
    x[:, xi] *= -1
    r = x.sum(axis=1)
    c = x.sum(axis=0)
    s = r.sum()
    x -= (2.0 / N) * (r[:, None] + c[None, :])
    x += (4.0 / N**2) * s
    return x


def _checked(m: np.ndarray) -> DensityMatrix:
    return DensityMatrix(m, tol=STEP_TOL, eig_floor=-STEP_TOL)


def run_noisy_state(inst: GroverInstance, family: NoiseFamily,
                    validate: bool = True) -> DensityMatrix:
    """Final register state of the noisy Grover procedure.

    Starts from ``H^n |0..0>`` (the flat state), then each iteration applies
    ``G`` followed by the local noise channel. No noise is applied after the
    initial Hadamards or before measurement.

    Raises :class:`~noisy_grover.state.DensityValidationError` if ``validate``
    and any intermediate state breaks the density-matrix invariants.
    """
    channel = make_family(family)
    m = np.array(density_from_pure(uniform_superposition(inst.n)).matrix)
    for _ in range(inst.iterations):
        m = conjugate_by_step(m, inst.xi)
        if validate:
            _checked(m)
        m = local_noise_array(m, channel, inst.n)
        if validate:
            _checked(m)
    return DensityMatrix(m, tol=STEP_TOL, eig_floor=-STEP_TOL, check=validate)


def run_noisy(inst: GroverInstance, family: NoiseFamily, validate: bool = True) -> float:
    """Probability of measuring the marked element after the noisy procedure."""
    return success_probability(run_noisy_state(inst, family, validate), inst.xi)
