"""Rerun budgets, competitiveness thresholds and noise-parameter sweeps.

The classical baseline is exhaustive search with an expected ``N/2`` oracle
calls. A quantum run costs ``(pi/4) sqrt(N)`` calls, so at most
``k = floor((N/2) / ((pi/4) sqrt(N)))`` runs fit in the classical budget, and
each run must succeed with probability at least ``p_min`` for ``k`` runs to
reach confidence ``C``.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import NoiseFamily, NoiseKind
from .grover import GroverInstance, run_noisy

DEFAULT_CONFIDENCE = 0.95
DEFAULT_RESOLUTION = 1e-4
COARSE_STEP = 0.005
# Rises smaller than this on the coarse grid are treated as rounding noise.
MONOTONE_SLACK = 1e-12

OK = "ok"
NEVER_COMPETITIVE = "never-competitive"
NON_MONOTONE = "non-monotone-warning"


class NeverCompetitive(ValueError):
    """No number of quantum reruns fits inside the classical oracle budget."""


def rerun_budget(N: int) -> int:
    if N < 2:
        raise ValueError(f"search space size must be at least 2, got {N}")
    return math.floor((N / 2) / (math.pi / 4 * math.sqrt(N)))


def p_min(k: int, confidence: float = DEFAULT_CONFIDENCE) -> float:
    """Smallest single-run success probability with ``1 - (1-p)^k >= confidence``.

    The minimum is attained at ``1 - (1 - C)^(1/k)``.
    """
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence!r}")
    if k < 1:
        raise NeverCompetitive("rerun budget is zero: quantum search never competitive")
    return 1.0 - (1.0 - confidence) ** (1.0 / k)


@dataclass(frozen=True)
class ComplexityBudget:
    N: int
    reruns_k: int
    confidence: float
    p_min: float | None  # None when reruns_k == 0


def complexity_budget(N: int, confidence: float = DEFAULT_CONFIDENCE) -> ComplexityBudget:
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence!r}")
    k = rerun_budget(N)
    pm = p_min(k, confidence) if k >= 1 else None
    return ComplexityBudget(N=N, reruns_k=k, confidence=confidence, p_min=pm)


@dataclass(frozen=True)
class SweepResult:
    """Success probability as a function of the noise parameter for one family."""

    kind: NoiseKind
    n: int
    confidence: float
    points: tuple[tuple[float, float], ...]
    p_min: float | None
    k: int
    threshold_alpha: float | None
    warning: str | None = None

    @property
    def alphas(self) -> np.ndarray:
        return np.array([a for a, _ in self.points])

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.points])


def alpha_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive grid ``start, start+step, ..., <= stop`` with rounded values."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    if stop < start:
        raise ValueError("grid stop is below start")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _evaluate(inst: GroverInstance, kind: NoiseKind, alphas, workers: int,
              validate: bool) -> list[float]:
    def one(a):
        return run_noisy(inst, NoiseFamily(kind, a), validate=validate)

    if workers > 1 and len(alphas) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, alphas))
    return [one(a) for a in alphas]


def first_crossing(points, threshold: float):
    """Locate where a sampled curve first drops below ``threshold``.

    Returns ``(index, warning)``. ``index`` is the first point below the
    threshold (``len(points)`` if none, ``0`` if the curve starts below it).
    ``warning`` is set when the curve rises before that point or comes back
    above the threshold after it; the first downward crossing still defines
    the threshold in that case.
    """
    probs = [p for _, p in points]
    idx = next((i for i, p in enumerate(probs) if p < threshold), len(probs))
    problems = []
    if any(b > a + MONOTONE_SLACK for a, b in zip(probs[: idx], probs[1: idx])):
        problems.append("success probability rises before the crossing")
    if idx < len(probs) and any(p >= threshold for p in probs[idx + 1:]):
        problems.append("curve re-enters the competitive region after the first crossing")
    return idx, ("; ".join(problems) or None)


def threshold_from_points(points, threshold: float) -> float | None:
    """Largest sampled alpha before the first drop below ``threshold``."""
    idx, _ = first_crossing(points, threshold)
    return None if idx == 0 else points[idx - 1][0]


def sweep(n: int, kind, confidence: float = DEFAULT_CONFIDENCE, alphas=None,
          xi: int | None = None, workers: int = 1, validate: bool = True) -> SweepResult:
    """Run the noisy procedure at every alpha in ``alphas`` (sorted ascending).

    The attached threshold is at grid resolution; see :func:`alpha_threshold`
    for a refined value.
    """
    kind = NoiseKind(kind)
    alphas = [0.0, 1.0] if alphas is None else [float(a) for a in alphas]
    if not alphas:
        raise ValueError("alpha grid is empty")
    if any(b < a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alpha grid must be sorted ascending")
    inst = GroverInstance(n, xi)
    budget = complexity_budget(inst.N, confidence)
    probs = _evaluate(inst, kind, alphas, workers, validate)
    points = tuple(zip(alphas, probs))
    threshold, warning = None, None
    if budget.p_min is not None:
        idx, warning = first_crossing(points, budget.p_min)
        threshold = None if idx == 0 else points[idx - 1][0]
    return SweepResult(kind=kind, n=n, confidence=confidence, points=points,
                       p_min=budget.p_min, k=budget.reruns_k,
                       threshold_alpha=threshold, warning=warning)


@dataclass(frozen=True)
class ThresholdResult:
    """Largest tolerable noise parameter for one (size, family) pair."""

    n: int
    N: int
    kind: NoiseKind
    confidence: float
    k: int
    p_min: float | None
    alpha: float | None
    p_at_alpha: float | None
    status: str
    sweep: SweepResult
    warning: str | None = None


def alpha_threshold(n: int, kind, confidence: float = DEFAULT_CONFIDENCE,
                    resolution: float = DEFAULT_RESOLUTION, xi: int | None = None,
                    coarse_step: float = COARSE_STEP, workers: int = 1,
                    validate: bool = True) -> ThresholdResult:
    """Largest alpha whose single-run success stays at or above ``p_min``.

    Scans the whole coarse grid on ``[0, 1]`` (which also checks monotonicity)
    and bisects the first bracketing interval down to ``resolution``.
    ``alpha`` is ``None`` when even the noiseless run misses ``p_min``.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    kind = NoiseKind(kind)
    inst = GroverInstance(n, xi)
    sw = sweep(n, kind, confidence, alpha_grid(0.0, 1.0, coarse_step), xi=xi,
               workers=workers, validate=validate)
    common = dict(n=n, N=inst.N, kind=kind, confidence=confidence, k=sw.k,
                  p_min=sw.p_min, sweep=sw)
    if sw.p_min is None:
        return ThresholdResult(alpha=None, p_at_alpha=None, status=NEVER_COMPETITIVE, **common)
    idx, warning = first_crossing(sw.points, sw.p_min)
    if idx == 0:
        return ThresholdResult(alpha=None, p_at_alpha=sw.points[0][1],
                               status=NEVER_COMPETITIVE, **common)
    lo, p_lo = sw.points[idx - 1]
    if idx < len(sw.points):
        hi = sw.points[idx][0]
        while hi - lo > resolution:
            mid = 0.5 * (lo + hi)
            p_mid = run_noisy(inst, NoiseFamily(kind, mid), validate=validate)
            if p_mid >= sw.p_min:
                lo, p_lo = mid, p_mid
            else:
                hi = mid
    return ThresholdResult(alpha=lo, p_at_alpha=p_lo,
                           status=NON_MONOTONE if warning else OK,
                           warning=warning, **common)
