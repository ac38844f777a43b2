"""Attack-propagation analytics: stage probabilities, Markov chains, and TTC.

A path's per-domain scores become stage attack probabilities (growing
with the stage index under the exponential law), which in turn drive a
birth-death Markov chain over the compromise states S_0 .. S_m:

    row S_0:              stay 1 - a_1,          forward a_1
    row S_j (1 <= j < m): back d*(1 - a_{j+1}),
                          stay a_{j+1}*d + (1 - a_{j+1})*(1 - d),
                          forward a_{j+1}*(1 - d)
    row S_m:              back d,                stay 1 - d

The no-detour realization probability W is the product of the forward
stage probabilities; first-passage analytics (expected steps, hitting
probability within a horizon) pin S_m absorbing, and a seeded Monte
Carlo simulator cross-checks them.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import AnalysisConfig, ProbabilityLaw
from .errors import (
    EmptyPathError,
    InvalidConfigError,
    NumericalError,
    UnreachableTargetError,
)
from .model import AttackPath, ThreatModel, resolve_score

# Philox fills its output buffer in blocks of four 64-bit draws;
# advance() repositions in whole blocks, so worker slices must start at
# multiples of this to reproduce the draws of an unsliced run.
_PHILOX_BLOCK = 4


@dataclass(eq=False)
class MarkovChain:
    """States S_0 .. S_m with a row-stochastic transition matrix.

    ``stage_probs`` holds the raw (ungated) attack probabilities used
    during construction, one per stage.
    """

    states: tuple[str, ...]
    matrix: np.ndarray
    stage_probs: tuple[float, ...] = ()

    @property
    def target(self) -> int:
        """Index of the target state S_m."""
        return len(self.states) - 1

    def forward_probabilities(self) -> np.ndarray:
        """Super-diagonal entries: the forward edge out of each state."""
        return np.diag(self.matrix, k=1).copy()


@dataclass
class SimulationReport:
    """Outcome of a batch of seeded first-passage walks."""

    trials: int
    horizon: int
    seed: int
    hits: int
    hit_fraction: float
    ttc_samples: np.ndarray = field(repr=False)
    mean_ttc: float | None
    p50: float | None
    p90: float | None
    p99: float | None

    def to_dict(self, include_samples: bool = False) -> dict:
        out = {
            "trials": self.trials,
            "horizon": self.horizon,
            "seed": self.seed,
            "hits": self.hits,
            "hit_fraction": self.hit_fraction,
            "mean_ttc": self.mean_ttc,
            "p50": self.p50,
            "p90": self.p90,
            "p99": self.p99,
        }
        if include_samples:
            out["ttc_samples"] = self.ttc_samples.tolist()
        return out


# ---------------------------------------------------------------------------
# Stage probabilities
# ---------------------------------------------------------------------------

def stage_attack_probability(
    stage_index: int, score: float, config: AnalysisConfig
) -> float:
    """Attack probability for a stage with the given index and domain score.

    Exponential law: ``1 - exp(-k * i * f / normalization)``; linear
    law: ``f / normalization`` independent of the index.  Scores above
    the normalization constant are allowed but warn.

    Raises:
        ValueError: stage_index < 1 or negative score.
        InvalidConfigError: non-positive coefficient or normalization.
    """
    if stage_index < 1:
        raise ValueError(f"stage index must be >= 1, got {stage_index}")
    if score < 0:
        raise ValueError(f"score must be non-negative, got {score}")
    k, norm = config.exponent_coefficient, config.normalization
    if k <= 0 or norm <= 0:
        raise InvalidConfigError("exponent coefficient and normalization must be positive")
    if score > norm:
        warnings.warn(
            f"score {score} exceeds normalization constant {norm}", stacklevel=2
        )
    if config.probability_law is ProbabilityLaw.LINEAR:
        return min(score / norm, 1.0)
    return 1.0 - math.exp(-k * stage_index * score / norm)


def _stage_scores(path: AttackPath, model: ThreatModel, config: AnalysisConfig) -> list[float]:
    return [
        resolve_score(model, stage.view_domain, config.score_set, config.rounding)
        for stage in path.stages
    ]


def stage_attack_probabilities(
    path: AttackPath, model: ThreatModel, config: AnalysisConfig | None = None
) -> list[float]:
    """Raw (ungated) attack probability per stage of a path."""
    config = config if config is not None else model.config
    scores = _stage_scores(path, model, config)
    return [
        stage_attack_probability(path.first_stage_index + j, f, config)
        for j, f in enumerate(scores)
    ]


def stage_forward_probabilities(
    path: AttackPath, model: ThreatModel, config: AnalysisConfig | None = None
) -> list[float]:
    """Forward probability per stage position, defense gating applied.

    Stage position j carries index ``first_stage_index + j - 1`` and the
    score of its view domain.  Intermediate positions (2 <= j <= m-1)
    are gated by (1 - d); the final position is gated only when
    ``defence_on_final_stage`` is set.  The first position is never
    gated, and a single-stage path is never gated.
    """
    config = config if config is not None else model.config
    if not path.stages:
        raise EmptyPathError(f"path {path.id!r} has no stages")
    m = len(path.stages)
    probs = []
    for j, a in enumerate(stage_attack_probabilities(path, model, config), start=1):
        gated = j >= 2 and (j <= m - 1 or config.defence_on_final_stage)
        if gated:
            a *= 1.0 - config.defence_at(j)
        probs.append(a)
    return probs


def realization_probability(
    path: AttackPath, model: ThreatModel, config: AnalysisConfig | None = None
) -> float:
    """No-detour attack realization probability W: the product of the
    forward stage probabilities."""
    return math.prod(stage_forward_probabilities(path, model, config))


# ---------------------------------------------------------------------------
# Chain construction and validation
# ---------------------------------------------------------------------------

def build_chain(
    path: AttackPath, model: ThreatModel, config: AnalysisConfig | None = None
) -> MarkovChain:
    """Build the birth-death transition chain for a path.

    State S_0 is the uncompromised start; S_j means stage j succeeded;
    S_m is the target.  The matrix follows the row formulas in the
    module docstring, with a_j the raw attack probability of the stage
    leaving S_{j-1}.
    """
    config = config if config is not None else model.config
    if not path.stages:
        raise EmptyPathError(f"path {path.id!r} has no stages")
    a = stage_attack_probabilities(path, model, config)
    m = len(a)
    matrix = np.zeros((m + 1, m + 1))
    matrix[0, 0] = 1.0 - a[0]
    matrix[0, 1] = a[0]
    for row in range(1, m):
        attack = a[row]
        d = config.defence_at(row + 1)
        matrix[row, row - 1] = d * (1.0 - attack)
        matrix[row, row] = attack * d + (1.0 - attack) * (1.0 - d)
        matrix[row, row + 1] = attack * (1.0 - d)
    d_final = config.defence_at(m)
    matrix[m, m - 1] = d_final
    matrix[m, m] = 1.0 - d_final
    states = ("S0",) + tuple(
        f"S{j}:{stage.code}" for j, stage in enumerate(path.stages, start=1)
    )
    return MarkovChain(states=states, matrix=matrix, stage_probs=tuple(a))


def validate_stochastic(chain: MarkovChain, tol: float = 1e-12) -> list[str]:
    """Return violations of row-stochasticity; empty means valid."""
    violations: list[str] = []
    matrix = np.asarray(chain.matrix, dtype=float)
    n = len(chain.states)
    if matrix.shape != (n, n):
        violations.append(f"matrix shape {matrix.shape} does not match {n} states")
        return violations
    for i in range(n):
        row_sum = float(matrix[i].sum())
        if abs(row_sum - 1.0) > tol:
            violations.append(f"row {i} ({chain.states[i]}) sums to {row_sum!r}, not 1")
        for j in range(n):
            value = float(matrix[i, j])
            if not 0.0 <= value <= 1.0:
                violations.append(f"entry [{i}, {j}] = {value!r} out of [0, 1]")
    return violations


# ---------------------------------------------------------------------------
# First-passage analytics
# ---------------------------------------------------------------------------

def _absorbing(chain: MarkovChain) -> np.ndarray:
    matrix = np.array(chain.matrix, dtype=float)
    target = chain.target
    matrix[target, :] = 0.0
    matrix[target, target] = 1.0
    return matrix


def mean_time_to_compromise(chain: MarkovChain) -> float:
    """Expected steps from S_0 until first arrival at the target state.

    Solves t = 1 + Q t over the transient states of the target-absorbing
    chain.  Finite whenever every forward probability is positive.

    Raises:
        UnreachableTargetError: some forward probability is zero.
        NumericalError: the linear solve degenerates.
    """
    forward = chain.forward_probabilities()
    if np.any(forward <= 0.0):
        stuck = int(np.flatnonzero(forward <= 0.0)[0])
        raise UnreachableTargetError(
            f"forward probability out of state {chain.states[stuck]} is zero"
        )
    m = chain.target
    q = np.asarray(chain.matrix, dtype=float)[:m, :m]
    try:
        times = np.linalg.solve(np.eye(m) - q, np.ones(m))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"hitting-time solve failed: {exc}") from None
    if not np.all(np.isfinite(times)):
        raise NumericalError("hitting-time solve produced non-finite values")
    return float(times[0])


def hit_probability_within(chain: MarkovChain, horizon: int) -> float:
    """Probability that a walk from S_0 first reaches the target within
    ``horizon`` steps."""
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    matrix = _absorbing(chain)
    dist = np.zeros(len(chain.states))
    dist[0] = 1.0
    for _ in range(horizon):
        dist = dist @ matrix
    # Iterated products can drift a few ulp past the unit interval.
    return min(max(float(dist[chain.target]), 0.0), 1.0)


# ---------------------------------------------------------------------------
# Monte Carlo simulation
# ---------------------------------------------------------------------------

def _step_uniforms(seed: int, step: int, lo: int, count: int) -> np.ndarray:
    """Draws ``lo .. lo+count`` of the per-step stream keyed by (seed, step).

    ``lo`` must be a multiple of the Philox block size so that sliced
    and unsliced runs see identical values at each absolute trial index.
    """
    bit_gen = np.random.Philox(seed=np.random.SeedSequence((seed, step)))
    if lo:
        bit_gen.advance(lo // _PHILOX_BLOCK)
    return np.random.Generator(bit_gen).random(count)


def _run_slice(
    back_p: np.ndarray,
    fwd_p: np.ndarray,
    target: int,
    horizon: int,
    seed: int,
    lo: int,
    hi: int,
) -> np.ndarray:
    """First-passage steps (0 = no hit) for trials ``lo .. hi``."""
    n = hi - lo
    states = np.zeros(n, dtype=np.int64)
    hit_at = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    for step in range(1, horizon + 1):
        if active.size == 0:
            break
        uniforms = _step_uniforms(seed, step, lo, n)[active]
        current = states[active]
        moved = (
            current
            + (uniforms >= 1.0 - fwd_p[current]).astype(np.int64)
            - (uniforms < back_p[current]).astype(np.int64)
        )
        states[active] = moved
        arrived = moved == target
        if arrived.any():
            hit_at[active[arrived]] = step
            active = active[~arrived]
    return hit_at


def simulate(
    chain: MarkovChain,
    trials: int,
    horizon: int,
    seed: int = 0,
    workers: int = 1,
) -> SimulationReport:
    """Run independent first-passage walks from S_0.

    The draw consumed by trial t at step s depends only on (seed, s, t),
    so a given seed produces bit-identical reports for any ``workers``
    setting; workers only split the trial axis.

    Raises:
        ValueError: trials < 1, horizon < 1, negative seed, workers < 1.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    target = chain.target
    matrix = np.asarray(chain.matrix, dtype=float)
    # Per-state back/forward thresholds for the transient states; the
    # walk never sits on the target (first passage ends the trial).
    back_p = np.zeros(target)
    back_p[1:] = np.diag(matrix, k=-1)[: target - 1]
    fwd_p = np.diag(matrix, k=1).copy()

    chunk = -(-trials // workers)  # ceil
    chunk = -(-chunk // _PHILOX_BLOCK) * _PHILOX_BLOCK
    bounds = list(range(0, trials, chunk)) + [trials]
    slices = list(zip(bounds[:-1], bounds[1:]))

    def run(bounds_pair: tuple[int, int]) -> np.ndarray:
        lo, hi = bounds_pair
        return _run_slice(back_p, fwd_p, target, horizon, seed, lo, hi)

    if len(slices) == 1:
        parts = [run(slices[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(slices)) as pool:
            parts = list(pool.map(run, slices))
    hit_at = np.concatenate(parts)

    samples = hit_at[hit_at > 0]
    hits = int(samples.size)
    if hits:
        p50, p90, p99 = (float(v) for v in np.percentile(samples, [50, 90, 99]))
        mean_ttc = float(samples.mean())
    else:
        mean_ttc = p50 = p90 = p99 = None
    return SimulationReport(
        trials=trials,
        horizon=horizon,
        seed=seed,
        hits=hits,
        hit_fraction=hits / trials,
        ttc_samples=samples,
        mean_ttc=mean_ttc,
        p50=p50,
        p90=p90,
        p99=p99,
    )
