"""Majorization, entropies, entropy-power functionals, and the measurement
minimization that defines their conditional versions.

Convention: natural logarithm everywhere. The entropy power of order kappa is
exp(kappa * S) with S in nats, so the concavity window upper edge is
1/(ln d)^2. The convention is recorded in run manifests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import BadDimension, DimensionMismatch, NotDistribution, TotalMismatch
from .measurement import PROB_FLOOR
from .rand import RandomSource, complex_gaussian, haar_unitary
from .states import DensityMatrix, MultipartiteState, Spectrum, eigenvalues_descending, partial_trace

MAJORIZATION_TOL = 1e-9
DISTRIBUTION_NEG_TOL = 1e-10
DISTRIBUTION_SUM_TOL = 1e-9

__all__ = [
    "majorizes",
    "shannon_entropy",
    "von_neumann_entropy",
    "entropy_power",
    "kappa_bounds",
    "conditional_vn_entropy",
    "expected_entropy_power",
    "OptimizerConfig",
    "minimize_conditional_entropy_power",
    "projective_entropy_power",
]


def _as_vector(x) -> np.ndarray:
    if isinstance(x, Spectrum):
        return np.asarray(x.values, dtype=np.float64)
    return np.asarray(x, dtype=np.float64)


def majorizes(n, m, tol: float = MAJORIZATION_TOL) -> bool:
    """True iff m is majorized by n (every prefix of n↓ dominates m↓'s).

    Vectors of unequal length are zero-padded; totals must agree within tol or
    the comparison is refused outright.
    """
    nv = _as_vector(n)
    mv = _as_vector(m)
    size = max(len(nv), len(mv))
    nv = np.pad(nv, (0, size - len(nv)))
    mv = np.pad(mv, (0, size - len(mv)))
    nv = np.sort(nv)[::-1]
    mv = np.sort(mv)[::-1]
    min_slack, total_diff = kernels.prefix_slack(nv, mv)
    if abs(total_diff) > tol:
        raise TotalMismatch(f"totals differ by {total_diff!r} (> {tol:.1e})")
    return min_slack >= -tol


def shannon_entropy(p) -> float:
    """-sum p ln p in nats with 0 ln 0 = 0; validates p as a distribution."""
    v = _as_vector(p)
    if v.size and float(v.min()) < -DISTRIBUTION_NEG_TOL:
        raise NotDistribution(f"negative entry {float(v.min())!r}")
    total = float(v.sum())
    if abs(total - 1.0) > DISTRIBUTION_SUM_TOL:
        raise NotDistribution(f"entries sum to {total!r}")
    return kernels.entropy_nats(np.clip(v, 0.0, None))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy of the spectrum, in nats; zero for pure states, ln d for I/d."""
    return kernels.entropy_nats(eigenvalues_descending(rho).values)


def entropy_power(x, kappa: float) -> float:
    """exp(kappa * S(x)) for a state, spectrum, or probability vector.

    Permutation-symmetric, Schur concave, and confined to [1, d^kappa].
    """
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    if isinstance(x, DensityMatrix):
        s = von_neumann_entropy(x)
    elif isinstance(x, Spectrum):
        s = kernels.entropy_nats(x.values)
    else:
        s = shannon_entropy(x)
    return math.exp(kappa * s)


def kappa_bounds(d: int) -> tuple[float, float]:
    """(1/(ln d)^2, 1/(d-1)): the concavity windows of the two entropic
    functionals studied here; only the first drives inequality checks."""
    if d < 2:
        raise BadDimension(f"need d >= 2, got {d}")
    return 1.0 / math.log(d) ** 2, 1.0 / (d - 1)


def conditional_vn_entropy(s: MultipartiteState) -> float:
    """S(AB) - S(B) for a bipartite state; negative for entangled inputs."""
    if len(s.dims) != 2:
        raise DimensionMismatch(f"expected a bipartite state, got dims {s.dims}")
    s_ab = von_neumann_entropy(s.state)
    s_b = von_neumann_entropy(partial_trace(s, (1,)).state)
    return s_ab - s_b


def expected_entropy_power(outcomes, kappa: float) -> float:
    """Probability-weighted entropy power over measurement outcomes.

    Negligible outcomes (no state) contribute zero.
    """
    total = 0.0
    for o in outcomes:
        if o.negligible:
            continue
        total += o.probability * entropy_power(o.state, kappa)
    return total


@dataclass(frozen=True)
class OptimizerConfig:
    """Budget for the random-restart hill climb over projective bases."""

    rng: RandomSource
    restarts: int = 8
    refine_steps: int = 32
    step_scale: float = 0.2

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.refine_steps < 0:
            raise ValueError(f"refine_steps must be >= 0, got {self.refine_steps}")
        if not self.step_scale > 0:
            raise ValueError(f"step_scale must be > 0, got {self.step_scale}")


def projective_entropy_power(rho4: np.ndarray, basis: np.ndarray, kappa: float) -> float:
    """Expected entropy power of the conditionals induced by a projective basis.

    rho4 is the (dx, de, dx, de)-reshaped joint state. This is the optimizer
    objective; outcomes at or below PROB_FLOOR contribute zero.
    """
    blocks = kernels.condition_projective_all(rho4, basis)
    probs = np.trace(blocks, axis1=1, axis2=2).real
    mask = probs > PROB_FLOOR
    if not mask.any():
        return 0.0
    lam = np.linalg.eigvalsh(blocks[mask] / probs[mask, None, None])
    lam = np.clip(lam, 0.0, None)
    ent = -np.where(lam > 0.0, lam * np.log(np.where(lam > 0.0, lam, 1.0)), 0.0).sum(axis=1)
    return float((probs[mask] * np.exp(kappa * ent)).sum())


def _unitary_step(gen: np.random.Generator, d: int, scale: float) -> np.ndarray:
    # exp(i * scale * H) with H drawn GUE-style; computed by eigendecomposition.
    a = complex_gaussian(gen, d, d)
    h = (a + a.conj().T) / 2
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def minimize_conditional_entropy_power(
    s: MultipartiteState, kappa: float, cfg: OptimizerConfig
) -> tuple[float, np.ndarray]:
    """Approximate min over rank-1 projective bases of the expected entropy
    power of the conditioned system.

    Random restarts, each refined by accept-if-better random rotations
    U <- U exp(i * step_scale * H). The result is an upper bound on the true
    minimum over the projective family; callers must treat it one-sidedly.
    Restart r draws from the stream rng.derive(r); ties keep the lowest r.
    """
    if len(s.dims) != 2:
        raise DimensionMismatch(f"expected a bipartite (X, E) state, got dims {s.dims}")
    dx, de = s.dims
    rho4 = s.state.mat.reshape(dx, de, dx, de)
    best_value = math.inf
    best_basis = None
    for r in range(cfg.restarts):
        gen = cfg.rng.derive(r).generator()
        basis = haar_unitary(de, gen)
        value = projective_entropy_power(rho4, basis, kappa)
        for _ in range(cfg.refine_steps):
            candidate = basis @ _unitary_step(gen, de, cfg.step_scale)
            cand_value = projective_entropy_power(rho4, candidate, kappa)
            if cand_value < value:
                basis, value = candidate, cand_value
        if value < best_value:
            best_value, best_basis = value, basis
    return best_value, best_basis
