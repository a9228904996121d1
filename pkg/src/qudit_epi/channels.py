"""The partial-swap channel, in closed form and by explicit conjugation.

Two independent routes compute each map. The conjugation route (build the
unitary, conjugate, trace out the second input) is authoritative; the closed
form tau*r1 + (1-tau)*r2 - i sqrt(tau(1-tau)) [r1, r2] is the fast path and
serves as cross-check oracle. Tests pin their agreement.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels as kernels
from .errors import BadDimension, DimensionMismatch
from .states import (
    DensityMatrix,
    MultipartiteState,
    make_density,
    multipartite,
    partial_trace,
    permute_subsystems,
    tensor,
)

__all__ = [
    "check_mixing",
    "swap_operator",
    "partial_swap_unitary",
    "partial_swap_closed",
    "partial_swap_conjugation",
    "partial_swap_global",
    "partial_swap_global_closed",
]


def check_mixing(tau: float) -> float:
    """Validate a mixing parameter; must lie in [0, 1]."""
    tau = float(tau)
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"mixing parameter must be in [0, 1], got {tau}")
    return tau


def swap_operator(d: int) -> np.ndarray:
    """The d^2 x d^2 swap W with W(|a>⊗|b>) = |b>⊗|a>; Hermitian, W^2 = I."""
    if d < 2:
        raise BadDimension(f"swap needs d >= 2, got {d}")
    w = np.zeros((d * d, d * d), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            w[b * d + a, a * d + b] = 1.0
    return w


def partial_swap_unitary(d: int, tau: float) -> np.ndarray:
    """U = sqrt(tau) I + i sqrt(1-tau) W on two d-level systems.

    Unitary because W is Hermitian with W^2 = I; endpoints are exact (tau=1
    gives the identity, tau=0 gives iW).
    """
    tau = check_mixing(tau)
    w = swap_operator(d)
    return math.sqrt(tau) * np.eye(d * d, dtype=np.complex128) + 1j * math.sqrt(1.0 - tau) * w


def _check_pair(rho1: DensityMatrix, rho2: DensityMatrix) -> int:
    if rho1.dim != rho2.dim:
        raise DimensionMismatch(f"input dims differ: {rho1.dim} vs {rho2.dim}")
    return rho1.dim


def partial_swap_closed(rho1: DensityMatrix, rho2: DensityMatrix, tau: float) -> DensityMatrix:
    """Qudit addition rule tau*r1 + (1-tau)*r2 - i sqrt(tau(1-tau)) [r1, r2].

    The map always yields a state; a positivity failure here signals an
    implementation bug, not bad input.
    """
    _check_pair(rho1, rho2)
    tau = check_mixing(tau)
    return make_density(kernels.pswap_closed(rho1.mat, rho2.mat, tau))


def partial_swap_conjugation(rho1: DensityMatrix, rho2: DensityMatrix, tau: float) -> DensityMatrix:
    """Same map computed by conjugation with U and tracing the second system.

    Independent of the closed form on purpose: this is the oracle route.
    """
    d = _check_pair(rho1, rho2)
    tau = check_mixing(tau)
    u = partial_swap_unitary(d, tau)
    big = u @ np.kron(rho1.mat, rho2.mat) @ u.conj().T
    reduced = np.trace(big.reshape(d, d, d, d), axis1=1, axis2=3)
    return make_density(np.ascontiguousarray(reduced))


def partial_swap_global(s1: MultipartiteState, s2: MultipartiteState, tau: float) -> MultipartiteState:
    """Partial swap across the system legs of two system-environment states.

    Inputs are ordered (X1, E1) and (X2, E2) with equal X dimension; the swap
    unitary acts on (X1, X2) only. Output order is (Y, E1, E2).
    """
    if len(s1.dims) != 2 or len(s2.dims) != 2:
        raise DimensionMismatch(f"expected bipartite inputs, got dims {s1.dims} and {s2.dims}")
    d, e1 = s1.dims
    d2, e2 = s2.dims
    if d != d2:
        raise DimensionMismatch(f"system dims differ: {d} vs {d2}")
    tau = check_mixing(tau)
    # The kron of two valid states is valid; skip re-validating the big product.
    big = DensityMatrix(np.kron(s1.state.mat, s2.state.mat))
    both = MultipartiteState(big, (d, e1, d, e2))  # (X1,E1,X2,E2)
    ordered = permute_subsystems(both, (0, 2, 1, 3))  # -> (X1,X2,E1,E2)
    u_full = np.kron(partial_swap_unitary(d, tau), np.eye(e1 * e2, dtype=np.complex128))
    conj = u_full @ ordered.state.mat @ u_full.conj().T
    # Unitary conjugation preserves validity; the reduced output below is
    # re-validated, so skip the expensive check on the big intermediate.
    out = MultipartiteState(DensityMatrix(conj), (d, d, e1, e2))
    return partial_trace(out, (0, 2, 3))  # (Y,E1,E2)


def partial_swap_global_closed(s1: MultipartiteState, s2: MultipartiteState, tau: float) -> MultipartiteState:
    """Cross-check for :func:`partial_swap_global` via extended operators.

    Each input is embedded on (X, E1, E2) by padding with the identity on the
    missing environment; the output is then the convex combination of the
    embedded inputs (environments replaced by the partner's marginal) minus
    i sqrt(tau(1-tau)) times the commutator of the embeddings.
    """
    if len(s1.dims) != 2 or len(s2.dims) != 2:
        raise DimensionMismatch(f"expected bipartite inputs, got dims {s1.dims} and {s2.dims}")
    d, e1 = s1.dims
    d2, e2 = s2.dims
    if d != d2:
        raise DimensionMismatch(f"system dims differ: {d} vs {d2}")
    tau = check_mixing(tau)

    rho1 = s1.state.mat
    rho2 = s2.state.mat
    rho_e1 = partial_trace(s1, (1,)).state.mat
    rho_e2 = partial_trace(s2, (1,)).state.mat

    def to_xe1e2(mat: np.ndarray) -> np.ndarray:
        # reorder an (X, E2, E1) operator into (X, E1, E2)
        t = mat.reshape(d, e2, e1, d, e2, e1).transpose(0, 2, 1, 3, 5, 4)
        return np.ascontiguousarray(t.reshape(d * e1 * e2, d * e1 * e2))

    term1 = np.kron(rho1, rho_e2)  # (X,E1,E2) already
    term2 = to_xe1e2(np.kron(rho2, rho_e1))
    out = tau * term1 + (1.0 - tau) * term2
    c = math.sqrt(tau * (1.0 - tau))
    if c != 0.0:
        a_emb = np.kron(rho1, np.eye(e2, dtype=np.complex128))
        b_emb = to_xe1e2(np.kron(rho2, np.eye(e1, dtype=np.complex128)))
        out = out - 1j * c * (a_emb @ b_emb - b_emb @ a_emb)
    return multipartite(make_density(out), (d, e1, e2))
