"""Pure-numpy implementations of the hot small-matrix kernels.

These define the reference semantics; the compiled backend must agree with
them up to floating-point summation order (tests pin the gap at 1e-13).
"""

import math

import numpy as np


def pswap_closed(rho1, rho2, tau):
    """Qudit addition rule on raw matrices.

    tau*rho1 + (1-tau)*rho2 - i*sqrt(tau(1-tau))*(rho1@rho2 - rho2@rho1).
    The commutator term is skipped exactly at tau in {0, 1} so the endpoints
    return the unmixed input bit-for-bit.
    """
    c = math.sqrt(tau * (1.0 - tau))
    out = tau * rho1 + (1.0 - tau) * rho2
    if c != 0.0:
        out = out - 1j * c * (rho1 @ rho2 - rho2 @ rho1)
    return out


def condition_projective_all(rho4, basis):
    """Unnormalized conditional blocks for a rank-1 projective basis.

    rho4  : (dx, de, dx, de) array, row/col axes split as (system, env).
    basis : (de, n) array whose columns are the measurement vectors.
    Returns (n, dx, dx) with out[j] = <psi_j| rho |psi_j> contracted over env.
    """
    de = basis.shape[0]
    n = basis.shape[1]
    dx = rho4.shape[0]
    # out[j,a,b] = sum_{e,f} conj(basis[e,j]) rho4[a,e,b,f] basis[f,j]
    env_first = rho4.transpose(1, 3, 0, 2).reshape(de * de, dx * dx)
    pairs = (basis.conj()[:, None, :] * basis[None, :, :]).reshape(de * de, n)
    return (pairs.T @ env_first).reshape(n, dx, dx)


def prefix_slack(dominating, dominated):
    """Majorization prefix comparison of two descending-sorted vectors.

    Returns (min_k sum(dominating[:k]) - sum(dominated[:k]), total difference).
    A nonnegative first value (up to tolerance) means dominated < dominating
    in the majorization order.
    """
    diff = np.cumsum(dominating) - np.cumsum(dominated)
    return float(diff.min()), float(diff[-1])


def entropy_nats(p):
    """Shannon entropy -sum p ln p in nats; zero entries contribute nothing.

    The caller guarantees p >= 0.
    """
    p = np.asarray(p, dtype=np.float64)
    p = p[p > 0.0]
    return float(-(p * np.log(p)).sum())
