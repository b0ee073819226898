"""Pure numpy implementations of the hot kernels.

Same call signatures as the compiled extension ``mfun._core``; which of the
two is active is decided in ``mfun._backend``.  Everything here is
vectorized numpy plus scipy's Cephes Bessel routines, chunked to keep peak
memory bounded.
"""

import numpy as np
from scipy.special import j0 as _sj0, j1 as _sj1

COMPILED = False

# Chunk sizes keep intermediate matrices around ~32 MB.
_F_CHUNK = 1 << 19
_HANKEL_CHUNK = 1 << 22


def j0_arr(x):
    """Bessel J0 evaluated elementwise on an array."""
    return _sj0(np.asarray(x, dtype=np.float64))


def j1_arr(x):
    """Bessel J1 evaluated elementwise on an array."""
    return _sj1(np.asarray(x, dtype=np.float64))


def f_series(alpha, c, gamma, beta):
    """sum_m c_m * exp(i*(alpha*gamma_m - beta_m)) for each alpha.

    alpha: (n,) real; c, gamma, beta: (N,) real.  Returns (n,) complex.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    gamma = np.asarray(gamma, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    out = np.empty(alpha.shape, dtype=np.complex128)
    for lo in range(0, alpha.size, _F_CHUNK):
        hi = min(lo + _F_CHUNK, alpha.size)
        phase = np.outer(alpha[lo:hi], gamma) - beta
        out[lo:hi] = np.exp(1j * phase) @ c.astype(np.complex128)
    return out


def phasor_sum(theta, c):
    """sum_m c_m * exp(i*theta[:, m]) for a (n, N) angle matrix."""
    theta = np.asarray(theta, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    return np.exp(1j * theta) @ c.astype(np.complex128)


def char_prod(rho, c):
    """prod_m J0(c_m * rho) elementwise over the rho array."""
    rho = np.asarray(rho, dtype=np.float64)
    out = np.ones(rho.shape, dtype=np.float64)
    for cm in np.asarray(c, dtype=np.float64):
        out *= _sj0(cm * rho)
    return out


def hankel_sum(r, rho, g):
    """sum_j g_j * J0(rho_j * r_i) for each r_i.

    This is the inner product form of the discretized radial Fourier
    inversion; g carries the quadrature weights.
    """
    r = np.asarray(r, dtype=np.float64)
    rho = np.asarray(rho, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    out = np.empty(r.shape, dtype=np.float64)
    cols = max(1, _HANKEL_CHUNK // max(rho.size, 1))
    for lo in range(0, r.size, cols):
        hi = min(lo + cols, r.size)
        out[lo:hi] = _sj0(np.outer(r[lo:hi], rho)) @ g
    return out


def r2_convolve(pp, lam_pp, n_max):
    """Self-convolution of the von Mangoldt function on its support.

    pp: ascending prime-power indices, lam_pp: matching Lambda values.
    Returns r2[0..n_max] with r2[n] = sum_{l+m=n} Lambda(l)*Lambda(m).
    """
    pp = np.asarray(pp, dtype=np.int64)
    lam_pp = np.asarray(lam_pp, dtype=np.float64)
    r2 = np.zeros(n_max + 1, dtype=np.float64)
    for i in range(pp.size):
        li = pp[i]
        if li + pp[0] > n_max:
            break
        # all ordered pairs (li, m); targets are distinct within one i,
        # so the fancy-indexed accumulate is safe
        k = np.searchsorted(pp, n_max - li, side="right")
        r2[li + pp[:k]] += lam_pp[i] * lam_pp[:k]
    return r2
