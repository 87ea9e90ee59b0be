"""Independent reference computations, written with explicit index loops."""

import itertools

import numpy as np


def unflat(k, dims):
    m, n, p = dims
    return k // (n * p), (k // p) % n, k % p


def flat(a, b, c, dims):
    return (a * dims[1] + b) * dims[2] + c


def partial_transpose_loop(rho, dims, subsystem):
    """Swap the row and column index of one subsystem, element by element."""
    d = rho.shape[0]
    out = np.zeros_like(rho)
    for r, c in itertools.product(range(d), repeat=2):
        ri, ci = list(unflat(r, dims)), list(unflat(c, dims))
        ri[subsystem], ci[subsystem] = ci[subsystem], ri[subsystem]
        out[flat(*ri, dims), flat(*ci, dims)] = rho[r, c]
    return out


def partial_trace_loop(rho, dims, keep):
    k = dims[keep]
    out = np.zeros((k, k), dtype=complex)
    d = rho.shape[0]
    for r, c in itertools.product(range(d), repeat=2):
        ri, ci = unflat(r, dims), unflat(c, dims)
        if all(ri[s] == ci[s] for s in range(3) if s != keep):
            out[ri[keep], ci[keep]] += rho[r, c]
    return out


def realign_loop(rho, dims, which):
    """Class-III images from explicit index formulas.

    With rho[(i,k,m),(j,l,n)] (i/j: A row/col, k/l: B, m/n: C):
      Y7 -> [(i,j,m),(k,l,n)], Y8 -> [(i,j,k),(l,m,n)], Y9 -> [(i,k,l),(j,m,n)].
    """
    m_, n_, p_ = dims
    shapes = {"Y7": (m_ * m_ * p_, n_ * n_ * p_), "Y8": (m_ * m_ * n_, n_ * p_ * p_), "Y9": (m_ * n_ * n_, m_ * p_ * p_)}
    out = np.zeros(shapes[which], dtype=complex)
    for i, j in itertools.product(range(m_), repeat=2):
        for k, l in itertools.product(range(n_), repeat=2):
            for m, n in itertools.product(range(p_), repeat=2):
                val = rho[flat(i, k, m, dims), flat(j, l, n, dims)]
                if which == "Y7":
                    out[(i * m_ + j) * p_ + m, (k * n_ + l) * p_ + n] = val
                elif which == "Y8":
                    out[(i * m_ + j) * n_ + k, (l * p_ + m) * p_ + n] = val
                else:
                    out[(i * n_ + k) * n_ + l, (j * p_ + m) * p_ + n] = val
    return out


def purity_direct(vec, dims, keep):
    """Tr rho_k^2 from the amplitude tensor, via the reduced matrix psi psi^dagger."""
    t = np.asarray(vec).reshape(dims)
    M = np.moveaxis(t, keep, 0).reshape(dims[keep], -1)
    red = M @ M.conj().T
    return float(np.real(np.trace(red @ red)))
