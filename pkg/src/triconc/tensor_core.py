"""Dense complex linear algebra and tripartite index bookkeeping.

Density matrices are stored as numpy ``complex128`` arrays. Tripartite
indices are flattened row-major with subsystem order A, B, C, so the basis
state ``|a b c>`` sits at ``(a*n + b)*p + c``.

Most array-level helpers accept a leading stack of matrices (shape
``(..., r, c)``) so Monte-Carlo campaigns can run vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import TOL

SUBSYSTEMS = ("A", "B", "C")


class NumericalBreakdown(ArithmeticError):
    """A quantity that must be non-negative came out clearly negative."""


class SystemDims(NamedTuple):
    m: int
    n: int
    p: int

    @property
    def total(self) -> int:
        return self.m * self.n * self.p

    def of(self, label: str) -> int:
        return self[SUBSYSTEMS.index(_label(label))]

    @classmethod
    def coerce(cls, dims: Sequence[int]) -> "SystemDims":
        if isinstance(dims, cls):
            return dims
        values = tuple(int(x) for x in dims)
        if len(values) != 3:
            raise ValueError(f"expected three subsystem dimensions, got {len(values)}")
        if any(x < 1 for x in values):
            raise ValueError(f"subsystem dimensions must be >= 1, got {values}")
        return cls(*values)


QUBITS = SystemDims(2, 2, 2)


def _label(label: str) -> str:
    key = str(label).upper()
    if key not in SUBSYSTEMS:
        raise ValueError(f"unknown subsystem label {label!r}; expected one of A, B, C")
    return key


def _as_matrix(M) -> np.ndarray:
    arr = np.asarray(M, dtype=complex)
    if arr.ndim < 2:
        raise ValueError(f"expected a matrix, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _check_square(arr: np.ndarray) -> None:
    if arr.shape[-1] != arr.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape[-2:]}")


# --- index bookkeeping -------------------------------------------------------


def flat_index(a: int, b: int, c: int, dims: Sequence[int]) -> int:
    m, n, p = SystemDims.coerce(dims)
    if not (0 <= a < m and 0 <= b < n and 0 <= c < p):
        raise IndexError(f"index ({a}, {b}, {c}) out of range for dims {(m, n, p)}")
    return (a * n + b) * p + c


def unflatten_index(k: int, dims: Sequence[int]) -> tuple[int, int, int]:
    m, n, p = SystemDims.coerce(dims)
    if not 0 <= k < m * n * p:
        raise IndexError(f"flat index {k} out of range for dims {(m, n, p)}")
    ab, c = divmod(k, p)
    a, b = divmod(ab, n)
    return a, b, c


# --- state containers --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PureState:
    dims: SystemDims
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = SystemDims.coerce(self.dims)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != dims.total:
            raise ValueError(f"expected {dims.total} amplitudes for dims {tuple(dims)}, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > TOL.pure_norm:
            raise ValueError(f"pure state is not normalised: sum |a_i|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class TripartiteState:
    dims: SystemDims
    rho: np.ndarray

    def __post_init__(self):
        dims = SystemDims.coerce(self.dims)
        rho = np.array(self.rho, dtype=complex)
        d = dims.total
        if rho.shape != (d, d):
            raise ValueError(f"density matrix must be {d}x{d} for dims {tuple(dims)}, got {rho.shape}")
        check_density(rho)
        rho.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "rho", rho)


def check_density(rho: np.ndarray) -> None:
    """Raise ValueError unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = _as_matrix(rho)
    _check_square(rho)
    herm = np.max(np.abs(rho - rho.conj().T)) if rho.size else 0.0
    if herm > TOL.hermiticity:
        raise ValueError(f"density matrix is not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TOL.trace:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    lo = float(np.linalg.eigvalsh(rho)[0])
    if lo < -TOL.psd:
        raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {lo:.3e})")


def outer_product(v: PureState) -> TripartiteState:
    return TripartiteState(v.dims, v.density())


def mixture(states: Sequence[TripartiteState | PureState], weights: Sequence[float]) -> TripartiteState:
    """Convex combination ``sum_i w_i rho_i`` of states sharing one set of dims."""
    if len(states) != len(weights) or not states:
        raise ValueError("need one weight per state and at least one state")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1.0) > TOL.trace:
        raise ValueError("mixture weights must be non-negative and sum to 1")
    dims = states[0].dims
    total = np.zeros((dims.total, dims.total), dtype=complex)
    for wi, s in zip(w, states):
        if s.dims != dims:
            raise ValueError("all states in a mixture must share dims")
        total += wi * (s.density() if isinstance(s, PureState) else s.rho)
    return TripartiteState(dims, total)


# --- eigenvalues and norms ---------------------------------------------------


def jacobi_eigenvalues(M, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first rephases column ``q`` so the pivot ``a[p, q]`` is real
    and positive, then applies the classical real Jacobi rotation. Sweeps stop
    once the off-diagonal Frobenius norm drops to ``tol * ||M||_F``.
    """
    a = np.array(_as_matrix(M), dtype=complex)
    _check_square(a)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(a).real)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag == 0.0:
                    continue
                phase = g / mag
                a[:, q] *= phase.conjugate()
                a[q, :] *= phase
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    else:
        raise NumericalBreakdown(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a).real)


def hermitian_eigenvalues(M, method: str = "lapack") -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (or stack of them)."""
    arr = _as_matrix(M)
    _check_square(arr)
    dev = np.max(np.abs(arr - np.swapaxes(arr.conj(), -1, -2))) if arr.size else 0.0
    if dev > TOL.hermiticity:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    if method == "lapack":
        return np.linalg.eigvalsh(arr)
    if method == "jacobi":
        if arr.ndim != 2:
            raise ValueError("the Jacobi solver takes a single matrix")
        return jacobi_eigenvalues(arr)
    raise ValueError(f"unknown eigen method {method!r}")


def _gram_singular_values(arr: np.ndarray, eig) -> np.ndarray:
    # the smaller Gram product has no spurious zero eigenvalues whose square roots
    # would amplify rounding to ~1e-8
    h = np.swapaxes(arr.conj(), -1, -2)
    gram = arr @ h if arr.shape[-2] <= arr.shape[-1] else h @ arr
    gram = 0.5 * (gram + np.swapaxes(gram.conj(), -1, -2))
    ev = eig(gram)
    scale = np.max(np.abs(gram), axis=(-1, -2), keepdims=True)[..., 0]
    if np.any(ev < -TOL.clamp * scale):
        raise NumericalBreakdown(f"Gram matrix has a negative eigenvalue {ev.min():.3e}")
    return np.sqrt(np.clip(ev, 0.0, None))


def singular_values(M, method: str = "svd") -> np.ndarray:
    arr = _as_matrix(M)
    if method == "svd":
        return np.linalg.svd(arr, compute_uv=False)
    if method == "gram":
        return _gram_singular_values(arr, np.linalg.eigvalsh)
    if method == "jacobi":
        if arr.ndim != 2:
            raise ValueError("the Jacobi route takes a single matrix")
        return _gram_singular_values(arr, jacobi_eigenvalues)
    raise ValueError(f"unknown singular value method {method!r}")


def trace_norm(M, method: str = "svd"):
    """Sum of singular values. Returns a float, or an array for stacked input."""
    total = singular_values(M, method).sum(axis=-1)
    return float(total) if np.ndim(total) == 0 else total


# --- reductions --------------------------------------------------------------


def reduce_array(rho: np.ndarray, dims: Sequence[int], keep: str) -> np.ndarray:
    """Reduced density matrix of one subsystem; ``rho`` may be a stack."""
    dims = SystemDims.coerce(dims)
    key = _label(keep)
    rho = np.asarray(rho)
    t = rho.reshape(rho.shape[:-2] + tuple(dims) * 2)
    subscripts = {"A": "...abcdbc->...ad", "B": "...abcaec->...be", "C": "...abcabf->...cf"}[key]
    return np.einsum(subscripts, t)


def partial_trace(s: TripartiteState, keep: str) -> np.ndarray:
    return reduce_array(s.rho, s.dims, keep)


def purity(R) -> float:
    arr = np.asarray(R, dtype=complex)
    if arr.ndim < 2:
        raise ValueError(f"expected a matrix, got shape {arr.shape}")
    _check_square(arr)
    val = np.einsum("...ij,...ji->...", arr, arr)
    if np.any(np.abs(val.imag) > TOL.hermiticity):
        raise ValueError("Tr(R^2) has a non-negligible imaginary part; R is not Hermitian")
    val = val.real
    return float(val) if np.ndim(val) == 0 else val
