"""State factories: GHZ basis, DCT mixtures, special-type states, random states.

All random factories draw from numpy's PCG64 generator. A seed is a 64-bit
unsigned integer; parallel or chunked sampling derives independent child
streams through :func:`derive_seeds` rather than sharing one generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .concurrence import SchmidtParams
from .config import TOL
from .tensor_core import QUBITS, PureState, SystemDims, TripartiteState

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def derive_seeds(seed: int, count: int) -> list[int]:
    """Child seeds for ``count`` independent substreams of ``seed``."""
    children = np.random.SeedSequence(int(seed) & SEED_MASK).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


# --- GHZ basis and DCT states ------------------------------------------------


def ghz_basis_amplitudes(j: int, sign: int) -> np.ndarray:
    if j not in (0, 1, 2, 3):
        raise ValueError(f"GHZ basis index must be 0..3, got {j!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    amps = np.zeros(QUBITS.total, dtype=complex)
    # |j>_AB|0>_C with A as the high bit of j
    amps[2 * j] = 1.0
    amps[2 * (3 - j) + 1] = sign
    return amps / math.sqrt(2.0)


def ghz_basis_state(j: int, sign: int) -> PureState:
    return PureState(QUBITS, ghz_basis_amplitudes(j, sign))


def ghz_state() -> PureState:
    return ghz_basis_state(0, 1)


@dataclass(frozen=True)
class DctWeights:
    lambda0_plus: float
    lambda0_minus: float
    lambdas: tuple  # (l1, l2, l3), each weighting both |Psi_j^+> and |Psi_j^->

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 3:
            raise ValueError(f"expected three paired weights, got {len(lam)}")
        object.__setattr__(self, "lambdas", lam)
        allw = (self.lambda0_plus, self.lambda0_minus) + lam
        if any(w < 0 for w in allw):
            raise ValueError(f"DCT weights must be non-negative: {allw}")
        total = self.lambda0_plus + self.lambda0_minus + 2 * sum(lam)
        if abs(total - 1.0) > TOL.dct_norm:
            raise ValueError(f"DCT weights sum to {total!r}; need l0+ + l0- + 2(l1+l2+l3) = 1")

    def terms(self) -> list[tuple[float, int, int]]:
        """(weight, j, sign) for each of the eight GHZ-basis projectors."""
        out = [(self.lambda0_plus, 0, 1), (self.lambda0_minus, 0, -1)]
        for j, w in enumerate(self.lambdas, start=1):
            out += [(w, j, 1), (w, j, -1)]
        return out


EXAMPLE_DCT_WEIGHTS = DctWeights(1 / 3, 0.0, (1 / 6, 0.0, 1 / 6))


def dct_state(w: DctWeights) -> TripartiteState:
    rho = np.zeros((QUBITS.total, QUBITS.total), dtype=complex)
    for weight, j, sign in w.terms():
        v = ghz_basis_amplitudes(j, sign)
        rho += weight * np.outer(v, v.conj())
    return TripartiteState(QUBITS, rho)


def special_type_state(lambda0: float, lambda4: float) -> PureState:
    if lambda0 < 0 or lambda4 < 0:
        raise ValueError("special-type coefficients must be non-negative")
    if abs(lambda0**2 + lambda4**2 - 1.0) > TOL.schmidt_norm:
        raise ValueError(f"special-type state is not normalised: {lambda0}, {lambda4}")
    amps = np.zeros(QUBITS.total, dtype=complex)
    amps[0], amps[7] = lambda0, lambda4
    return PureState(QUBITS, amps)


def maximally_mixed(dims: Sequence[int] = QUBITS) -> TripartiteState:
    dims = SystemDims.coerce(dims)
    return TripartiteState(dims, np.eye(dims.total, dtype=complex) / dims.total)


def product_state(*factors) -> PureState:
    """Tensor product of three local pure-state vectors."""
    if len(factors) != 3:
        raise ValueError("need exactly three local factors")
    vecs = [np.asarray(f, dtype=complex).reshape(-1) for f in factors]
    vecs = [v / np.linalg.norm(v) for v in vecs]
    amps = np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
    return PureState(tuple(v.size for v in vecs), amps)


# --- random sampling ---------------------------------------------------------


def sample_schmidt_arrays(rng: np.random.Generator, count: int):
    """``count`` parameter sets as arrays ``(lambdas[count, 5], psi[count])``.

    Coefficients are absolute values of standard normals normalised to unit
    length (uniform on the positive orthant of the 4-sphere); the phase is
    uniform on [0, pi].
    """
    lam = np.abs(rng.standard_normal((count, 5)))
    lam /= np.linalg.norm(lam, axis=1, keepdims=True)
    psi = rng.uniform(0.0, math.pi, count)
    return lam, psi


def random_schmidt_params(seed: int) -> SchmidtParams:
    lam, psi = sample_schmidt_arrays(make_rng(seed), 1)
    return SchmidtParams(tuple(lam[0]), float(psi[0]))


def sample_pure_amplitudes(rng: np.random.Generator, dims: Sequence[int], count: int) -> np.ndarray:
    """Haar-random pure states as a ``(count, d)`` amplitude array."""
    d = SystemDims.coerce(dims).total
    z = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_pure_state(dims: Sequence[int], seed: int) -> PureState:
    dims = SystemDims.coerce(dims)
    return PureState(dims, sample_pure_amplitudes(make_rng(seed), dims, 1)[0])


def random_mixed_state(dims: Sequence[int], rank: int, seed: int) -> TripartiteState:
    dims = SystemDims.coerce(dims)
    if not 1 <= rank <= dims.total:
        raise ValueError(f"rank must be in [1, {dims.total}], got {rank}")
    rng = make_rng(seed)
    vecs = sample_pure_amplitudes(rng, dims, rank)
    w = rng.uniform(0.0, 1.0, rank)
    w /= w.sum()
    rho = np.einsum("k,ki,kj->ij", w, vecs, vecs.conj())
    return TripartiteState(dims, 0.5 * (rho + rho.conj().T))


def sample_product_mixtures(rng: np.random.Generator, dims: Sequence[int], count: int, max_terms: int = 8):
    """Stack of ``count`` separable density matrices, each a mixture of 1..max_terms product states."""
    dims = SystemDims.coerce(dims)
    d = dims.total
    out = np.zeros((count, d, d), dtype=complex)
    for i in range(count):
        k = int(rng.integers(1, max_terms + 1))
        w = rng.uniform(0.0, 1.0, k)
        w /= w.sum()
        for wi in w:
            local = [sample_pure_amplitudes(rng, (x, 1, 1), 1)[0] for x in dims]
            v = np.kron(np.kron(local[0], local[1]), local[2])
            out[i] += wi * np.outer(v, v.conj())
    return out
