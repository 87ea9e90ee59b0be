"""Pure-state concurrence and the three-qubit Schmidt-form closed forms.

A three-qubit pure state can be written in generalized Schmidt form

    l0|000> + l1 e^{i psi}|100> + l2|101> + l3|110> + l4|111>

with ``l_i >= 0``, ``0 <= psi <= pi`` and ``sum l_i**2 == 1``. Writing
``mu_i = l_i**2`` and ``delta = |l1 l4 e^{i psi} - l2 l3|**2``, the squared
concurrence and the trace norms of the three partial transposes have closed
forms in ``mu`` and ``delta``; they are exposed here both for single
parameter sets and for stacked arrays of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import TOL
from .tensor_core import (
    QUBITS,
    NumericalBreakdown,
    PureState,
    purity,
    reduce_array,
)

# flat positions of |000>, |100>, |101>, |110>, |111>
SCHMIDT_SLOTS = (0, 4, 5, 6, 7)


class SchmidtDerived(NamedTuple):
    mu: tuple
    delta: float


@dataclass(frozen=True)
class SchmidtParams:
    lambdas: tuple
    psi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise ValueError(f"expected five Schmidt coefficients, got {len(lam)}")
        if any(x < 0 or not math.isfinite(x) for x in lam):
            raise ValueError(f"Schmidt coefficients must be finite and non-negative: {lam}")
        if abs(sum(x * x for x in lam) - 1.0) > TOL.schmidt_norm:
            raise ValueError(f"Schmidt coefficients are not normalised: {lam}")
        psi = float(self.psi)
        if not 0.0 <= psi <= math.pi:
            raise ValueError(f"phase psi must lie in [0, pi], got {psi}")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "psi", psi)

    @property
    def mu(self) -> tuple:
        return tuple(x * x for x in self.lambdas)

    @property
    def delta(self) -> float:
        l0, l1, l2, l3, l4 = self.lambdas
        return abs(l1 * l4 * np.exp(1j * self.psi) - l2 * l3) ** 2

    def derived(self) -> SchmidtDerived:
        return SchmidtDerived(self.mu, self.delta)


def _clamped_sqrt(x, what: str):
    x = np.asarray(x, dtype=float)
    if np.any(x < -TOL.clamp):
        raise NumericalBreakdown(f"negative radicand in {what}: {x.min():.3e}")
    out = np.sqrt(np.clip(x, 0.0, None))
    return float(out) if out.ndim == 0 else out


# --- concurrence from the full state ----------------------------------------


def concurrence_from_density(rho, dims) -> float | np.ndarray:
    """sqrt(3 - sum of single-party purities); ``rho`` may be a stack of pure states."""
    total = sum(purity(reduce_array(rho, dims, k)) for k in "ABC")
    return _clamped_sqrt(np.maximum(3.0 - total, 0.0), "pure-state concurrence")


def concurrence_pure(v: PureState) -> float:
    return concurrence_from_density(v.density(), v.dims)


def concurrence_from_amplitudes(amps, dims) -> np.ndarray:
    amps = np.asarray(amps, dtype=complex)
    rho = amps[..., :, None] * amps[..., None, :].conj()
    return concurrence_from_density(rho, dims)


# --- Schmidt form ------------------------------------------------------------


def schmidt_amplitudes(lambdas, psi) -> np.ndarray:
    """Amplitude vectors for stacked parameters ``lambdas[..., 5]``, ``psi[...]``."""
    lam = np.asarray(lambdas, dtype=float)
    psi = np.asarray(psi, dtype=float)
    amps = np.zeros(lam.shape[:-1] + (QUBITS.total,), dtype=complex)
    amps[..., SCHMIDT_SLOTS[0]] = lam[..., 0]
    amps[..., SCHMIDT_SLOTS[1]] = lam[..., 1] * np.exp(1j * psi)
    for k in (2, 3, 4):
        amps[..., SCHMIDT_SLOTS[k]] = lam[..., k]
    return amps


def schmidt_state(p: SchmidtParams) -> PureState:
    return PureState(QUBITS, schmidt_amplitudes(p.lambdas, p.psi))


def schmidt_mu_delta(lambdas, psi):
    """Vectorised ``(mu[..., 5], delta[...])``."""
    lam = np.asarray(lambdas, dtype=float)
    psi = np.asarray(psi, dtype=float)
    delta = np.abs(lam[..., 1] * lam[..., 4] * np.exp(1j * psi) - lam[..., 2] * lam[..., 3]) ** 2
    return lam**2, delta


def purity_closed_forms(mu, delta):
    """Tr rho_A^2, Tr rho_B^2, Tr rho_C^2 of a Schmidt-form state."""
    mu = np.asarray(mu, dtype=float)
    m0, m1, m2, m3 = (mu[..., i] for i in range(4))
    a = 1 - 2 * m0 * (1 - m0 - m1)
    b = 1 - 2 * m0 * (1 - m0 - m1 - m2) - 2 * delta
    c = 1 - 2 * m0 * (1 - m0 - m1 - m3) - 2 * delta
    return a, b, c


def concurrence_squared_closed_form(mu, delta):
    mu = np.asarray(mu, dtype=float)
    m0, m1, m2, m3 = (mu[..., i] for i in range(4))
    return 2 * m0 * (3 - 3 * m0 - 3 * m1 - m2 - m3) + 4 * delta


def concurrence_closed_form(p: SchmidtParams) -> float:
    mu, delta = p.derived()
    return _clamped_sqrt(concurrence_squared_closed_form(mu, delta), "closed-form concurrence")


def class1_norms_closed_form(mu, delta):
    """Trace norms of the A, B and C partial transposes, stacked on the last axis."""
    mu = np.asarray(mu, dtype=float)
    delta = np.asarray(delta, dtype=float)
    m0, m2, m3, m4 = mu[..., 0], mu[..., 2], mu[..., 3], mu[..., 4]
    return np.stack(
        [
            1 + 2 * _clamped_sqrt(m0 * (m2 + m3 + m4), "Y1 norm"),
            1 + 2 * _clamped_sqrt(delta + m0 * (m3 + m4), "Y2 norm"),
            1 + 2 * _clamped_sqrt(delta + m0 * (m2 + m4), "Y3 norm"),
        ],
        axis=-1,
    )


def class1_norm_closed_form(p: SchmidtParams, which: int) -> float:
    if which not in (1, 2, 3):
        raise ValueError(f"which must be 1, 2 or 3, got {which!r}")
    mu, delta = p.derived()
    return float(class1_norms_closed_form(mu, delta)[which - 1])


def proof_residuals_closed_form(mu, delta):
    """C^2 - (norm_k - 1)^2 for k = 1, 2, 3 written as polynomials in mu and delta."""
    mu = np.asarray(mu, dtype=float)
    m0, m2, m3, m4 = mu[..., 0], mu[..., 2], mu[..., 3], mu[..., 4]
    return np.stack(
        [
            2 * m0 * m4 + 4 * delta,
            4 * m0 * m2 + 2 * m0 * m4,
            4 * m0 * m3 + 2 * m0 * m4,
        ],
        axis=-1,
    )


def special_type_values(lambda0: float, lambda4: float) -> tuple[float, float]:
    """(concurrence, common catalog trace norm) of ``l0|000> + l4|111>``."""
    if lambda0 < 0 or lambda4 < 0:
        raise ValueError("special-type coefficients must be non-negative")
    if abs(lambda0**2 + lambda4**2 - 1.0) > TOL.schmidt_norm:
        raise ValueError(f"special-type state is not normalised: {lambda0}, {lambda4}")
    return math.sqrt(6 * lambda0**2 * lambda4**2), 1 + 2 * lambda0 * lambda4

