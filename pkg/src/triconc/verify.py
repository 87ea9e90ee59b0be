"""Monte-Carlo verification campaigns.

Each suite draws its samples in fixed-size chunks, one derived seed per
chunk, and aggregates only order-independent statistics (violation counts,
extreme residuals). Results are therefore reproducible for a given
``(samples, seed)`` regardless of how chunks are scheduled.

For inequality suites ``worst_residual`` is the smallest margin seen (a
violation is a margin below ``-tolerance``). For agreement suites it is the
largest absolute deviation (a violation is a deviation above ``tolerance``).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import (
    T1_OPS,
    catalog_norms_array,
    cut_residuals_array,
    lower_bound_array,
    theorem2_bound_array,
)
from .concurrence import (
    concurrence_from_density,
    class1_norms_closed_form,
    concurrence_squared_closed_form,
    proof_residuals_closed_form,
    purity_closed_forms,
    schmidt_amplitudes,
    schmidt_mu_delta,
)
from .gpt import CATALOG_NAMES
from .states import derive_seeds, make_rng, sample_product_mixtures, sample_pure_amplitudes, sample_schmidt_arrays
from .tensor_core import QUBITS, SystemDims, purity, reduce_array

CHUNK = 10_000


@dataclass
class SuiteResult:
    suite: str
    samples: int
    seed: int
    tolerance: float
    violations: int = 0
    worst_residual: float = 0.0
    wall_time: float = 0.0
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": self.violations,
            "worst_residual": self.worst_residual,
            "wall_time": self.wall_time,
            "passed": self.passed,
            "checks": self.checks,
        }


class _Tally:
    """Running per-check statistics."""

    def __init__(self, tol: float):
        self.tol = tol
        self.checks: dict[str, dict] = {}

    def margin(self, name: str, values) -> None:
        v = np.asarray(values, dtype=float).ravel()
        c = self.checks.setdefault(name, {"kind": "margin", "violations": 0, "worst": np.inf})
        c["violations"] += int(np.sum(v < -self.tol))
        c["worst"] = float(min(c["worst"], v.min()))

    def deviation(self, name: str, values) -> None:
        v = np.abs(np.asarray(values, dtype=float)).ravel()
        c = self.checks.setdefault(name, {"kind": "deviation", "violations": 0, "worst": 0.0})
        c["violations"] += int(np.sum(v > self.tol))
        c["worst"] = float(max(c["worst"], v.max()))

    def finish(self, result: SuiteResult) -> SuiteResult:
        result.checks = self.checks
        result.violations = sum(c["violations"] for c in self.checks.values())
        margins = [c["worst"] for c in self.checks.values() if c["kind"] == "margin"]
        devs = [c["worst"] for c in self.checks.values() if c["kind"] == "deviation"]
        result.worst_residual = min(margins) if margins else max(devs, default=0.0)
        return result


def _chunks(samples: int, seed: int):
    n_chunks = -(-samples // CHUNK)
    for i, child in enumerate(derive_seeds(seed, n_chunks)):
        yield make_rng(child), min(CHUNK, samples - i * CHUNK)


def _schmidt_batch(rng, count):
    lam, psi = sample_schmidt_arrays(rng, count)
    amps = schmidt_amplitudes(lam, psi)
    rho = amps[:, :, None] * amps[:, None, :].conj()
    mu, delta = schmidt_mu_delta(lam, psi)
    return rho, mu, delta


def _closed_forms(tally: _Tally, rng, count: int) -> None:
    rho, mu, delta = _schmidt_batch(rng, count)
    conc = concurrence_from_density(rho, QUBITS)
    tally.deviation("concurrence", np.sqrt(np.clip(concurrence_squared_closed_form(mu, delta), 0, None)) - conc)
    closed = class1_norms_closed_form(mu, delta)
    norms = catalog_norms_array(rho, QUBITS, ("Y1", "Y2", "Y3"))
    for k, name in enumerate(("Y1", "Y2", "Y3")):
        tally.deviation(f"norm_{name}", closed[:, k] - norms[name])
    for label, formula in zip("ABC", purity_closed_forms(mu, delta)):
        tally.deviation(f"purity_{label}", formula - purity(reduce_array(rho, QUBITS, label)))


def _t1_pure(tally: _Tally, rng, count: int) -> None:
    rho, mu, delta = _schmidt_batch(rng, count)
    conc = concurrence_from_density(rho, QUBITS)
    norms = catalog_norms_array(rho, QUBITS, T1_OPS)
    tally.margin("soundness_T1", conc - lower_bound_array(norms, T1_OPS))
    tally.margin("soundness_T2", conc - theorem2_bound_array(rho, QUBITS))
    poly = proof_residuals_closed_form(mu, delta)
    for k, name in enumerate(("Y1", "Y2", "Y3")):
        numeric = conc**2 - (norms[name] - 1.0) ** 2
        tally.deviation(f"residual_identity_{name}", numeric - poly[:, k])
        tally.margin(f"residual_nonneg_{name}", numeric)
        tally.margin(f"residual_poly_nonneg_{name}", poly[:, k])


def _corollary_numeric(tally: _Tally, rng, count: int) -> None:
    rho, _, _ = _schmidt_batch(rng, count)
    conc = concurrence_from_density(rho, QUBITS)
    norms = catalog_norms_array(rho, QUBITS, ("Y7", "Y8", "Y9"))
    best = np.max([norms[k] for k in ("Y7", "Y8", "Y9")], axis=0)
    tally.margin("corollary_Y7_Y9", conc - (best - 1.0))


def _cuts_for(dims: SystemDims):
    def run(tally: _Tally, rng, count: int) -> None:
        amps = sample_pure_amplitudes(rng, dims, count)
        rho = amps[:, :, None] * amps[:, None, :].conj()
        tag = "x".join(map(str, dims))
        for cut, (residual, _, _) in cut_residuals_array(rho, dims).items():
            tally.margin(f"cut_{cut}_{tag}", residual)
        conc = concurrence_from_density(rho, dims)
        tally.margin(f"soundness_T2_{tag}", conc - theorem2_bound_array(rho, dims))

    return run


def _separable(tally: _Tally, rng, count: int) -> None:
    rho = sample_product_mixtures(rng, QUBITS, count)
    norms = catalog_norms_array(rho, QUBITS, CATALOG_NAMES)
    for name in CATALOG_NAMES:
        tally.margin(f"ceiling_{name}", 1.0 - norms[name])


def _run(name: str, parts: list[tuple[Callable, int]], samples: int, seed: int, tolerance: float) -> SuiteResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be > 0")
    start = time.perf_counter()
    tally = _Tally(tolerance)
    part_seeds = derive_seeds(seed, len(parts))
    for (fn, count), part_seed in zip(parts, part_seeds):
        for rng, n in _chunks(count, part_seed):
            fn(tally, rng, n)
    result = tally.finish(SuiteResult(name, samples, seed, tolerance))
    result.wall_time = time.perf_counter() - start
    return result


SUITES = ("closed-forms", "t1-pure", "corollary-numeric", "cuts", "separable")


def run_suite(name: str, samples: int = 100_000, seed: int = 42, tolerance: float = 1e-9) -> SuiteResult:
    """Run a named suite.

    ``cuts`` draws ``samples`` Haar states in 2x2x2 and ``samples // 10``
    (at least one) in 2x3x2.
    """
    if name == "closed-forms":
        parts = [(_closed_forms, samples)]
    elif name == "t1-pure":
        parts = [(_t1_pure, samples)]
    elif name == "corollary-numeric":
        parts = [(_corollary_numeric, samples)]
    elif name == "cuts":
        parts = [(_cuts_for(QUBITS), samples), (_cuts_for(SystemDims(2, 3, 2)), max(1, samples // 10))]
    elif name == "separable":
        parts = [(_separable, samples)]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _run(name, parts, samples, seed, tolerance)
