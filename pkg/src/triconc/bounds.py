"""Concurrence lower bounds from GPT trace norms.

Three bounds are provided:

* ``bound_theorem1``: three qubits, ``C >= max{N_i - 1, (N_j - 1)/sqrt(2)}``
  with ``i`` over the partial transposes Y1..Y3 and ``j`` over the cut
  realignments Y4..Y6.
* ``bound_theorem2``: ``m x n x p`` with ``m <= n, p``. Each bipartite cut
  contributes ``sqrt(1/(k(k-1))) * (N - 1)`` with ``k = m, min(n, mp),
  min(p, mn)`` for the A, B and C cuts. The A cut uses Y1 or Y4, the B cut
  Y2 or Y6 and the C cut Y3 or Y5. Both operations of each pair are
  evaluated and the larger term wins.
* ``bound_corollary``: three qubits whose decomposition consists only of
  ``l0|000> + l4|111>`` states, ``C >= max_j N_j - 1`` over Y1..Y9. The
  decomposition hypothesis is asserted by the caller, never checked.

Norms are ``N = ||rho^{T_Y}||`` (trace norm). The lower bound is floored at
zero; raw negative terms stay visible in the report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .gpt import CATALOG, apply_gpt_array
from .tensor_core import (
    QUBITS,
    PureState,
    SystemDims,
    TripartiteState,
    purity,
    reduce_array,
    trace_norm,
)

T1_OPS = {"Y1": 1.0, "Y2": 1.0, "Y3": 1.0, "Y4": 1 / math.sqrt(2), "Y5": 1 / math.sqrt(2), "Y6": 1 / math.sqrt(2)}
CUT_OPS = {"A": ("Y1", "Y4"), "B": ("Y2", "Y6"), "C": ("Y3", "Y5")}


@dataclass
class BoundReport:
    theorem: str
    dims: tuple
    norms: dict
    coefficients: dict
    bound_terms: dict
    lower_bound: float
    conditional: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        return out


def _make_report(theorem, dims, norms, coefficients, conditional=False, notes=None) -> BoundReport:
    terms = {k: coefficients[k] * (norms[k] - 1.0) for k in coefficients}
    lower = max([0.0] + list(terms.values()))
    return BoundReport(theorem, tuple(dims), dict(norms), dict(coefficients), terms, lower, conditional, notes or [])


def _catalog_norms(s: TripartiteState, names) -> dict:
    return {k: trace_norm(apply_gpt_array(s.rho, s.dims, CATALOG[k])) for k in names}


def _require_qubits(s: TripartiteState, what: str) -> None:
    if s.dims != QUBITS:
        raise ValueError(
            f"{what} applies to three qubits only (dims {tuple(s.dims)}); use bound_theorem2 for other dimensions"
        )


def bound_theorem1(s: TripartiteState) -> BoundReport:
    _require_qubits(s, "Theorem-1 bound")
    return _make_report("T1", s.dims, _catalog_norms(s, T1_OPS), T1_OPS)


def cut_dimensions(dims: Sequence[int]) -> dict:
    """Effective bipartite dimension ``min(d_k, d / d_k)`` of each single-party cut."""
    m, n, p = SystemDims.coerce(dims)
    return {"A": min(m, n * p), "B": min(n, m * p), "C": min(p, m * n)}


def _cut_coefficient(k: int) -> float | None:
    return math.sqrt(1.0 / (k * (k - 1))) if k >= 2 else None


def theorem2_coefficients(dims: Sequence[int]) -> tuple[dict, list]:
    """Per-operation coefficients and notes for omitted (dimension-1) cuts."""
    m, n, p = dims = SystemDims.coerce(dims)
    if m > n or m > p:
        raise ValueError(
            f"Theorem-2 bound needs m <= n and m <= p, got dims {(m, n, p)}; "
            f"reorder subsystems first, e.g. reorder_subsystems(state, {_smallest_first(dims)!r})"
        )
    coefficients, notes = {}, []
    for cut, k in cut_dimensions(dims).items():
        coeff = _cut_coefficient(k)
        if coeff is None:
            notes.append(f"{cut} cut has effective dimension 1; its terms are omitted")
            continue
        for name in CUT_OPS[cut]:
            coefficients[name] = coeff
    return coefficients, notes


def _smallest_first(dims: SystemDims) -> str:
    first = min(range(3), key=lambda i: dims[i])
    rest = [i for i in range(3) if i != first]
    return "".join("ABC"[i] for i in [first] + rest)


def bound_theorem2(s: TripartiteState) -> BoundReport:
    coefficients, notes = theorem2_coefficients(s.dims)
    return _make_report("T2", s.dims, _catalog_norms(s, coefficients), coefficients, notes=notes)


def bound_corollary(s: TripartiteState) -> BoundReport:
    _require_qubits(s, "Corollary bound")
    coefficients = {k: 1.0 for k in CATALOG}
    return _make_report(
        "Corollary",
        s.dims,
        _catalog_norms(s, coefficients),
        coefficients,
        conditional=True,
        notes=["valid only if rho decomposes into states of the form l0|000> + l4|111>"],
    )


def reorder_subsystems(s: TripartiteState, order: str | Sequence[int]) -> TripartiteState:
    """Permute subsystems; ``order="BAC"`` makes the old B the new A, and so on."""
    if isinstance(order, str):
        perm = ["ABC".index(ch) for ch in order.upper()]
    else:
        perm = [int(i) for i in order]
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"order must be a permutation of ABC, got {order!r}")
    dims = tuple(s.dims)
    t = s.rho.reshape(dims + dims).transpose(perm + [3 + i for i in perm])
    new_dims = SystemDims(*(dims[i] for i in perm))
    return TripartiteState(new_dims, t.reshape(s.rho.shape))


# --- proof obligations on pure states ---------------------------------------


@dataclass(frozen=True)
class CutCheck:
    cut: str
    effective_dim: int
    coefficient: float
    purity_deficit: float
    norms: dict
    residual: float
    holds: bool


def cut_residuals_array(rho, dims: Sequence[int]) -> dict:
    """``1 - Tr rho_k^2 - coeff_k * (N - 1)^2`` per cut, worst of the cut's two operations.

    ``rho`` is a stack of pure-state density matrices. Returns
    ``{cut: (residual, deficit, {op: norms})}``.
    """
    dims = SystemDims.coerce(dims)
    out = {}
    for cut, k in cut_dimensions(dims).items():
        coeff = 1.0 / (k * (k - 1)) if k >= 2 else 0.0
        deficit = 1.0 - purity(reduce_array(rho, dims, cut))
        norms = {name: trace_norm(apply_gpt_array(rho, dims, CATALOG[name])) for name in CUT_OPS[cut]}
        worst = np.max([(np.asarray(v) - 1.0) ** 2 for v in norms.values()], axis=0)
        out[cut] = (deficit - coeff * worst, deficit, norms)
    return out


def proof_cut_inequalities(v: PureState, tol: float = 1e-9) -> list[CutCheck]:
    eff = cut_dimensions(v.dims)
    checks = []
    for cut, (residual, deficit, norms) in cut_residuals_array(v.density(), v.dims).items():
        k = eff[cut]
        checks.append(
            CutCheck(
                cut,
                k,
                1.0 / (k * (k - 1)) if k >= 2 else 0.0,
                float(deficit),
                {n: float(x) for n, x in norms.items()},
                float(residual),
                bool(residual >= -tol),
            )
        )
    return checks


# --- vectorised bounds for Monte-Carlo campaigns ----------------------------


def catalog_norms_array(rho, dims, names=tuple(CATALOG)) -> dict:
    return {k: trace_norm(apply_gpt_array(rho, dims, CATALOG[k])) for k in names}


def lower_bound_array(norms: dict, coefficients: dict) -> np.ndarray:
    terms = [coefficients[k] * (np.asarray(norms[k]) - 1.0) for k in coefficients]
    return np.maximum(0.0, np.max(terms, axis=0))


def theorem1_bound_array(rho) -> np.ndarray:
    return lower_bound_array(catalog_norms_array(rho, QUBITS, T1_OPS), T1_OPS)


def theorem2_bound_array(rho, dims) -> np.ndarray:
    coefficients, _ = theorem2_coefficients(dims)
    if not coefficients:
        return np.zeros(np.shape(rho)[:-2])
    return lower_bound_array(catalog_norms_array(rho, dims, coefficients), coefficients)

