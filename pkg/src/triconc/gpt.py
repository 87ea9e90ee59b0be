"""Generalized partial transpositions of tripartite density matrices.

A density matrix on A⊗B⊗C carries six indices: a row index and a column
index per subsystem. A row transposition ``r_k`` moves subsystem k's row
index over to the column group; a column transposition ``c_k`` moves its
column index over to the row group. A :class:`GptOperation` is the set of
index slots that get moved.

After the moves, each group lists its slots by subsystem (A, B, C) and,
within a subsystem, the row slot before the column slot. With that layout
``Y7 = {c_A, r_B}`` maps ``rho[(i,k,m),(j,l,n)]`` to entry
``[(i,j,m),(k,l,n)]`` of the image.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .tensor_core import SUBSYSTEMS, SystemDims, TripartiteState, trace_norm


class IndexSlot(NamedTuple):
    subsystem: str
    side: str  # "row" or "col"

    def __str__(self) -> str:
        return ("r" if self.side == "row" else "c") + self.subsystem


SLOT_ORDER: tuple[IndexSlot, ...] = tuple(
    IndexSlot(k, side) for k in SUBSYSTEMS for side in ("row", "col")
)
ROW_SLOTS = frozenset(s for s in SLOT_ORDER if s.side == "row")


@dataclass(frozen=True)
class GptOperation:
    moves: frozenset = field(default_factory=frozenset)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        moves = frozenset(self.moves)
        bad = [s for s in moves if s not in SLOT_ORDER]
        if bad:
            raise ValueError(f"not an index slot: {bad[0]!r}")
        object.__setattr__(self, "moves", moves)
        if not self.name:
            object.__setattr__(self, "name", self.label())

    def label(self) -> str:
        if not self.moves:
            return "identity"
        return ",".join(str(s) for s in SLOT_ORDER if s in self.moves)

    def __str__(self) -> str:
        return self.name

    @classmethod
    def from_generators(cls, *generators: str, name: str = "") -> "GptOperation":
        """Build from generator names such as ``"cA"``, ``"rBC"``, ``"cAB"``."""
        moves: set[IndexSlot] = set()
        for g in generators:
            moves.update(_parse_generator(g))
        return cls(frozenset(moves), name)


def _parse_generator(token: str) -> list[IndexSlot]:
    tok = token.strip().upper()
    m = re.fullmatch(r"([RC])_?\{?([ABC]+)\}?", tok)
    if m:
        side, subs = m.group(1), m.group(2)
    else:
        m = re.fullmatch(r"([ABC]+)_?([RC])", tok)
        if not m:
            raise ValueError(f"cannot parse GPT generator {token!r}")
        subs, side = m.group(1), m.group(2)
    return [IndexSlot(k, "row" if side == "R" else "col") for k in subs]


IDENTITY = GptOperation(frozenset(), "identity")

CATALOG: dict[str, GptOperation] = {
    # class I: partial transposes
    "Y1": GptOperation.from_generators("cA", "rA", name="Y1"),
    "Y2": GptOperation.from_generators("cB", "rB", name="Y2"),
    "Y3": GptOperation.from_generators("cC", "rC", name="Y3"),
    # class II: realignments across one bipartite cut
    "Y4": GptOperation.from_generators("cA", "rBC", name="Y4"),
    "Y5": GptOperation.from_generators("cAB", "rC", name="Y5"),
    "Y6": GptOperation.from_generators("cAC", "rB", name="Y6"),
    # class III: realignments of two subsystems
    "Y7": GptOperation.from_generators("cA", "rB", name="Y7"),
    "Y8": GptOperation.from_generators("cA", "rC", name="Y8"),
    "Y9": GptOperation.from_generators("cB", "rC", name="Y9"),
}
CATALOG_NAMES = tuple(CATALOG)


def parse_operation(text: str) -> GptOperation:
    """Parse ``"Y1"``..``"Y9"``, ``"identity"`` or a comma list like ``"cA,rBC"``."""
    key = text.strip()
    norm = key.upper().replace("_", "")
    if norm in CATALOG:
        return CATALOG[norm]
    if norm in ("IDENTITY", "ID", ""):
        return IDENTITY
    return GptOperation.from_generators(*[t for t in key.split(",") if t.strip()])


def all_operations() -> list[GptOperation]:
    """Every subset of the six index slots (64 operations)."""
    return [
        GptOperation(frozenset(c))
        for r in range(len(SLOT_ORDER) + 1)
        for c in itertools.combinations(SLOT_ORDER, r)
    ]


def _slot_dim(slot: IndexSlot, dims: SystemDims) -> int:
    return dims.of(slot.subsystem)


def regroup(mat, dims, row_side: Iterable[IndexSlot], moves: Iterable[IndexSlot]):
    """Flip ``moves`` on a matrix whose rows currently hold the slots ``row_side``.

    Returns the rearranged matrix and the new row-side slot set. ``mat`` may
    carry leading batch axes.
    """
    dims = SystemDims.coerce(dims)
    row_side = frozenset(row_side)
    mat = np.asarray(mat)
    rows = [s for s in SLOT_ORDER if s in row_side]
    cols = [s for s in SLOT_ORDER if s not in row_side]
    batch = mat.shape[:-2]
    expected = (
        int(np.prod([_slot_dim(s, dims) for s in rows])),
        int(np.prod([_slot_dim(s, dims) for s in cols])),
    )
    if mat.shape[-2:] != expected:
        raise ValueError(f"matrix shape {mat.shape[-2:]} does not match slot layout {expected}")
    t = mat.reshape(batch + tuple(_slot_dim(s, dims) for s in rows + cols))
    new_row_side = row_side ^ frozenset(moves)
    new_rows = [s for s in SLOT_ORDER if s in new_row_side]
    new_cols = [s for s in SLOT_ORDER if s not in new_row_side]
    position = {s: i for i, s in enumerate(rows + cols)}
    nb = len(batch)
    perm = list(range(nb)) + [nb + position[s] for s in new_rows + new_cols]
    shape = (
        int(np.prod([_slot_dim(s, dims) for s in new_rows])),
        int(np.prod([_slot_dim(s, dims) for s in new_cols])),
    )
    return t.transpose(perm).reshape(batch + shape), new_row_side


def apply_gpt_array(rho, dims, y: GptOperation) -> np.ndarray:
    return regroup(rho, dims, ROW_SLOTS, y.moves)[0]


def apply_gpt(s: TripartiteState, y: GptOperation) -> np.ndarray:
    return apply_gpt_array(s.rho, s.dims, y)


def gpt_norm(s: TripartiteState, y: GptOperation) -> float:
    return trace_norm(apply_gpt(s, y))


def gpt_norms(s: TripartiteState, ops: Iterable[GptOperation] | None = None) -> dict[str, float]:
    ops = CATALOG.values() if ops is None else ops
    return {y.name: gpt_norm(s, y) for y in ops}


@dataclass(frozen=True)
class GptVerdict:
    entangled: bool
    norms: dict
    violations: dict

    def __bool__(self) -> bool:
        return self.entangled


def is_gpt_entangled(s: TripartiteState, tol: float = 1e-9) -> GptVerdict:
    """Catalog GPT criterion: any norm above ``1 + tol`` witnesses entanglement."""
    norms = gpt_norms(s)
    violations = {k: v for k, v in norms.items() if v > 1.0 + tol}
    return GptVerdict(bool(violations), norms, violations)


def full_transpose_identity_check(s: TripartiteState, tol: float = 1e-12) -> bool:
    """Moving all six slots must give back the plain transpose of rho."""
    img = apply_gpt(s, GptOperation(frozenset(SLOT_ORDER)))
    return img.shape == s.rho.shape and bool(np.max(np.abs(img - s.rho.T)) <= tol)
