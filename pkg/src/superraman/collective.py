"""
Collective SU(3) operators ``S_ij = sum_a |i>_a <j|`` in two representations.

On the full product space they are :class:`~superraman.hilbert.LocalOperatorSum`
objects. On the permutation-symmetric sector they act on occupation labels
``|n_i, n_l, n_f>`` through the bosonic ladder rule
``S_ij |..n_j..n_i..> = sqrt(n_j (n_i + 1)) |..n_j - 1..n_i + 1..>``.
:func:`embed_collective` ties the two together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .hilbert import LocalOperatorSum, StateVector, transition_matrix
from .states import symmetric_state

INITIAL, INTERMEDIATE, FINAL = 0, 1, 2
LEVEL_NAMES = ("i", "l", "f")

COMMUTATOR_MAX_ATOMS = 4


@dataclass(frozen=True, order=True)
class CollectiveState:
    """Occupation triple ``|n_i, n_l, n_f>`` of a symmetric three-level state."""

    n_i: int
    n_l: int
    n_f: int

    def __post_init__(self):
        for name in ("n_i", "n_l", "n_f"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise InvalidInputError(f"{name} must be a nonnegative integer, got {value}")
            object.__setattr__(self, name, int(value))

    @property
    def num_atoms(self) -> int:
        return self.n_i + self.n_l + self.n_f

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.n_i, self.n_l, self.n_f)

    @classmethod
    def from_counts(cls, counts) -> CollectiveState:
        n_i, n_l, n_f = counts
        return cls(n_i, n_l, n_f)


def collective_states(num_atoms: int) -> Iterator[CollectiveState]:
    """All ``(N+1)(N+2)/2`` occupation triples for N atoms, in lexicographic order."""
    for n_i in range(num_atoms + 1):
        for n_l in range(num_atoms - n_i + 1):
            yield CollectiveState(n_i, n_l, num_atoms - n_i - n_l)


class CollectiveKet:
    """Finite linear combination of collective states with a common N.

    Terms are combined on construction and kept sorted; the empty ket is the
    zero vector.
    """

    def __init__(self, terms: Iterable[tuple[complex, CollectiveState]] = ()):
        merged: dict[CollectiveState, complex] = {}
        for coeff, state in terms:
            merged[state] = merged.get(state, 0j) + complex(coeff)
        if len({s.num_atoms for s in merged}) > 1:
            raise InvalidInputError("all states in a ket must share the same N")
        self._terms = tuple(sorted(((s, c) for s, c in merged.items() if c != 0),
                                   key=lambda t: t[0]))

    @classmethod
    def of(cls, state: CollectiveState, coeff: complex = 1.0) -> CollectiveKet:
        return cls([(coeff, state)])

    @property
    def terms(self) -> tuple[tuple[complex, CollectiveState], ...]:
        return tuple((c, s) for s, c in self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    def coefficient(self, state: CollectiveState) -> complex:
        for s, c in self._terms:
            if s == state:
                return c
        return 0j

    def __repr__(self):
        if not self._terms:
            return "CollectiveKet(0)"
        body = " + ".join(f"({c:.6g})|{s.n_i},{s.n_l},{s.n_f}>" for s, c in self._terms)
        return f"CollectiveKet({body})"


def _check_level(level: int) -> None:
    if level not in (INITIAL, INTERMEDIATE, FINAL):
        raise InvalidInputError(f"level index must be 0, 1 or 2, got {level}")


def ladder_apply(op: tuple[int, int], ket) -> CollectiveKet:
    """Apply ``S_{to, from}`` to a :class:`CollectiveKet` (or a bare :class:`CollectiveState`).

    Off-diagonal operators move one atom from ``from`` to ``to`` with weight
    ``sqrt(n_from * (n_to + 1))``; diagonal ones count ``n_to``.
    """
    to_level, from_level = op
    _check_level(to_level)
    _check_level(from_level)
    if isinstance(ket, CollectiveState):
        ket = CollectiveKet.of(ket)
    out = []
    for coeff, state in ket:
        counts = list(state.counts)
        if to_level == from_level:
            out.append((coeff * counts[to_level], state))
            continue
        n_from, n_to = counts[from_level], counts[to_level]
        if n_from == 0:
            continue
        counts[from_level] -= 1
        counts[to_level] += 1
        out.append((coeff * math.sqrt(n_from * (n_to + 1)), CollectiveState.from_counts(counts)))
    return CollectiveKet(out)


def collective_operator_full(to_level: int, from_level: int, num_atoms: int) -> LocalOperatorSum:
    """``S_{to, from} = sum_a |to>_a <from|`` on the ``3**N`` product space."""
    _check_level(to_level)
    _check_level(from_level)
    single = transition_matrix(to_level, from_level, 3)
    return LocalOperatorSum(num_atoms, 3, [(a, single) for a in range(num_atoms)])


def embed_collective(cs: CollectiveState) -> StateVector:
    """The normalized symmetric product-space state with occupations ``(n_i, n_l, n_f)``."""
    return symmetric_state(cs.counts, 3, cs.num_atoms)


def embed_ket(ket: CollectiveKet, num_atoms: int) -> StateVector:
    """Embed a linear combination; the empty ket maps to the zero vector on N atoms."""
    total = StateVector.zeros(num_atoms, 3)
    for coeff, state in ket:
        if state.num_atoms != num_atoms:
            raise InvalidInputError(f"ket has N={state.num_atoms}, expected {num_atoms}")
        total = total + coeff * embed_collective(state)
    return total


@lru_cache(maxsize=256)
def _dense_collective(to_level: int, from_level: int, num_atoms: int) -> np.ndarray:
    mat = collective_operator_full(to_level, from_level, num_atoms).dense()
    mat.flags.writeable = False
    return mat


def commutator_residual(i: int, l: int, f: int, j: int, num_atoms: int,
                        max_atoms: int = COMMUTATOR_MAX_ATOMS) -> float:
    """Largest entry of ``[S_il, S_fj] - (delta_lf S_ij - delta_ij S_fl)`` on the full space."""
    for level in (i, l, f, j):
        _check_level(level)
    if num_atoms > max_atoms:
        raise ResourceLimitError(f"N={num_atoms} exceeds commutator cap {max_atoms}")
    if num_atoms < 1:
        raise InvalidInputError(f"need at least one atom, got {num_atoms}")
    s_il = _dense_collective(i, l, num_atoms)
    s_fj = _dense_collective(f, j, num_atoms)
    lhs = s_il @ s_fj - s_fj @ s_il
    rhs = np.zeros_like(lhs)
    if l == f:
        rhs = rhs + _dense_collective(i, j, num_atoms)
    if i == j:
        rhs = rhs - _dense_collective(f, l, num_atoms)
    return float(np.max(np.abs(lhs - rhs)))


def bridge_residual(op: tuple[int, int], cs: CollectiveState) -> float:
    """Max entrywise gap between the full-space operator and the ladder rule on ``cs``."""
    to_level, from_level = op
    full = collective_operator_full(to_level, from_level, cs.num_atoms).apply(embed_collective(cs))
    ladder = embed_ket(ladder_apply(op, cs), cs.num_atoms)
    return float(np.max(np.abs(full.amplitudes - ladder.amplitudes)))
