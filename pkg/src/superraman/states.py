"""Factorized, W, Dicke and general permutation-symmetric states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .hilbert import StateVector, inner_product, occupation_table

# Two-level convention used by the Dicke helpers.
GROUND, EXCITED = 0, 1


@dataclass(frozen=True)
class LevelLabels:
    """Which level index plays the role of initial, intermediate and final level."""

    initial: int = 0
    intermediate: int = 1
    final: int = 2

    def __post_init__(self):
        labels = (self.initial, self.intermediate, self.final)
        if len(set(labels)) != 3 or not all(0 <= x < 3 for x in labels):
            raise InvalidInputError(f"need three distinct levels in [0, 3), got {labels}")


RAMAN_LEVELS = LevelLabels()


def multinomial(counts: Sequence[int]) -> int:
    """Number of distinct arrangements of ``sum(counts)`` atoms with these occupations."""
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


def symmetric_state(counts: Sequence[int], num_levels: int | None = None,
                    num_atoms: int | None = None) -> StateVector:
    """Equal-weight superposition of every product state with the given occupations.

    ``counts[k]`` is the number of atoms in level ``k``. ``num_levels`` and
    ``num_atoms`` default to ``len(counts)`` and ``sum(counts)``; when given
    they are checked against ``counts``.
    """
    counts = tuple(int(c) for c in counts)
    d = len(counts) if num_levels is None else num_levels
    if len(counts) != d:
        raise InvalidInputError(f"need one count per level ({d}), got {len(counts)}")
    if any(c < 0 for c in counts):
        raise InvalidInputError(f"occupations must be nonnegative, got {counts}")
    n = sum(counts) if num_atoms is None else num_atoms
    if sum(counts) != n:
        raise InvalidInputError(f"occupations {counts} do not sum to N={n}")
    occ = occupation_table(n, d)
    mask = np.all(occ == np.asarray(counts), axis=1)
    amps = np.zeros(d**n, dtype=complex)
    amps[mask] = 1.0 / math.sqrt(multinomial(counts))
    return StateVector(n, d, amps)


def w_state(num_atoms: int, base_level: int, excited_level: int, n_excited: int = 1,
            num_levels: int = 3) -> StateVector:
    """``n_excited`` atoms in ``excited_level`` shared symmetrically, the rest in ``base_level``.

    ``n_excited`` of 0 or N gives a product state.
    """
    if base_level == excited_level:
        raise InvalidInputError("base and excited level must differ")
    if not 0 <= n_excited <= num_atoms:
        raise InvalidInputError(f"n_excited={n_excited} not in [0, {num_atoms}]")
    if not (0 <= base_level < num_levels and 0 <= excited_level < num_levels):
        raise InvalidInputError(
            f"levels ({base_level}, {excited_level}) invalid for {num_levels}-level atoms"
        )
    counts = [0] * num_levels
    counts[base_level] = num_atoms - n_excited
    counts[excited_level] = n_excited
    return symmetric_state(counts, num_levels, num_atoms)


def dicke_excitations(num_atoms: int, m) -> int:
    """Number of excited atoms ``N/2 + M`` in the Dicke state ``|N/2, M>``."""
    try:
        n_e = Fraction(num_atoms, 2) + Fraction(m)
    except (TypeError, ValueError):
        raise InvalidInputError(f"M={m!r} is not a number") from None
    if num_atoms < 1 or n_e.denominator != 1 or not 0 <= n_e <= num_atoms:
        raise InvalidInputError(f"M={m} is not a valid projection for N={num_atoms}")
    return int(n_e)


def dicke_two_level(num_atoms: int, m) -> StateVector:
    """The symmetric two-level Dicke state ``|N/2, M>`` (level 0 ground, level 1 excited).

    ``M`` may be given as an int, float or :class:`fractions.Fraction`; for odd
    ``N`` it is half-integral, e.g. ``dicke_two_level(3, -0.5)``.
    """
    n_e = dicke_excitations(num_atoms, m)
    return symmetric_state((num_atoms - n_e, n_e), 2, num_atoms)


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|**2`` for normalized states."""
    return abs(inner_product(a, b)) ** 2
