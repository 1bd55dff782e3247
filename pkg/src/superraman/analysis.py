"""Enhancement factors: closed form, brute-force oracle, scans, and Dicke pair correlations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collective import CollectiveState, embed_collective
from .errors import InvalidInputError, NoTransitionError, ResourceLimitError
from .hilbert import apply_single_atom_operator, inner_product, transition_matrix
from .raman import Geometry, RamanConfig, single_atom_rate, total_rate
from .states import EXCITED, GROUND, dicke_two_level

SCAN_MAX_ATOMS = 8


@dataclass(frozen=True)
class EnhancementRecord:
    N: int
    n_i: int
    n_l: int
    n_f: int
    formula_value: float
    bruteforce_value: float

    @property
    def residual(self) -> float:
        return abs(self.formula_value - self.bruteforce_value)


def _occupations(n_i, n_l, n_f) -> CollectiveState:
    cs = CollectiveState(n_i, n_l, n_f)
    if cs.num_atoms < 1:
        raise InvalidInputError("need at least one atom")
    if cs.n_i == 0:
        raise NoTransitionError("no atom in the initial level: the Raman rate vanishes")
    return cs


def enhancement_formula(n_i: int, n_l: int, n_f: int) -> float:
    """Closed-form enhancement ``n_i (n_f + 1) (n_l + 1)**2 / N`` of the collective state."""
    cs = _occupations(n_i, n_l, n_f)
    return cs.n_i * (cs.n_f + 1) * (cs.n_l + 1) ** 2 / cs.num_atoms


def rate_ratio(n_i: int, n_l: int, n_f: int, cfg: RamanConfig | None = None,
               geometry: Geometry | None = None) -> float:
    """Rate of the symmetric state divided by the single-atom rate (not by N)."""
    cs = _occupations(n_i, n_l, n_f)
    cfg = RamanConfig() if cfg is None else cfg
    g = Geometry.colocated(cs.num_atoms) if geometry is None else geometry
    if g.num_atoms != cs.num_atoms:
        raise InvalidInputError(f"geometry has {g.num_atoms} atoms, state has {cs.num_atoms}")
    return total_rate(embed_collective(cs), cfg, g) / single_atom_rate(cfg)


def enhancement_bruteforce(n_i: int, n_l: int, n_f: int, cfg: RamanConfig | None = None,
                           geometry: Geometry | None = None) -> float:
    """Enhancement from full product-space rates, relative to N independent atoms.

    The default geometry puts every atom at the origin so all scattering
    phases coincide.
    """
    return rate_ratio(n_i, n_l, n_f, cfg, geometry) / (n_i + n_l + n_f)


def enhancement_record(n_i: int, n_l: int, n_f: int,
                       cfg: RamanConfig | None = None) -> EnhancementRecord:
    return EnhancementRecord(
        N=n_i + n_l + n_f, n_i=n_i, n_l=n_l, n_f=n_f,
        formula_value=enhancement_formula(n_i, n_l, n_f),
        bruteforce_value=enhancement_bruteforce(n_i, n_l, n_f, cfg),
    )


def _check_cap(n_max: int) -> None:
    if n_max < 1:
        raise InvalidInputError(f"N_max must be at least 1, got {n_max}")
    if n_max > SCAN_MAX_ATOMS:
        raise ResourceLimitError(f"N_max={n_max} exceeds the brute-force cap {SCAN_MAX_ATOMS}")


def scan_partitions(n_max: int, cfg: RamanConfig | None = None) -> list[EnhancementRecord]:
    """One record per occupation triple with ``n_i >= 1``, for N = 1..n_max.

    Rows are ordered by N, then lexicographically by ``(n_i, n_l, n_f)``.
    """
    _check_cap(n_max)
    records = []
    for n in range(1, n_max + 1):
        for n_i in range(1, n + 1):
            for n_l in range(n - n_i + 1):
                records.append(enhancement_record(n_i, n_l, n - n_i - n_l, cfg))
    return records


def scan_w(n_max: int, cfg: RamanConfig | None = None) -> list[EnhancementRecord]:
    """W-state records ``(N-1, 0, 1)`` for N = 2..n_max."""
    _check_cap(n_max)
    return [enhancement_record(n - 1, 0, 1, cfg) for n in range(2, n_max + 1)]


def dicke_pair_correlation(num_atoms: int, m=0) -> float:
    """``<s1+ s2-> - <s1+><s2->`` in the two-level Dicke state ``|N/2, M>``.

    Computed from explicit expectation values on the product space; every
    pair gives the same value by symmetry.
    """
    return pair_correlation(num_atoms, m, 0, 1)


def pair_correlation(num_atoms: int, m, atom_a: int, atom_b: int) -> float:
    """Connected ``<s_a+ s_b-> - <s_a+><s_b->`` for an arbitrary pair of distinct atoms."""
    if num_atoms < 2:
        raise InvalidInputError(f"pair correlation needs N >= 2, got {num_atoms}")
    if atom_a == atom_b:
        raise InvalidInputError("pair correlation needs two distinct atoms")
    psi = dicke_two_level(num_atoms, m)
    raise_op = transition_matrix(EXCITED, GROUND, 2)
    lower_op = transition_matrix(GROUND, EXCITED, 2)
    joint = inner_product(psi, apply_single_atom_operator(
        apply_single_atom_operator(psi, atom_b, lower_op), atom_a, raise_op))
    plus_a = inner_product(psi, apply_single_atom_operator(psi, atom_a, raise_op))
    minus_b = inner_product(psi, apply_single_atom_operator(psi, atom_b, lower_op))
    value = joint - plus_a * minus_b
    # Hermitian combination for a real symmetric state; imaginary part is rounding.
    return float(np.real(value))

