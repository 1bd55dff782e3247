"""
Second-order stimulated Raman amplitudes for a chain of three-level atoms.

Levels are indexed ``i = 0`` (initial), ``l = 1`` (intermediate) and
``f = 2`` (final). Units have hbar = 1. Only the resonant time ordering is
kept: the laser photon at ``omega_plus`` is absorbed on ``i -> l`` and a
photon at ``omega_minus`` is emitted on ``l -> f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .collective import FINAL, INITIAL, INTERMEDIATE
from .errors import InvalidInputError, SingularDenominatorError
from .hilbert import (LocalOperatorSum, StateVector, basis_vector, inner_product, norm,
                      normalize, occupation_table, transition_matrix)

# Relative size below which an energy denominator counts as zero.
_DENOMINATOR_RTOL = 1e-12


@dataclass(frozen=True)
class RamanConfig:
    """Level energies, laser frequency, field amplitudes and dipole matrix elements.

    The scattered frequency is fixed by energy conservation,
    ``omega_minus = omega_plus - (energy_f - energy_i)``.
    """

    energy_i: float = 0.0
    energy_l: float = 10.0
    energy_f: float = 0.5
    omega_plus: float = 9.0
    field_plus: float = 1.0
    field_minus: float = 1.0
    dipole_il: complex = 1.0
    dipole_fl: complex = 1.0

    def __post_init__(self):
        for name in ("energy_i", "energy_l", "energy_f", "omega_plus",
                     "field_plus", "field_minus"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidInputError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        for name in ("dipole_il", "dipole_fl"):
            value = complex(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidInputError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.field_plus <= 0 or self.field_minus <= 0:
            raise InvalidInputError("field amplitudes must be positive")
        if self.omega_minus <= 0:
            raise InvalidInputError(
                f"scattered frequency omega_minus={self.omega_minus} must be positive"
            )

    @classmethod
    def with_detuning(cls, detuning: float = 1.0, *, field_plus: float = 1.0,
                      field_minus: float = 1.0, dipole_il: complex = 1.0,
                      dipole_fl: complex = 1.0, energy_l: float = 10.0,
                      energy_f: float = 0.5) -> RamanConfig:
        """Config with ``energy_i = 0`` and the laser placed ``detuning`` below ``i -> l``."""
        return cls(energy_i=0.0, energy_l=energy_l, energy_f=energy_f,
                   omega_plus=energy_l - detuning, field_plus=field_plus,
                   field_minus=field_minus, dipole_il=dipole_il, dipole_fl=dipole_fl)

    @property
    def detuning(self) -> float:
        return self.energy_l - self.energy_i - self.omega_plus

    @property
    def omega_minus(self) -> float:
        return self.omega_plus - (self.energy_f - self.energy_i)

    @property
    def level_energies(self) -> np.ndarray:
        return np.array([self.energy_i, self.energy_l, self.energy_f])

    @property
    def coupling(self) -> complex:
        """Product ``E+ E- d_il d_fl`` to which every amplitude is proportional."""
        return self.field_plus * self.field_minus * self.dipole_il * self.dipole_fl


@dataclass(frozen=True, eq=False)
class Geometry:
    """Atom positions and the wavevectors of the laser and scattered fields."""

    positions: np.ndarray
    k_laser: np.ndarray
    k_scattered: np.ndarray

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise InvalidInputError(f"positions must have shape (N, 3), got {pos.shape}")
        k_l = np.array(self.k_laser, dtype=float).reshape(-1)
        k_s = np.array(self.k_scattered, dtype=float).reshape(-1)
        if k_l.shape != (3,) or k_s.shape != (3,):
            raise InvalidInputError("wavevectors must be 3-vectors")
        for arr in (pos, k_l, k_s):
            if not np.all(np.isfinite(arr)):
                raise InvalidInputError("geometry entries must be finite")
            arr.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "k_laser", k_l)
        object.__setattr__(self, "k_scattered", k_s)

    @property
    def num_atoms(self) -> int:
        return self.positions.shape[0]

    @classmethod
    def colocated(cls, num_atoms: int, k_laser=(0.0, 0.0, 1.0),
                  k_scattered=(0.0, 0.0, 1.0)) -> Geometry:
        """All atoms at the origin, so every scattering phase is the same."""
        return cls(np.zeros((num_atoms, 3)), k_laser, k_scattered)

    @classmethod
    def chain(cls, num_atoms: int, spacing: float = 1.0, k_laser=(0.0, 0.0, 1.0),
              k_scattered=(0.0, 0.0, 1.0)) -> Geometry:
        """Atoms evenly spaced along x, starting at the origin."""
        pos = np.zeros((num_atoms, 3))
        pos[:, 0] = spacing * np.arange(num_atoms)
        return cls(pos, k_laser, k_scattered)

    def translated(self, shift) -> Geometry:
        return Geometry(self.positions + np.asarray(shift, dtype=float),
                        self.k_laser, self.k_scattered)

    @classmethod
    def from_dict(cls, data: dict) -> Geometry:
        try:
            return cls(data["positions"], data["k_laser"], data["k_scattered"])
        except KeyError as exc:
            raise InvalidInputError(f"geometry is missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed geometry: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "positions": self.positions.tolist(),
            "k_laser": self.k_laser.tolist(),
            "k_scattered": self.k_scattered.tolist(),
        }


def phase_factors(g: Geometry) -> np.ndarray:
    """``exp(i (k_l - k_s) . R_a)`` for every atom."""
    phi = g.positions @ (g.k_laser - g.k_scattered)
    return np.exp(1j * phi)


def absorption_operator(cfg: RamanConfig, g: Geometry) -> LocalOperatorSum:
    """``V+ = E+ d_il sum_a exp(i k_l . R_a) |l>_a <i|``."""
    phases = np.exp(1j * (g.positions @ g.k_laser))
    raise_il = transition_matrix(INTERMEDIATE, INITIAL, 3)
    scale = cfg.field_plus * cfg.dipole_il
    return LocalOperatorSum(g.num_atoms, 3,
                            [(a, scale * phases[a] * raise_il) for a in range(g.num_atoms)])


def emission_operator(cfg: RamanConfig, g: Geometry) -> LocalOperatorSum:
    """``V- = E- d_fl sum_a exp(-i k_s . R_a) |f>_a <l|``."""
    phases = np.exp(-1j * (g.positions @ g.k_scattered))
    lower_fl = transition_matrix(FINAL, INTERMEDIATE, 3)
    scale = cfg.field_minus * cfg.dipole_fl
    return LocalOperatorSum(g.num_atoms, 3,
                            [(a, scale * phases[a] * lower_fl) for a in range(g.num_atoms)])


def free_energies(cfg: RamanConfig, num_atoms: int) -> np.ndarray:
    """Energy of every product basis state of the noninteracting chain."""
    return occupation_table(num_atoms, 3) @ cfg.level_energies


def _check_state(v: StateVector, g: Geometry) -> None:
    if v.num_levels != 3:
        raise InvalidInputError("Raman states must be three-level")
    if v.num_atoms != g.num_atoms:
        raise InvalidInputError(f"state has {v.num_atoms} atoms, geometry has {g.num_atoms}")


def _eigen_energy(v: StateVector, energies: np.ndarray) -> float:
    support = np.abs(v.amplitudes) > 0
    if not np.any(support):
        raise InvalidInputError("initial state is the zero vector")
    levels = energies[support]
    scale = max(1.0, float(np.max(np.abs(levels))))
    if np.ptp(levels) > 1e-12 * scale:
        raise InvalidInputError("initial state is not an eigenstate of the free Hamiltonian")
    return float(levels[0])


def resolvent_apply(v: StateVector, energy: float, cfg: RamanConfig) -> StateVector:
    """``G v = sum_m |m><m|v> / (energy - E_m + omega_plus)`` over product eigenstates m.

    Only components present in ``v`` are divided; a vanishing denominator on
    any of them is an error.
    """
    if cfg.detuning == 0.0:
        raise SingularDenominatorError("zero detuning: the intermediate level is resonant")
    energies = free_energies(cfg, v.num_atoms)
    denom = energy - energies + cfg.omega_plus
    support = np.abs(v.amplitudes) > 0
    scale = max(1.0, abs(energy), abs(cfg.omega_plus), float(np.max(np.abs(energies))))
    if np.any(np.abs(denom[support]) <= _DENOMINATOR_RTOL * scale):
        raise SingularDenominatorError("energy denominator vanishes on a reachable state")
    out = np.zeros(v.dim, dtype=complex)
    out[support] = v.amplitudes[support] / denom[support]
    return v.with_amplitudes(out)


def raman_image(initial: StateVector, cfg: RamanConfig, g: Geometry) -> StateVector:
    """Unnormalized ``V- G V+ |initial>``."""
    _check_state(initial, g)
    e_init = _eigen_energy(initial, free_energies(cfg, initial.num_atoms))
    virtual = absorption_operator(cfg, g).apply(initial)
    return emission_operator(cfg, g).apply(resolvent_apply(virtual, e_init, cfg))


def raman_amplitude(initial: StateVector, final: StateVector, cfg: RamanConfig,
                    g: Geometry) -> complex:
    """Second-order amplitude ``<final| V- G V+ |initial>``."""
    _check_state(final, g)
    return inner_product(final, raman_image(initial, cfg, g))


def total_rate(initial: StateVector, cfg: RamanConfig, g: Geometry) -> float:
    """Squared amplitude summed over the degenerate final manifold, ``||V- G V+ |i>||**2``.

    Proportional to the transition probability; density-of-states and
    ``2 pi`` prefactors are common to every comparison and are left out.
    """
    return norm(raman_image(initial, cfg, g)) ** 2


def single_atom_rate(cfg: RamanConfig) -> float:
    """Rate of one atom starting in ``|i>``, the reference for every enhancement ratio."""
    return total_rate(basis_vector([INITIAL], 3), cfg, Geometry.colocated(1))


class ScatteredState(NamedTuple):
    state: StateVector
    weight: float  # squared norm before normalization


def scattered_state(initial: StateVector, cfg: RamanConfig, g: Geometry) -> ScatteredState:
    """Normalized image of ``initial`` after one Raman event, and its weight."""
    image = raman_image(initial, cfg, g)
    return ScatteredState(normalize(image), norm(image) ** 2)
