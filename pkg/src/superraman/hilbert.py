"""
Dense state vectors on the product space of N d-level atoms.

Basis states are ordered lexicographically with atom 0 as the most
significant digit, so the flat index of ``|l_0, l_1, ..., l_{N-1}>`` is
``sum(l_a * d**(N-1-a))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInputError, InvalidInputError, ResourceLimitError

SUPPORTED_LEVELS = (2, 3)

# 3**10 complex amplitudes is the largest dense vector we agree to build.
MAX_DIMENSION = 3**10


def _check_shape(num_atoms: int, num_levels: int) -> None:
    if num_levels not in SUPPORTED_LEVELS:
        raise InvalidInputError(f"num_levels must be 2 or 3, got {num_levels}")
    if num_atoms < 1:
        raise InvalidInputError(f"need at least one atom, got {num_atoms}")
    if num_levels**num_atoms > MAX_DIMENSION:
        raise ResourceLimitError(
            f"{num_levels}^{num_atoms} amplitudes exceeds the cap of {MAX_DIMENSION}"
        )


@dataclass(frozen=True)
class ProductBasisState:
    """One atom-by-atom configuration ``|levels[0], ..., levels[N-1]>``."""

    levels: tuple[int, ...]
    num_levels: int = 3

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(x) for x in self.levels))
        if self.num_levels not in SUPPORTED_LEVELS:
            raise InvalidInputError(f"num_levels must be 2 or 3, got {self.num_levels}")
        if len(self.levels) < 1:
            raise InvalidInputError("a basis state needs at least one atom")
        for lev in self.levels:
            if not 0 <= lev < self.num_levels:
                raise InvalidInputError(
                    f"level {lev} out of range for {self.num_levels}-level atoms"
                )

    @property
    def num_atoms(self) -> int:
        return len(self.levels)

    def counts(self) -> tuple[int, ...]:
        """Number of atoms in each level."""
        return tuple(self.levels.count(k) for k in range(self.num_levels))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the ``d**N`` product basis.

    The amplitude array is copied on construction and marked read-only, so
    instances can be shared freely.
    """

    num_atoms: int
    num_levels: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_shape(self.num_atoms, self.num_levels)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.num_levels**self.num_atoms:
            raise InvalidInputError(
                f"expected {self.num_levels ** self.num_atoms} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidInputError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def zeros(cls, num_atoms: int, num_levels: int = 3) -> StateVector:
        _check_shape(num_atoms, num_levels)
        return cls(num_atoms, num_levels, np.zeros(num_levels**num_atoms, dtype=complex))

    def with_amplitudes(self, amplitudes) -> StateVector:
        return StateVector(self.num_atoms, self.num_levels, amplitudes)

    def tensor(self) -> np.ndarray:
        """View the amplitudes as an array with one axis of length d per atom."""
        return self.amplitudes.reshape((self.num_levels,) * self.num_atoms)

    def _same_space(self, other: StateVector) -> None:
        if (self.num_atoms, self.num_levels) != (other.num_atoms, other.num_levels):
            raise InvalidInputError(
                f"dimension mismatch: {self.num_levels}^{self.num_atoms} "
                f"vs {other.num_levels}^{other.num_atoms}"
            )

    def __add__(self, other: StateVector) -> StateVector:
        self._same_space(other)
        return self.with_amplitudes(self.amplitudes + other.amplitudes)

    def __sub__(self, other: StateVector) -> StateVector:
        self._same_space(other)
        return self.with_amplitudes(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> StateVector:
        return self.with_amplitudes(complex(scalar) * self.amplitudes)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> StateVector:
        return self.with_amplitudes(self.amplitudes / complex(scalar))

    def __neg__(self) -> StateVector:
        return self.with_amplitudes(-self.amplitudes)


def basis_index(state: ProductBasisState) -> int:
    """Flat lexicographic index of a product basis state (atom 0 most significant)."""
    index = 0
    for lev in state.levels:
        index = index * state.num_levels + lev
    return index


def basis_from_index(index: int, num_atoms: int, num_levels: int = 3) -> ProductBasisState:
    """Inverse of :func:`basis_index`."""
    if num_atoms < 1:
        raise InvalidInputError(f"need at least one atom, got {num_atoms}")
    if not 0 <= index < num_levels**num_atoms:
        raise InvalidInputError(f"index {index} out of range for {num_levels}^{num_atoms}")
    levels = []
    for _ in range(num_atoms):
        index, lev = divmod(index, num_levels)
        levels.append(lev)
    return ProductBasisState(tuple(reversed(levels)), num_levels)


def basis_vector(levels: Sequence[int], num_levels: int = 3) -> StateVector:
    state = ProductBasisState(tuple(levels), num_levels)
    amps = np.zeros(num_levels**state.num_atoms, dtype=complex)
    amps[basis_index(state)] = 1.0
    return StateVector(state.num_atoms, num_levels, amps)


@lru_cache(maxsize=64)
def _level_table(num_atoms: int, num_levels: int) -> np.ndarray:
    idx = np.arange(num_levels**num_atoms)
    powers = num_levels ** np.arange(num_atoms - 1, -1, -1)
    table = (idx[:, None] // powers[None, :]) % num_levels
    table.flags.writeable = False
    return table


def level_table(num_atoms: int, num_levels: int = 3) -> np.ndarray:
    """Array of shape ``(d**N, N)``; row k holds the level of every atom in basis state k."""
    _check_shape(num_atoms, num_levels)
    return _level_table(num_atoms, num_levels)


@lru_cache(maxsize=64)
def _occupation_table(num_atoms: int, num_levels: int) -> np.ndarray:
    levels = _level_table(num_atoms, num_levels)
    table = np.stack([(levels == k).sum(axis=1) for k in range(num_levels)], axis=1)
    table.flags.writeable = False
    return table


def occupation_table(num_atoms: int, num_levels: int = 3) -> np.ndarray:
    """Array of shape ``(d**N, d)``; row k counts the atoms per level in basis state k."""
    _check_shape(num_atoms, num_levels)
    return _occupation_table(num_atoms, num_levels)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    a._same_space(b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def norm(v: StateVector) -> float:
    return float(np.linalg.norm(v.amplitudes))


def normalize(v: StateVector) -> StateVector:
    n = norm(v)
    if n == 0.0:
        raise DegenerateInputError("cannot normalize the zero vector")
    return v.with_amplitudes(v.amplitudes / n)


def apply_single_atom_operator(v: StateVector, atom: int, op) -> StateVector:
    """Apply the d x d matrix ``op`` to one atom, identity on the rest."""
    if not 0 <= atom < v.num_atoms:
        raise InvalidInputError(f"atom index {atom} out of range for {v.num_atoms} atoms")
    op = np.asarray(op, dtype=complex)
    d = v.num_levels
    if op.shape != (d, d):
        raise InvalidInputError(f"operator must be {d}x{d}, got shape {op.shape}")
    out = np.tensordot(op, v.tensor(), axes=([1], [atom]))
    out = np.moveaxis(out, 0, atom)
    return v.with_amplitudes(out.reshape(-1))


def permute_atoms(v: StateVector, perm: Sequence[int]) -> StateVector:
    """Relabel atoms so that atom ``perm[k]`` of ``v`` becomes atom ``k`` of the result."""
    if sorted(perm) != list(range(v.num_atoms)):
        raise InvalidInputError(f"{perm!r} is not a permutation of {v.num_atoms} atoms")
    return v.with_amplitudes(np.transpose(v.tensor(), perm).reshape(-1))


def transition_matrix(to_level: int, from_level: int, num_levels: int = 3) -> np.ndarray:
    """Single-atom ``|to><from|``."""
    for lev in (to_level, from_level):
        if not 0 <= lev < num_levels:
            raise InvalidInputError(f"level {lev} out of range for {num_levels}-level atoms")
    m = np.zeros((num_levels, num_levels), dtype=complex)
    m[to_level, from_level] = 1.0
    return m


class LocalOperatorSum:
    """Operator of the form ``sum_k op_k`` with each ``op_k`` acting on a single atom.

    Every collective and interaction operator of the package has this shape.
    :meth:`apply` never builds the ``d**N`` square matrix; :meth:`dense` does,
    for small systems.
    """

    def __init__(self, num_atoms: int, num_levels: int, terms: Iterable[tuple[int, np.ndarray]]):
        _check_shape(num_atoms, num_levels)
        self.num_atoms = num_atoms
        self.num_levels = num_levels
        checked = []
        for atom, op in terms:
            if not 0 <= atom < num_atoms:
                raise InvalidInputError(f"atom index {atom} out of range for {num_atoms} atoms")
            op = np.array(op, dtype=complex)
            if op.shape != (num_levels, num_levels):
                raise InvalidInputError(f"term on atom {atom} has shape {op.shape}")
            op.flags.writeable = False
            checked.append((int(atom), op))
        self.terms = tuple(checked)

    def __repr__(self):
        return (
            f"LocalOperatorSum(num_atoms={self.num_atoms}, "
            f"num_levels={self.num_levels}, terms={len(self.terms)})"
        )

    def apply(self, v: StateVector) -> StateVector:
        if (v.num_atoms, v.num_levels) != (self.num_atoms, self.num_levels):
            raise InvalidInputError("operator and state live on different spaces")
        total = np.zeros(v.dim, dtype=complex)
        for atom, op in self.terms:
            total += apply_single_atom_operator(v, atom, op).amplitudes
        return v.with_amplitudes(total)

    __call__ = apply

    def dense(self) -> np.ndarray:
        d, n = self.num_levels, self.num_atoms
        mat = np.zeros((d**n, d**n), dtype=complex)
        for atom, op in self.terms:
            left = np.eye(d**atom)
            right = np.eye(d ** (n - atom - 1))
            mat += np.kron(np.kron(left, op), right)
        return mat

    def adjoint(self) -> LocalOperatorSum:
        return LocalOperatorSum(
            self.num_atoms, self.num_levels, [(a, op.conj().T) for a, op in self.terms]
        )
