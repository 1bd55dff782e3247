"""Independent pure-Python oracles.

Nothing here imports the package's state or operator machinery: states are
dicts from level tuples to amplitudes and operators are explicit loops.
"""

import cmath
import itertools
import math


def symmetric_dict(counts):
    """Equal-weight superposition of the distinct arrangements of a multiset."""
    letters = [lev for lev, c in enumerate(counts) for _ in range(c)]
    configs = set(itertools.permutations(letters))
    amp = 1 / math.sqrt(len(configs))
    return {cfg: amp for cfg in configs}


def _dot(k, r):
    return sum(a * b for a, b in zip(k, r))


def raman_image_dict(state, energies, omega_plus, coupling_plus, coupling_minus,
                     positions, k_laser, k_scattered):
    """Explicit two-step path sum: absorb i->l, divide by the energy gap, emit l->f."""
    energy_of = lambda cfg: sum(energies[lev] for lev in cfg)
    middle = {}
    for cfg, amp in state.items():
        e_init = energy_of(cfg)
        for a, lev in enumerate(cfg):
            if lev != 0:
                continue
            new = cfg[:a] + (1,) + cfg[a + 1:]
            weight = coupling_plus * cmath.exp(1j * _dot(k_laser, positions[a]))
            weight /= e_init - energy_of(new) + omega_plus
            middle[new] = middle.get(new, 0) + amp * weight
    final = {}
    for cfg, amp in middle.items():
        for a, lev in enumerate(cfg):
            if lev != 1:
                continue
            new = cfg[:a] + (2,) + cfg[a + 1:]
            weight = coupling_minus * cmath.exp(-1j * _dot(k_scattered, positions[a]))
            final[new] = final.get(new, 0) + amp * weight
    return final


def squared_norm(state):
    return sum(abs(v) ** 2 for v in state.values())


def dicke_correlation_enumerated(n, k):
    """<s1+ s2-> - <s1+><s2-> on the k-excitation symmetric state, by enumeration.

    Level 0 is ground, 1 excited. s+ = |1><0|, s- = |0><1|.
    """
    psi = symmetric_dict([n - k, k])

    def apply(op_from, op_to, atom, state):
        out = {}
        for cfg, amp in state.items():
            if cfg[atom] == op_from:
                new = cfg[:atom] + (op_to,) + cfg[atom + 1:]
                out[new] = out.get(new, 0) + amp
        return out

    def braket(bra, ket):
        return sum(bra.get(c, 0).conjugate() * a for c, a in ket.items())

    joint = braket(psi, apply(0, 1, 0, apply(1, 0, 1, psi)))
    plus = braket(psi, apply(0, 1, 0, psi))
    minus = braket(psi, apply(1, 0, 1, psi))
    return (joint - plus * minus).real


def dicke_correlation_counting(n, k):
    """Closed form: fraction of arrangements with atom 0 ground and atom 1 excited."""
    return math.comb(n - 2, k - 1) / math.comb(n, k)
