"""Shared builders for the test suite.

Expected values in the tests are frozen from independent oracles: direct
formula evaluation, hand-expanded projector sums, or brute-force numerics
that do not reuse the code path under test.
"""

import numpy as np

from qreality import DimsSpec, pure_to_density, validate_pure_state, validate_state

LN2 = float(np.log(2.0))


def qubit(*rows):
    return validate_state(np.array(rows, dtype=complex), DimsSpec((2,)))


def ket(amplitudes, dims):
    v = np.asarray(amplitudes, dtype=complex)
    return validate_pure_state(v / np.linalg.norm(v), DimsSpec(tuple(dims)))


def projector_state(amplitudes, dims):
    return pure_to_density(ket(amplitudes, dims))


def plus_state():
    return projector_state([1, 1], (2,))


def maximally_mixed(d, dims=None):
    return validate_state(np.eye(d, dtype=complex) / d, DimsSpec(dims or (d,)))


def bell_state():
    return projector_state([1, 0, 0, 1], (2, 2))
