import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qchan.errors import NotSelfAdjoint, NotTracePreserving, InputError
from qchan.pauli import (I2, SX, SY, SZ, KrausSet, PauliVec, TMatrix, adjoint_channel, apply_channel,
                         channel_from_kraus, compose, mat2_to_pauli, pauli_to_mat2, unitary_channel)
from qchan.sampling import random_kraus, random_unitary

finite = st.floats(-1, 1, allow_nan=False)


@given(st.lists(finite, min_size=4, max_size=4))
def test_pauli_round_trip(c):
    m = c[0] * I2 + c[1] * SX + c[2] * SY + c[3] * SZ
    p = mat2_to_pauli(m)
    assert np.allclose(p.as_array(), c)
    assert np.allclose(pauli_to_mat2(p), m)


def test_not_self_adjoint():
    with pytest.raises(NotSelfAdjoint):
        mat2_to_pauli(np.array([[0, 1], [0, 0]]))


def test_density_of_bloch():
    rho = pauli_to_mat2(PauliVec.density([0, 0, 1]))
    assert np.allclose(rho, [[1, 0], [0, 0]])


def test_tmatrix_trace_preservation_flag():
    m = np.eye(4)
    m[0, 1] = 0.1
    assert not TMatrix(m).is_trace_preserving()
    assert TMatrix.identity().is_trace_preserving()
    with pytest.raises(InputError):
        TMatrix(np.full((4, 4), np.nan))


def test_kraus_set_validation():
    with pytest.raises(NotTracePreserving):
        KrausSet((2 * I2,))
    with pytest.raises(InputError):
        KrausSet(tuple([0.5 * I2] * 5))


def test_channel_from_kraus_matches_oracle(rng):
    for _ in range(20):
        ops = random_kraus(rng)
        ch = channel_from_kraus(ops)
        assert np.abs(ch.matrix - oracles.tmatrix_of(oracles.kraus_map(ops))).max() < 1e-12


def test_apply_channel_matches_kraus(rng):
    ops = random_kraus(rng, 3)
    ch = channel_from_kraus(ops)
    w = rng.normal(size=3)
    w /= 2 * np.linalg.norm(w)
    rho = PauliVec.density(w)
    direct = oracles.kraus_map(ops)(pauli_to_mat2(rho))
    assert np.allclose(pauli_to_mat2(apply_channel(ch, rho)), direct)


def test_adjoint_is_transpose_and_kraus_dagger(rng):
    ops = random_kraus(rng, 2)
    ch = channel_from_kraus(ops)
    # the adjoint of rho -> sum A^dagger rho A is rho -> sum A rho A^dagger
    adj = oracles.tmatrix_of(lambda m: sum(a @ m @ a.conj().T for a in ops))
    assert np.allclose(adjoint_channel(ch).matrix, adj)


def test_compose_order(rng):
    u, v = random_unitary(rng), random_unitary(rng)
    both = compose(unitary_channel(u), unitary_channel(v))
    # compose(f, g) applies g first
    assert np.allclose(both.matrix, unitary_channel(u @ v).matrix)


def test_unitary_channel_is_conjugation(rng):
    u = random_unitary(rng)
    expect = oracles.tmatrix_of(lambda m: u @ m @ u.conj().T)
    assert np.allclose(unitary_channel(u).matrix, expect)
